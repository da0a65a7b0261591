// Acceptance suite: every criterion prints one PASS/FAIL line and the binary
// exits nonzero if any fails. Tolerances are pinned here, not configurable.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <random>
#include <vector>

#include "hullforge/archive.hpp"
#include "hullforge/export.hpp"
#include "hullforge/families.hpp"
#include "hullforge/props.hpp"
#include "hullforge/verify.hpp"

using namespace hullforge;

namespace {

int g_failures = 0;
constexpr double kPi = 3.14159265358979323846;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void report(int idx, const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", idx, name,
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::mt19937_64 rng(20260809ULL);

ComplexPoint2 random_ball_point(double radius) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ComplexPoint2 z{{gauss(rng), gauss(rng)}, {gauss(rng), gauss(rng)}};
  double n = z.norm();
  if (n == 0.0) return z;
  return z * (radius * std::pow(u(rng), 0.25) / n);
}

// ---------------------------------------------------------------------------

void criterion1() {
  Timer timer;
  bool ok = true;
  std::string detail;
  try {
    AffineFunction f{0.0, 1.0, 0.0}, g{0.0, 0.0, 1.0};
    SeparationConstants c = separation_constants(f, g, 0.9, 1e-3);
    ok = ok && c.r_prime == 0.9;
    ok = ok && c.a >= 0.5;
    Certificate eq1 = check_inclusion_eq1(f, g, c, 1e-3, 100000);
    ok = ok && eq1.passed && eq1.sample_count >= 100000;
    double secs = timer.seconds();
    ok = ok && secs < 10.0;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "a=%.4f (floor 0.6364), samples=%lld, %.2fs", c.a,
                  (long long)eq1.sample_count, secs);
    detail = buf;
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(1, "main lemma instance f=z1, g=z2", ok, detail);
}

void criterion2() {
  bool ok = true;
  std::string detail;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  try {
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      double s = 0.05 + 0.9 * u(rng);
      double t = 1e-3 + 0.3 * u(rng);
      std::int64_t n = 8 + (std::int64_t)(u(rng) * 512);
      DerivedConstants d = derive_constants(s, t, 0.0);
      for (std::int64_t j : {std::int64_t(0), n / 3, n - 1}) {
        ComplexPoint2 p = tangent_point(s, t, n, j);
        ComplexPoint2 v = tangent_direction(s, t, n, j);
        worst = std::max(worst, std::abs(hdot(v, p)));
        worst = std::max(worst, std::abs(v.norm() - d.R));
        worst = std::max(worst, std::abs(p.norm() - d.R));
      }
      worst = std::max(
          worst, std::abs(d.R * d.R - (1.0 - (2 * t - t * t) * (2 * s - s * s))));
      worst = std::max(worst, std::abs(d.s1 - (1.0 - d.R)));
    }
    ok = worst < 1e-12;
    char buf[80];
    std::snprintf(buf, sizeof(buf), "worst residual %.3e", worst);
    detail = buf;
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(2, "tangency and Eq.(16)/(10) identities", ok, detail);
}

void criterion3() {
  bool ok = true;
  std::string detail;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  try {
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      double s = 0.1 + 0.7 * u(rng);
      double t = 0.01 + 0.25 * u(rng);
      double nu = (0.05 + 0.9 * u(rng)) * 0.3 * (1.0 - s);
      std::int64_t n = 8 + (std::int64_t)(u(rng) * 400);
      ProofParameters p;
      p.s = s;
      p.t = t;
      p.nu = nu;
      p.n_count = n;
      DerivedConstants d = derive_constants(s, t, nu);
      std::int64_t j = (std::int64_t)(u(rng) * n), k = (std::int64_t)(u(rng) * n);
      double psi = (u(rng) - 0.5) * 2.0 * kPi / double(n);
      AffineFunction fj = tangent_function(s, t, n, j);
      AffineFunction gk = turned_function(s, t, nu, psi, n, k);
      auto direct = line_intersection(fj, gk);
      if (!direct) {
        ok = false;
        detail = "unexpected parallel pair";
        break;
      }
      double nsq = intersection_norm_sq(k - j, psi, p, d);
      double scale = 1.0 + nsq;
      worst = std::max(worst, std::abs(nsq - direct->norm_sq()) / scale);
      std::int64_t m = ((k - j) % n + n) % n;
      worst = std::max(worst,
                       std::abs(intersection_norm_sq(m, psi, p, d) - nsq) / scale);
      worst = std::max(
          worst, std::abs(intersection_norm_sq(-(k - j), -psi, p, d) - nsq) / scale);
    }
    ok = ok && worst < 1e-10;
    char buf[80];
    std::snprintf(buf, sizeof(buf), "worst relative residual %.3e", worst);
    if (detail.empty()) detail = buf;
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(3, "Eq.(11)/(15) dual computation and symmetries", ok, detail);
}

void criterion4() {
  Timer timer;
  bool ok = true;
  std::string detail;
  try {
    double s = 0.3, sigma = 0.05;
    double t = solve_footprint_t(s, (5.0 / 3.0) * sigma);
    ok = ok && std::abs(t - 1.3e-2) < 2e-3;  // recomputed by bisection
    double nu = s / 10.0, B = 10.0;
    DerivedConstants d = derive_constants(s, t, nu);
    double eps = -1.0;
    PsiChoice choice;
    for (int k = 0; k < 14 && eps < 0.0; ++k) {
      double trial = 1e-3 * std::pow(0.5, k);
      try {
        Equidistributed e = equidistributed_points(d.R2 * (1.0 - t), B, trial);
        ProofParameters p;
        p.s = s;
        p.t = t;
        p.nu = nu;
        p.n_count = e.count;
        p.eps = trial;
        choice = choose_psi(p, d, 2.0 * trial);
        eps = trial;
      } catch (const Error&) {
      }
    }
    ok = ok && eps > 0.0;
    if (eps > 0.0) {
      // both certificate paths: the pairwise gate (interval/branch-and-bound)
      // plus an independent descent sweep over the hot window
      ok = ok && choice.gate.passed && choice.gate.margin > 0.0;
      TorusFamily ff = make_tangent_family(s, t,
                                           equidistributed_points(d.R2 * (1.0 - t), B, eps)
                                               .count,
                                           eps, 1, "acc4.f");
      TorusFamily fg = make_turned_family(s, t, nu, choice.psi, ff.count, eps, 1, "acc4.g");
      Certificate both = cross_family_disjointness(ff, fg, eps);
      ok = ok && both.passed && both.margin > 0.0;
      double secs = timer.seconds();
      ok = ok && secs < 120.0;
      char buf[200];
      std::snprintf(buf, sizeof(buf), "t=%.4e eps=%.2e psi=%.3e gate margin=%.2e %.1fs", t,
                    eps, choice.psi, both.margin, secs);
      detail = buf;
    } else {
      detail =
          "no eps admits a psi at B=10: a machine-verified sphere point lies in both "
          "2eps tubes for every psi; the measured lemma-3 threshold here is B' ~ 14";
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(4, "lemma 3 pipeline (s=0.3, sigma=0.05, nu=s/10, B=10)", ok, detail);
}

void criterion5() {
  bool ok = true;
  std::string detail;
  try {
    double r = 1.0 / std::sqrt(2.0);
    double eps = -1.0;
    Prop1Result p1;
    for (int k = 0; k < 12 && eps < 0.0; ++k) {
      double trial = 1e-3 * std::pow(0.5, k);
      try {
        p1 = prop1_families(r, r, 0.8, 0.05, trial, 10.0, 2e-3, 1, "acc5");
        eps = trial;
      } catch (const Error&) {
      }
    }
    ok = ok && eps > 0.0;
    if (ok) {
      ok = ok && p1.bidisc_radius > (p1.B_actual + 1.0) * eps;  // spacing viability
      bool disjoint = true, coverage = false;
      for (const auto& c : p1.certs) {
        if (c.kind == CertKind::Disjointness) disjoint = disjoint && c.passed;
        if (c.id.find("eq4_grid") != std::string::npos) coverage = c.passed;
      }
      ok = ok && disjoint && coverage;
      char buf[160];
      std::snprintf(buf, sizeof(buf), "eps=%.2e tori=%lld+%lld a=%.4f sqrt(a eps)=%.3e",
                    eps, (long long)p1.fam_f.count, (long long)p1.fam_g.count, p1.ml.a,
                    p1.bidisc_radius);
      detail = buf;
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(5, "proposition 1 desk instance (R1=R2=1/sqrt2, q=0.8)", ok, detail);
}

const char* kArchivePath = "acceptance_tree.json";

void criterion6() {
  Timer timer;
  bool ok = true;
  std::string detail;
  try {
    RunConfig cfg;
    cfg.beta = 0.5;
    cfg.depth = 2;
    cfg.B = 10.0;
    cfg.resolution = 1e-3;
    cfg.eps_initial = 1e-3;
    Budget budget{cfg.budget_tori, 540.0};
    ConstructionTree tree =
        build_cantor_tree(cfg.beta, cfg.depth, budget, cfg.B, cfg.eps_initial,
                          cfg.resolution);
    ok = ok && tree.status == TreeStatus::Complete;
    ok = ok && tree.generations.size() == 2;
    double smax2 = 0.0;
    if (tree.generations.size() >= 2) {
      for (double s : tree.generations[1].s_values) smax2 = std::max(smax2, s);
      ok = ok && smax2 < 0.25;
      for (const auto& gen : tree.generations)
        for (const auto& c : gen.certificates)
          if (c.id.find("gamma") == std::string::npos) ok = ok && c.passed;
      int covered = 0;
      for (int i = 0; i < 1000; ++i) {
        ComplexPoint2 z = random_ball_point(0.5);
        if (point_coverage_query(tree, z, 1).covered &&
            point_coverage_query(tree, z, 2).covered)
          ++covered;
      }
      ok = ok && covered == 1000;
      TreeArchive a;
      a.config = cfg;
      a.tree = tree;
      save_archive(a, kArchivePath);
      double secs = timer.seconds();
      ok = ok && secs < 600.0;
      char buf[240];
      std::snprintf(buf, sizeof(buf),
                    "status=%s eps1=%.2e eps2=%.3e max s(2)=%.3e covered=%d/1000 %.0fs",
                    tree.status == TreeStatus::Complete ? "Complete" : "Partial",
                    tree.generations[0].eps_level, tree.generations[1].eps_level, smax2,
                    covered, secs);
      detail = buf;
    } else {
      detail = "tree stopped before level 2: " + tree.status_note;
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(6, "theorem desk instance (beta=0.5, depth=2)", ok, detail);
}

void criterion7() {
  bool ok = true;
  std::string detail;
  try {
    TreeArchive a = load_archive(kArchivePath);
    // sample cloud of the first generation
    std::vector<ComplexPoint2> cloud;
    for (size_t i = 0; i < a.tree.generations[0].tori.size(); i += 7) {
      TorusMesh m = torus_sample(a.tree.generations[0].tori[i], 1, 2, 8);
      cloud.insert(cloud.end(), m.points.begin(), m.points.end());
    }
    auto witness = polynomial_separation({cxd{1.2, 0.0}, cxd{0.0, 0.0}}, cloud, 4);
    ok = ok && witness.has_value() && witness->ratio >= 1.2 - 1e-9;

    TreeArchive bad = a;
    for (auto& t : bad.tree.generations[0].tori) t.sigma *= 100.0;
    VerifyReport rep = reverify_tree(bad.tree, 1.0);
    bool tampered_caught = rep.failed > 0;
    bool has_witness = false;
    for (const auto& c : rep.failures) has_witness = has_witness || c.witness.has_value();
    ok = ok && tampered_caught && has_witness;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "ratio=%.3f tamper failures=%lld",
                  witness ? witness->ratio : 0.0, (long long)rep.failed);
    detail = buf;
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(7, "negative oracle and tamper detection", ok, detail);
}

void criterion8() {
  bool ok = true;
  std::string detail;
  try {
    RunConfig cfg;
    cfg.beta = 0.5;
    cfg.depth = 1;
    cfg.eps_initial = 1e-3;
    cfg.resolution = 2e-3;
    Budget budget{cfg.budget_tori, cfg.budget_seconds};
    auto build = [&]() {
      TreeArchive a;
      a.config = cfg;
      a.tree = build_cantor_tree(cfg.beta, cfg.depth, budget, cfg.B, cfg.eps_initial,
                                 cfg.resolution);
      return a;
    };
    TreeArchive a1 = build(), a2 = build();
    std::string s1 = to_json(a1).dump(1), s2 = to_json(a2).dump(1);
    ok = ok && s1 == s2;

    save_archive(a1, "det_check.json");
    TreeArchive reloaded = load_archive("det_check.json");
    const auto &g1 = a1.tree.generations[0], &g2 = reloaded.tree.generations[0];
    ok = ok && g1.certificates.size() == g2.certificates.size();
    for (size_t i = 0; ok && i < g1.certificates.size(); ++i) {
      ok = ok && g1.certificates[i].margin == g2.certificates[i].margin;
      ok = ok && g1.certificates[i].passed == g2.certificates[i].passed;
    }
    VerifyReport rep = reverify_tree(reloaded.tree, 1.0);
    ok = ok && rep.failed == 0;
    std::remove("det_check.json");
    char buf[120];
    std::snprintf(buf, sizeof(buf), "archive bytes=%zu, reverify failed=%lld", s1.size(),
                  (long long)rep.failed);
    detail = buf;
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(8, "determinism and roundtrip", ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  if (!quick) {
    criterion6();
    criterion7();
  } else {
    std::printf("[SKIP] criterion 6 and 7 (quick mode)\n");
  }
  criterion8();
  std::remove(kArchivePath);
  if (g_failures == 0) {
    std::printf("acceptance: all criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", g_failures);
  return 1;
}
