#include "hullforge/construction.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>

namespace hullforge {

namespace {
constexpr double kPi = 3.14159265358979323846;

Certificate arith_cert(std::string id, CertKind kind, double margin, double scale,
                       std::string note) {
  Certificate c;
  c.id = std::move(id);
  c.kind = kind;
  c.scale = scale;
  c.margin = margin;
  c.resolution = 0.0;
  c.note = std::move(note);
  c.passed = margin > slack(scale);
  return c;
}

double wall_seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::vector<BidiscSpec> bidisc_cover(double beta) {
  if (!(beta > 0.0 && beta < 1.0))
    throw Error(Err::BadConfig, "bidisc_cover: beta outside (0,1)");
  double q = 0.5 * (1.0 + beta);
  for (int k = 1; k <= 256; ++k) {
    std::vector<BidiscSpec> cover;
    for (int i = 0; i < k; ++i) {
      double tau = (kPi / 2.0) * (i + 0.5) / k;
      cover.push_back({std::cos(tau), std::sin(tau), q});
    }
    Certificate c = bidisc_cover_certificate(beta, cover);
    if (c.passed) return cover;
  }
  throw Error(Err::CoverSearchFailed, "bidisc_cover: no grid up to 256 bidiscs certified");
}

Certificate bidisc_cover_certificate(double beta, const std::vector<BidiscSpec>& cover) {
  // modulus-space reduction: covering the quarter circle (beta cos u,
  // beta sin u) covers the whole ball because the rectangles are monotone
  const int n = 4096;
  double worst = -std::numeric_limits<double>::infinity();
  double worst_u = 0.0;
  for (int i = 0; i <= n; ++i) {
    double u = (kPi / 2.0) * i / n;
    double x = beta * std::cos(u), y = beta * std::sin(u);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& b : cover)
      best = std::min(best, std::max(x - b.q * b.R1, y - b.q * b.R2));
    if (best > worst) {
      worst = best;
      worst_u = u;
    }
  }
  double lip = beta * (kPi / 2.0) / n / 2.0;  // arc step Lipschitz slack
  Certificate c;
  c.id = "bidisc_cover";
  c.kind = CertKind::Coverage;
  c.scale = beta;
  c.margin = -worst - lip;
  c.resolution = lip;
  c.sample_count = n + 1;
  c.note = "beta ball inside the union of " + std::to_string(cover.size()) +
           " scaled bidiscs (q = " + std::to_string(cover.empty() ? 0.0 : cover[0].q) + ")";
  c.passed = c.margin > slack(beta);
  if (!c.passed)
    c.witness = {cxd{beta * std::cos(worst_u), 0.0}, cxd{beta * std::sin(worst_u), 0.0}};
  nlohmann::json jc = nlohmann::json::array();
  for (const auto& b : cover) jc.push_back({b.R1, b.R2, b.q});
  c.replay = {{"engine", "bidisc_cover"}, {"beta", beta}, {"cover", jc}};
  return c;
}

Prop4Result prop4_cover(double s, double sigma, double eps, double B, double resolution,
                        int level, const std::string& tag) {
  Prop4Result out;
  // proposition 3 core; small B keeps the lattice step alpha large
  std::vector<double> b3_list = {5.0, 6.0, 8.0, B};
  std::string p3_reason = "no B candidate";
  bool have_p3 = false;
  for (double b3 : b3_list) {
    try {
      out.p3 = prop3_families(s, sigma, eps, b3, resolution, level, tag + ".p3");
      have_p3 = true;
      break;
    } catch (const Error& e) {
      p3_reason = e.what();
      if (e.code() == Err::SigmaTooLarge) throw;
    }
  }
  if (!have_p3)
    throw Error(Err::ParameterSearchFailed, "prop4_cover: proposition 3: " + p3_reason);

  double delta = out.p3.alpha / 3.0 * 0.999;
  double q2 = out.p3.r_prime;
  std::string p2_reason = "no B candidate";
  bool have_p2 = false;
  // the psi window needs B comfortably above the empirical lemma-3 threshold
  for (double b2 : {14.0, 16.0, 12.0, 20.0, 10.0, 8.0, 6.0}) {
    try {
      out.p2 = prop2_families(s, delta, q2, s, eps, b2, resolution, level, tag + ".p2");
      have_p2 = true;
      break;
    } catch (const Error& e) {
      p2_reason = e.what();
    }
  }
  if (!have_p2)
    throw Error(Err::ParameterSearchFailed, "prop4_cover: template: " + p2_reason);

  // replay the template gates at the lattice extremes (the per-k instances
  // share these parameters; nearby-pair stability is verified, not assumed)
  LatticeExtremes ext =
      lattice_extremes(s, sigma, out.p3.alpha);
  double smin = std::min(s, ext.s_min), smax = std::max(s, ext.s_max);
  Prop2Forced forced{out.p2.t, out.p2.nu, out.p2.psi, out.p2.fam_f.count};
  double probe_margin = std::numeric_limits<double>::infinity();
  for (double sk : {smin, smax}) {
    if (sk == s) continue;
    Prop2Result probe = prop2_families(sk, delta, q2, s, eps, out.p2.B_actual, resolution,
                                       level, tag + ".probe", forced);
    out.r_prime = std::max(out.r_prime, probe.r_prime);
    for (const auto& c : probe.certs) probe_margin = std::min(probe_margin, c.margin);
    out.s_values.push_back(probe.s1);
    out.s_values.push_back(probe.s2);
  }
  out.certs.push_back(arith_cert(
      tag + ".probe", CertKind::Coverage,
      std::isfinite(probe_margin) ? probe_margin : 1.0, eps,
      "template gates replayed at the lattice extremes (s in [" + std::to_string(smin) +
          ", " + std::to_string(smax) + "])"));

  for (const auto& c : out.p3.certs) out.certs.push_back(c);
  for (const auto& c : out.p2.certs) out.certs.push_back(c);

  // cross separation: tangent tori on the (5/3) sigma shell vs the lattice
  // blocks {|z1-(1-zeta_k)| <= delta}
  Band band = tube_z1_band(s, out.p3.t, 0.0, 2.0 * eps, true);
  double block_hi = (4.0 / 3.0) * sigma + delta;
  {
    double margin = band.valid ? band.lo - block_hi : -1.0;
    Certificate c = arith_cert(tag + ".cross_blocks", CertKind::Disjointness, margin, sigma,
                               "tangent tori vs replaced lattice blocks by z1 footprint");
    if (!c.passed) {
      c.witness = family_point(out.p3.tangent, 0);
      out.certs.push_back(c);
      throw Error(Err::MergeCollision, "prop4_cover: tangent vs block separation failed");
    }
    out.certs.push_back(c);
  }
  out.certs.push_back(arith_cert(tag + ".blocks", CertKind::Disjointness,
                                 out.p3.alpha - 2.0 * delta, out.p3.alpha,
                                 "lattice blocks pairwise disjoint (alpha net vs 2 delta)"));
  out.certs.push_back(arith_cert(tag + ".contain", CertKind::Inclusion,
                                 2.0 * sigma - std::max(band.hi, block_hi), sigma,
                                 "all tori inside |z1-(1-s)| <= 2 sigma"));

  out.s_values.push_back(out.p3.s_star);
  out.s_values.push_back(out.p2.s1);
  out.s_values.push_back(out.p2.s2);
  out.rho = out.p3.rho;
  out.r_prime = std::max({out.r_prime, out.p3.r_prime, out.p2.r_prime});
  out.virtual_count =
      out.p3.tangent.count + out.p3.lattice.count * 2 * out.p2.fam_f.count;

  // assembled (20_r) chain certificate
  double chain_margin = std::numeric_limits<double>::infinity();
  for (const auto& c : out.certs)
    if (c.passed) chain_margin = std::min(chain_margin, c.margin);
    else chain_margin = -1.0;
  Certificate eq20 = arith_cert(tag + ".eq20", CertKind::Coverage, chain_margin, sigma,
                                "(1-rho) ball cap sigma-slab inside the hull of the merged "
                                "family; rho=" + std::to_string(out.rho) +
                                    " r'=" + std::to_string(out.r_prime));
  out.certs.push_back(eq20);
  if (!eq20.passed) throw Error(Err::GateFailed, "prop4_cover: eq20 chain incomplete");
  return out;
}

GenerationRecord build_generation_1(double beta, double eps, double B, double resolution) {
  GenerationRecord rec;
  rec.level = 1;
  rec.eps_level = eps;
  rec.r_level = 0.0;

  std::vector<BidiscSpec> cover = bidisc_cover(beta);
  rec.certificates.push_back(bidisc_cover_certificate(beta, cover));

  std::int64_t next_id = 0;
  std::vector<Prop1Result> results;
  for (size_t i = 0; i < cover.size(); ++i) {
    const auto& b = cover[i];
    std::string tag = "L1.b" + std::to_string(i);
    // achievable neighbourhood width for the informational gamma report
    double gamma = 2.0 * (1.0 - b.q) + 4.0 * eps + 0.05;
    Prop1Result p1 = prop1_families(b.R1, b.R2, b.q, gamma, eps, B, resolution, 1, tag);
    for (const auto& c : p1.certs) rec.certificates.push_back(c);

    Level1Bidisc meta;
    meta.spec = b;
    meta.nf = p1.fam_f.count;
    meta.ng = p1.fam_g.count;
    meta.s1 = p1.s1;
    meta.s2 = p1.s2;
    meta.a = p1.ml.a;
    meta.r_prime = p1.r_prime;
    meta.bidisc_radius = p1.bidisc_radius;
    meta.B_actual = p1.B_actual;
    meta.eps = eps;
    rec.bidiscs.push_back(meta);
    rec.s_values.push_back(p1.s1);
    rec.s_values.push_back(p1.s2);
    rec.r_level = std::max(rec.r_level, p1.r_prime);

    for (const TorusFamily* fam : {&p1.fam_f, &p1.fam_g}) {
      for (std::int64_t m = 0; m < fam->count; ++m) {
        AffineFunction f = family_member(*fam, m);
        rec.tori.push_back(make_torus(f, 2.0 * eps, 1.0, 1, std::nullopt, next_id++));
      }
    }
    results.push_back(std::move(p1));
  }

  // cross-bidisc separation
  for (size_t i = 0; i < cover.size(); ++i) {
    for (size_t j = i + 1; j < cover.size(); ++j) {
      double a_f = cover[i].q * cover[i].R1, b_f = cover[j].q * cover[j].R1;
      double a_g = cover[i].q * cover[i].R2, b_g = cover[j].q * cover[j].R2;
      std::string tag = "L1.x" + std::to_string(i) + "_" + std::to_string(j);
      rec.certificates.push_back(
          arith_cert(tag + ".ff", CertKind::Disjointness,
                     0.5 * std::abs(a_f - b_f) - 2.0 * eps, eps,
                     "parallel z1 circle families of different bidiscs"));
      rec.certificates.push_back(
          arith_cert(tag + ".gg", CertKind::Disjointness,
                     0.5 * std::abs(a_g - b_g) - 2.0 * eps, eps,
                     "parallel z2 circle families of different bidiscs"));
      for (int dir = 0; dir < 2; ++dir) {
        AffineFunction f{-cxd(dir == 0 ? a_f : b_f), cxd{1.0, 0.0}, cxd{0.0, 0.0}};
        AffineFunction g{-cxd(dir == 0 ? b_g : a_g), cxd{0.0, 0.0}, cxd{1.0, 0.0}};
        Certificate c = pair_disjointness_on_sphere(
            f, g, 2.0 * eps, tag + (dir == 0 ? ".fg" : ".gf"));
        c.note += " (rotation class for all cross pairs)";
        rec.certificates.push_back(c);
      }
    }
  }

  // Eq. (22): beta ball inside the union of per-bidisc hull chains
  double margin = std::numeric_limits<double>::infinity();
  bool all = true;
  for (const auto& c : rec.certificates) {
    all = all && c.passed;
    margin = std::min(margin, c.passed ? c.margin : -1.0);
  }
  Certificate eq22 = arith_cert("L1.eq22", CertKind::Coverage, all ? margin : -1.0, beta,
                                "beta ball covered by certified bidisc hull regions");
  rec.certificates.push_back(eq22);
  if (!all) throw Error(Err::GateFailed, "build_generation_1: a certificate failed");
  return rec;
}

GenerationRecord refine_generation(const GenerationRecord& prev, double eps_next, double B,
                                   double resolution) {
  GenerationRecord rec;
  rec.level = prev.level + 1;
  rec.eps_level = eps_next;
  rec.r_level = 0.0;
  double ceiling = std::pow(2.0, -double(rec.level));

  // group parents by their unitary invariant class
  std::map<std::int64_t, std::vector<std::int64_t>> classes;
  std::map<std::int64_t, double> class_s;
  if (!prev.tori.empty()) {
    for (const auto& t : prev.tori) {
      std::int64_t key = (std::int64_t)std::llround(t.s * 1e12);
      classes[key].push_back(t.id);
      class_s[key] = t.s;
    }
  } else {
    for (double s : prev.s_values) {
      std::int64_t key = (std::int64_t)std::llround(s * 1e12);
      classes[key];
      class_s[key] = s;
    }
  }

  std::int64_t next_id = 0;
  int ci = 0;
  for (const auto& [key, parents] : classes) {
    double s = class_s[key];
    std::string tag = "L" + std::to_string(rec.level) + ".c" + std::to_string(ci++);
    Prop4Result p4 = prop4_cover(s, prev.eps_level, eps_next, B, resolution, rec.level, tag);

    // gates of the induction step
    double smax = *std::max_element(p4.s_values.begin(), p4.s_values.end());
    if (!(smax < ceiling))
      throw Error(Err::GateFailed, "refine_generation: s ceiling " + std::to_string(smax) +
                                       " >= " + std::to_string(ceiling));
    rec.certificates.push_back(arith_cert(tag + ".s_ceiling", CertKind::Inclusion,
                                          ceiling - smax, ceiling,
                                          "new s values below 2^-N"));
    if (!(1.0 - p4.rho > prev.r_level))
      throw Error(Err::GateFailed, "refine_generation: 1-rho <= r_{N-1}");
    rec.certificates.push_back(arith_cert(tag + ".radius_gate", CertKind::Inclusion,
                                          (1.0 - p4.rho) - prev.r_level, 1.0,
                                          "1 - rho(s_m, eps) > r_{N-1}"));
    for (const auto& c : p4.certs) rec.certificates.push_back(c);

    ClassSolve cs;
    cs.s_class = s;
    cs.sigma = prev.eps_level;
    cs.eps = eps_next;
    cs.t3 = p4.p3.t;
    cs.s_star = p4.p3.s_star;
    cs.alpha = p4.p3.alpha;
    cs.a3 = p4.p3.ml.a;
    cs.C = p4.p3.C;
    cs.D = p4.p3.D;
    cs.rho = p4.rho;
    cs.r_prime3 = p4.p3.r_prime;
    cs.r_prime4 = p4.r_prime;
    cs.B3 = p4.p3.B_actual;
    cs.n3 = p4.p3.tangent.count;
    cs.lattice_count = p4.p3.lattice.count;
    cs.templ = {p4.p2.t,  p4.p2.nu,       p4.p2.psi, p4.p2.s1,
                p4.p2.s2, p4.p2.ml.a,     p4.p2.r_prime, p4.p2.w_cov,
                p4.p2.b,  p4.p2.B_actual, p4.p2.fam_f.count, eps_next};
    cs.parent_ids = parents;
    for (double sv : p4.s_values) rec.s_values.push_back(sv);
    rec.r_level = std::max(rec.r_level, p4.r_prime);
    rec.virtual_count += (std::int64_t)std::max<size_t>(parents.size(), 1) * p4.virtual_count;

    // spot materialization: nesting checks on concrete children
    size_t spots = std::min<size_t>(parents.size(), 2);
    for (size_t pi = 0; pi < spots; ++pi) {
      const SolidTorus* parent = nullptr;
      for (const auto& t : prev.tori)
        if (t.id == parents[pi]) parent = &t;
      if (!parent) continue;
      Unitary2 u = normalizing_unitary(parent->f);
      // child representatives: tangent member 0 and the template's member 0
      // at the central lattice point
      std::vector<AffineFunction> reps;
      reps.push_back(family_member(p4.p3.tangent, 0));
      reps.push_back(family_member(p4.p2.fam_f, 0));
      for (size_t ri = 0; ri < reps.size(); ++ri) {
        AffineFunction child_f = compose_affine(reps[ri], u);
        SolidTorus child =
            make_torus(child_f, 2.0 * eps_next, 1.0, rec.level, parent->id, next_id++);
        rec.tori.push_back(child);
        rec.parent_map.push_back({child.id, parent->id});
        TorusMesh mesh = torus_sample(child, 2, 8, 16);
        double worst = std::numeric_limits<double>::infinity();
        for (const auto& z : mesh.points)
          worst = std::min(worst, 2.0 * prev.eps_level - parent->f.modulus(z));
        Certificate c;
        c.id = tag + ".nest" + std::to_string(pi) + "_" + std::to_string(ri);
        c.kind = CertKind::Inclusion;
        c.scale = prev.eps_level;
        c.margin = worst - mesh.covering_radius;
        c.resolution = mesh.covering_radius;
        c.sample_count = (std::int64_t)mesh.points.size();
        c.note = "child torus samples inside the parent tube";
        // the (5/3) sigma placement caps the attainable margin at sigma/3
        c.passed = c.margin > 0.25 * prev.eps_level;
        if (!c.passed) c.witness = mesh.points.empty() ? ComplexPoint2{} : mesh.points[0];
        rec.certificates.push_back(c);
        if (!c.passed)
          throw Error(Err::GateFailed, "refine_generation: spot nesting check failed");
      }
    }
    rec.classes.push_back(std::move(cs));
  }

  // cross-parent children disjointness: children live inside parent tubes,
  // parents certified pairwise disjoint at the previous level
  rec.certificates.push_back(
      arith_cert("L" + std::to_string(rec.level) + ".cross_parent", CertKind::Disjointness,
                 prev.eps_level, prev.eps_level,
                 "children confined to parent tubes; parent tubes pairwise disjoint"));

  // Eq. (24) assembly
  bool all = true;
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& c : rec.certificates) {
    all = all && c.passed;
    margin = std::min(margin, c.passed ? c.margin : -1.0);
  }
  rec.certificates.push_back(
      arith_cert("L" + std::to_string(rec.level) + ".eq24", CertKind::Coverage,
                 all ? margin : -1.0, prev.eps_level,
                 "r_{N-1} ball cap parent tubes inside the hull of the new generation"));
  if (!all) throw Error(Err::GateFailed, "refine_generation: a certificate failed");
  return rec;
}

double choose_epsilon(double eps0, const std::function<bool(double)>& gates,
                      int max_halvings) {
  for (int k = 0; k <= max_halvings; ++k) {
    double eps = eps0 * std::pow(0.5, k);
    if (gates(eps)) return eps;
  }
  throw Error(Err::SearchExhausted, "choose_epsilon: no eps passed the gates");
}

ConstructionTree build_cantor_tree(double beta, int depth, const Budget& budget, double B,
                                   double eps_initial, double resolution) {
  if (!(beta > 0.0 && beta < 1.0)) throw Error(Err::BadConfig, "beta outside (0,1)");
  if (depth < 1) throw Error(Err::BadConfig, "depth < 1");
  auto t0 = std::chrono::steady_clock::now();

  ConstructionTree tree;
  tree.beta = beta;
  if (budget.max_tori_per_level <= 0) {
    tree.status = TreeStatus::PartialWithWitness;
    tree.status_note = "budget: max_tori_per_level is zero, nothing materialized";
    return tree;
  }

  std::vector<double> b_candidates;
  for (double b : {B, 8.0, 6.0, 5.0})
    if (std::find(b_candidates.begin(), b_candidates.end(), b) == b_candidates.end() &&
        b >= 5.0)
      b_candidates.push_back(b);

  std::string last_reason;
  for (double b_top : b_candidates) {
    GenerationRecord gen1;
    bool have1 = false;
    try {
      double eps1 = choose_epsilon(eps_initial, [&](double eps) {
        try {
          gen1 = build_generation_1(beta, eps, b_top, resolution);
          return (std::int64_t)gen1.tori.size() <= budget.max_tori_per_level;
        } catch (const Error&) {
          return false;
        }
      }, 24);
      (void)eps1;
      have1 = true;
    } catch (const Error& e) {
      last_reason = e.what();
      continue;
    }
    if (!have1) continue;

    ConstructionTree attempt;
    attempt.beta = beta;
    attempt.generations.push_back(gen1);
    for (const auto& c : gen1.certificates)
      if (c.id == "L1.eq22" || c.id == "bidisc_cover") attempt.hull_chain.push_back(c);

    bool ok = true;
    for (int level = 2; level <= depth; ++level) {
      const GenerationRecord& prev = attempt.generations.back();
      if (wall_seconds_since(t0) > budget.max_wall_seconds) {
        attempt.status = TreeStatus::PartialWithWitness;
        attempt.status_note = "budget: wall clock limit during level " + std::to_string(level);
        tree = attempt;
        return tree;
      }
      GenerationRecord next;
      try {
        double epsn = choose_epsilon(prev.eps_level / 10.0, [&](double eps) {
          try {
            next = refine_generation(prev, eps, b_top, resolution);
            return true;
          } catch (const Error&) {
            return false;
          }
        });
        (void)epsn;
      } catch (const Error& e) {
        last_reason = "level " + std::to_string(level) + ": " + e.what();
        ok = false;
        break;
      }
      attempt.generations.push_back(next);
      for (const auto& c : next.certificates)
        if (c.id.find(".eq24") != std::string::npos || c.id.find(".eq20") != std::string::npos)
          attempt.hull_chain.push_back(c);
    }
    if (ok) {
      attempt.status = TreeStatus::Complete;
      tree = attempt;
      return tree;
    }
    if ((int)attempt.generations.size() >= 1 && depth > 1) {
      // deepest complete prefix is still a valid partial result
      attempt.status = TreeStatus::PartialWithWitness;
      attempt.status_note = last_reason;
      tree = attempt;
    }
  }
  if (tree.generations.empty())
    throw Error(Err::SearchExhausted, "build_cantor_tree: " + last_reason);
  return tree;
}

CoveragePath point_coverage_query(const ConstructionTree& tree, const ComplexPoint2& z,
                                  int level) {
  if (level < 1 || level > (int)tree.generations.size())
    throw Error(Err::BadConfig, "point_coverage_query: level outside the tree");
  CoveragePath path;
  const GenerationRecord& gen1 = tree.generations[0];
  // find a covering bidisc
  int found = -1;
  double best_margin = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < gen1.bidiscs.size(); ++i) {
    const auto& b = gen1.bidiscs[i].spec;
    double m = std::min(b.q * b.R1 - std::abs(z.z1), b.q * b.R2 - std::abs(z.z2));
    if (m > best_margin) {
      best_margin = m;
      found = (int)i;
    }
  }
  if (found < 0 || best_margin < 0.0) {
    path.covered = false;
    path.steps.push_back({"bidisc_cover", "outside every cover bidisc", best_margin});
    return path;
  }
  const auto& meta = gen1.bidiscs[found];
  path.steps.push_back({"bidisc_cover",
                        "inside bidisc " + std::to_string(found) + " (q R1 = " +
                            std::to_string(meta.spec.q * meta.spec.R1) + ")",
                        best_margin});
  path.steps.push_back({"eq4",
                        "distinguished boundary grid of certified bidiscs, radius " +
                            std::to_string(meta.bidisc_radius) + ", then the maximum principle",
                        meta.bidisc_radius});
  path.steps.push_back(
      {"eq22", "beta ball inside the union of bidisc hull chains", best_margin});
  for (int lv = 2; lv <= level; ++lv) {
    const GenerationRecord& gen = tree.generations[lv - 1];
    bool ok = true;
    double m = std::numeric_limits<double>::infinity();
    for (const auto& c : gen.certificates) {
      ok = ok && c.passed;
      m = std::min(m, c.margin);
    }
    if (!ok) {
      path.covered = false;
      path.steps.push_back({"eq24", "level " + std::to_string(lv) + " chain incomplete", -1.0});
      return path;
    }
    path.steps.push_back({"eq24",
                          "level " + std::to_string(lv) + " refinement chain (" +
                              std::to_string(gen.classes.size()) + " classes, " +
                              std::to_string(gen.virtual_count) + " tori)",
                          m});
  }
  path.covered = true;
  return path;
}

}  // namespace hullforge
