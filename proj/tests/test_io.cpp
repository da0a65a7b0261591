#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "hullforge/archive.hpp"
#include "hullforge/export.hpp"
#include "hullforge/verify.hpp"

using namespace hullforge;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

TreeArchive small_archive() {
  RunConfig cfg;
  cfg.beta = 0.5;
  cfg.depth = 1;
  cfg.eps_initial = 1e-3;
  cfg.resolution = 2e-3;
  TreeArchive a;
  a.config = cfg;
  Budget budget{cfg.budget_tori, cfg.budget_seconds};
  a.tree = build_cantor_tree(cfg.beta, cfg.depth, budget, cfg.B, cfg.eps_initial,
                             cfg.resolution);
  return a;
}

}  // namespace

TEST_CASE("config validation messages name the field") {
  RunConfig cfg;
  cfg.beta = 1.5;
  try {
    validate(cfg);
    FAIL("expected BadConfig");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("config.beta") != std::string::npos);
  }
}

TEST_CASE("archive roundtrip reproduces every margin bit for bit") {
  TreeArchive a = small_archive();
  save_archive(a, "roundtrip.json");
  TreeArchive b = load_archive("roundtrip.json");
  REQUIRE(b.tree.generations.size() == a.tree.generations.size());
  const auto &g1 = a.tree.generations[0], &g2 = b.tree.generations[0];
  REQUIRE(g1.certificates.size() == g2.certificates.size());
  for (size_t i = 0; i < g1.certificates.size(); ++i) {
    CHECK(g1.certificates[i].margin == g2.certificates[i].margin);
    CHECK(g1.certificates[i].passed == g2.certificates[i].passed);
  }
  REQUIRE(g1.tori.size() == g2.tori.size());
  for (size_t i = 0; i < g1.tori.size(); i += 31) {
    CHECK(g1.tori[i].f.f0 == g2.tori[i].f.f0);
    CHECK(g1.tori[i].sigma == g2.tori[i].sigma);
  }
  // saving the reloaded archive is byte identical
  save_archive(b, "roundtrip2.json");
  CHECK(slurp("roundtrip.json") == slurp("roundtrip2.json"));
  std::remove("roundtrip.json");
  std::remove("roundtrip2.json");
}

TEST_CASE("determinism: same config and seed give byte-identical archives") {
  TreeArchive a = small_archive();
  TreeArchive b = small_archive();
  save_archive(a, "det_a.json");
  save_archive(b, "det_b.json");
  CHECK(slurp("det_a.json") == slurp("det_b.json"));
  std::remove("det_a.json");
  std::remove("det_b.json");
}

TEST_CASE("reverify passes on a fresh archive and fails on tampered widths") {
  TreeArchive a = small_archive();
  VerifyReport ok = reverify_tree(a.tree, 1.0);
  CHECK(ok.failed == 0);
  CHECK(ok.total > 0);

  // inflate every torus width a hundredfold
  TreeArchive bad = a;
  for (auto& t : bad.tree.generations[0].tori) t.sigma *= 100.0;
  VerifyReport rep = reverify_tree(bad.tree, 1.0);
  CHECK(rep.failed > 0);
  bool with_witness = false;
  for (const auto& c : rep.failures) with_witness = with_witness || c.witness.has_value();
  CHECK(with_witness);
}

TEST_CASE("coarser resolution keeps verdicts") {
  TreeArchive a = small_archive();
  VerifyReport rep = reverify_tree(a.tree, 0.5);
  CHECK(rep.failed == 0);
}

TEST_CASE("stereographic export") {
  TreeArchive a = small_archive();
  SUBCASE("row counts match the configured mesh") {
    ExportStats st = export_tree(a.tree, Projection::Coordinates, {0, 0, 0, 1},
                                 "export_raw.csv", 4, 8);
    std::int64_t tori = (std::int64_t)a.tree.generations[0].tori.size();
    CHECK(st.rows == tori * 4 * 8);
    CHECK(st.skipped_pole == 0);
    std::remove("export_raw.csv");
  }
  SUBCASE("projection determinism") {
    ExportStats s1 = export_tree(a.tree, Projection::Stereographic, {0, 0, 0, 1},
                                 "export_p1.csv", 4, 8);
    ExportStats s2 = export_tree(a.tree, Projection::Stereographic, {0, 0, 0, 1},
                                 "export_p2.csv", 4, 8);
    CHECK(s1.rows == s2.rows);
    CHECK(slurp("export_p1.csv") == slurp("export_p2.csv"));
    std::remove("export_p1.csv");
    std::remove("export_p2.csv");
  }
  SUBCASE("a great circle through the pole projects to a line") {
    // core of T^{s=1}(sigma) with the core circle through the pole (0, i)
    AffineFunction f{0.0, 1.0, 0.0};  // z1 = 0: circle {(0, e^{i phi})}
    std::array<double, 4> pole{0.0, 0.0, 0.0, 1.0};
    std::vector<std::array<double, 3>> pts;
    int skipped = 0;
    for (int k = 0; k < 64; ++k) {
      double phi = 2.0 * 3.14159265358979 * k / 64.0;
      auto p = stereographic({cxd{0, 0}, std::polar(1.0, phi)}, pole);
      if (!p) {
        ++skipped;
        continue;
      }
      pts.push_back(*p);
    }
    (void)f;
    REQUIRE(pts.size() > 10);
    // collinear: cross products against the first direction vanish
    auto d0 = pts.back();
    for (int i = 0; i < 3; ++i) d0[i] -= pts[0][i];
    for (size_t i = 1; i + 1 < pts.size(); ++i) {
      std::array<double, 3> d{pts[i][0] - pts[0][0], pts[i][1] - pts[0][1],
                              pts[i][2] - pts[0][2]};
      double cx = d0[1] * d[2] - d0[2] * d[1];
      double cy = d0[2] * d[0] - d0[0] * d[2];
      double cz = d0[0] * d[1] - d0[1] * d[0];
      CHECK(std::sqrt(cx * cx + cy * cy + cz * cz) < 1e-9);
    }
  }
  SUBCASE("a circle missing the pole projects to a circle") {
    std::array<double, 4> pole{0.0, 0.0, 0.0, 1.0};
    std::vector<std::array<double, 3>> pts;
    for (int k = 0; k < 32; ++k) {
      double phi = 2.0 * 3.14159265358979 * k / 32.0;
      auto p = stereographic({std::polar(1.0, phi), cxd{0, 0}}, pole);
      REQUIRE(p.has_value());
      pts.push_back(*p);
    }
    // equidistance from the centroid
    std::array<double, 3> c{0, 0, 0};
    for (const auto& p : pts)
      for (int i = 0; i < 3; ++i) c[i] += p[i] / pts.size();
    double r0 = -1.0;
    for (const auto& p : pts) {
      double r = std::sqrt((p[0] - c[0]) * (p[0] - c[0]) + (p[1] - c[1]) * (p[1] - c[1]) +
                           (p[2] - c[2]) * (p[2] - c[2]));
      if (r0 < 0) r0 = r;
      CHECK(r == doctest::Approx(r0).epsilon(1e-9));
    }
  }
}
