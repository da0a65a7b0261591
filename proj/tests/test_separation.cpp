#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hullforge/samplers.hpp"
#include "hullforge/separation.hpp"

using namespace hullforge;

namespace {

std::mt19937_64 rng(77001);

// dense random oracle for inf over the annulus of max(|f|,|g|)
double annulus_min_oracle(const AffineFunction& f, const AffineFunction& g, double r_lo,
                          int n) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> u(std::pow(r_lo, 4.0), 1.0);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    ComplexPoint2 z{{gauss(rng), gauss(rng)}, {gauss(rng), gauss(rng)}};
    double nz = z.norm();
    if (nz == 0.0) continue;
    double r = std::pow(u(rng), 0.25);
    z = z * (r / nz);
    best = std::min(best, std::max(f.modulus(z), g.modulus(z)));
  }
  return best;
}

}  // namespace

TEST_CASE("main lemma instance z1, z2: analytic floor") {
  AffineFunction f{0.0, 1.0, 0.0}, g{0.0, 0.0, 1.0};
  SeparationConstants c = separation_constants(f, g, 0.9, 1e-3);
  CHECK(c.r_prime == doctest::Approx(0.9));
  // inf over the annulus is 0.9/sqrt(2); a = 0.9 * certified bound
  CHECK(c.a >= 0.5);
  CHECK(c.a <= 0.9 * 0.9 / std::sqrt(2.0) + 1e-9);
  CHECK(c.margin > 0.0);

  // soundness: re-sampled oracle never undercuts a
  double oracle = annulus_min_oracle(f, g, 0.9, 400000);
  CHECK(oracle >= c.a);
}

TEST_CASE("parallel pair admits any a below half the distance") {
  AffineFunction f{-0.3, 1.0, 0.0}, g{0.3, 1.0, 0.0};
  SeparationConstants c = separation_constants(f, g);
  CHECK(c.a > 0.0);
  CHECK(c.a <= 0.3 + 1e-9);
}

TEST_CASE("the (0.5, 0.5) crossing pair is not rejected") {
  AffineFunction f{-0.5, 1.0, 0.0}, g{-0.5, 0.0, 1.0};
  // the intersection point (0.5, 0.5) has squared norm 0.5 < 1
  SeparationConstants c = separation_constants(f, g);
  CHECK(c.a > 0.0);
  double oracle = annulus_min_oracle(f, g, c.r_prime, 300000);
  CHECK(oracle >= c.a);
}

TEST_CASE("touching circles are rejected") {
  // crossing point on the sphere: lines z1 = 1/sqrt2, z2 = 1/sqrt2
  double v = 1.0 / std::sqrt(2.0);
  AffineFunction f{-v, 1.0, 0.0}, g{-v, 0.0, 1.0};
  CHECK_THROWS_AS(separation_constants(f, g), Error);
}

TEST_CASE("equation (1) sampling check") {
  AffineFunction f{0.0, 1.0, 0.0}, g{0.0, 0.0, 1.0};
  SeparationConstants c = separation_constants(f, g, 0.9, 1e-3);
  Certificate cert = check_inclusion_eq1(f, g, c, 1e-3, 100000);
  CHECK(cert.passed);
  CHECK(cert.sample_count >= 100000);
  CHECK(cert.margin > 0.0);

  SUBCASE("degenerate eps = a still passes under the M policy") {
    Certificate c2 = check_inclusion_eq1(f, g, c, c.a, 50000);
    CHECK(c2.passed);
  }
  SUBCASE("a = 0 is vacuous") {
    SeparationConstants zero;
    zero.a = 0.0;
    zero.r_prime = 0.9;
    Certificate c3 = check_inclusion_eq1(f, g, zero, 1e-3, 1000);
    CHECK(c3.passed);
  }
}

TEST_CASE("corollary hull region and radius gate") {
  AffineFunction f{0.0, 1.0, 0.0}, g{0.0, 0.0, 1.0};
  SeparationConstants c = separation_constants(f, g, 0.9, 1e-3);
  HullRegion h = corollary_hull_region(f, g, c, 1e-3, c.r_prime);
  CHECK(h.kind == RegionKind::ProductSublevel);
  // the intersection point is a member: |f g| = 0
  CHECK(h.contains({cxd{0, 0}, cxd{0, 0}}));
  CHECK_THROWS_AS(corollary_hull_region(f, g, c, 1e-3, c.r_prime - 0.01), Error);
}

TEST_CASE("certified bidisc") {
  AffineFunction f{0.0, 1.0, 0.0}, g{0.0, 0.0, 1.0};
  SeparationConstants c = separation_constants(f, g, 0.9, 1e-3);
  double eps = 1e-3;
  HullRegion b = certified_bidisc(f, g, c, eps);
  CHECK(b.polyradius == doctest::Approx(std::sqrt(c.a * eps)));
  CHECK(b.contains(b.center));
  // boundary point with |f| = |g| = sqrt(a eps) sits on the product level set
  ComplexPoint2 corner{cxd{b.polyradius, 0.0}, cxd{b.polyradius, 0.0}};
  CHECK(f.modulus(corner) * g.modulus(corner) <= c.a * eps * (1 + 1e-12));

  // spacing viability arithmetic from the proposition-1 proof
  double a = 0.5, e2 = 1e-3, B = 5.0;
  CHECK(std::sqrt(a * e2) > (B + 1.0) * e2);

  AffineFunction far_g{-1.5, 0.0, 1.0};
  SeparationConstants cf;
  cf.a = 0.1;
  CHECK_THROWS_AS(certified_bidisc(f, far_g, cf, eps), Error);
}

TEST_CASE("stability under small perturbations of the pair") {
  AffineFunction f{0.0, 1.0, 0.0}, g{0.0, 0.0, 1.0};
  SeparationConstants c = separation_constants(f, g, 0.9, 1e-3);
  double bump = c.margin / 4.0;
  AffineFunction f2 = normalize_affine(f.f0 + bump * 0.5, f.f1, f.f2 + cxd{bump * 0.5, 0.0});
  AffineFunction g2 = normalize_affine(g.f0 - bump * 0.5, g.f1 + cxd{bump * 0.5, 0.0}, g.f2);
  // the pair stays separated by a on the same annulus
  double oracle = annulus_min_oracle(f2, g2, c.r_prime, 200000);
  CHECK(oracle >= c.a - 2.0 * bump);
}

TEST_CASE("unitary invariance of the constants") {
  AffineFunction f{0.0, 1.0, 0.0}, g{0.0, 0.0, 1.0};
  SeparationConstants c1 = separation_constants(f, g, 0.9, 2e-3);
  // swap roles of the coordinates: a unitary change applied to both
  Unitary2 u{0.0, 1.0, 1.0, 0.0};
  AffineFunction fu = compose_affine(f, u), gu = compose_affine(g, u);
  SeparationConstants c2 = separation_constants(fu, gu, 0.9, 2e-3);
  CHECK(c1.a == doctest::Approx(c2.a).epsilon(1e-6));
  CHECK(c1.r_prime == c2.r_prime);
}
