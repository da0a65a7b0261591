#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hullforge/geometry.hpp"
#include "hullforge/torus.hpp"

using namespace hullforge;

namespace {

std::mt19937_64 rng(20260809);

cxd random_cxd(double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng)};
}

ComplexPoint2 random_point(double scale = 1.0) { return {random_cxd(scale), random_cxd(scale)}; }

AffineFunction random_unit_affine() {
  while (true) {
    cxd f1 = random_cxd(), f2 = random_cxd();
    if (std::abs(f1) + std::abs(f2) < 1e-3) continue;
    return normalize_affine(random_cxd(0.8), f1, f2);
  }
}

Unitary2 random_unitary() {
  std::uniform_real_distribution<double> u(0.0, 2.0 * 3.14159265358979);
  double theta = 0.5 * u(rng);
  double a = u(rng), b = u(rng), c = u(rng);
  cxd ca = std::polar(std::cos(theta), a);
  cxd cb = std::polar(std::sin(theta), b);
  Unitary2 w{ca, cb, -std::conj(cb), std::conj(ca)};
  Unitary2 ph{std::polar(1.0, c), 0.0, 0.0, 1.0};
  return compose(ph, w);
}

}  // namespace

TEST_CASE("normalize_affine scales offsets with the gradient") {
  AffineFunction a = normalize_affine(0.0, 2.0, 0.0);
  CHECK(std::abs(a.f0) == doctest::Approx(0.0));
  CHECK(std::abs(a.f1 - cxd{1.0, 0.0}) < 1e-15);
  AffineFunction b = normalize_affine(1.0, 0.0, 2.0);
  CHECK(std::abs(b.f0 - cxd{0.5, 0.0}) < 1e-15);
  CHECK(std::abs(b.f2 - cxd{1.0, 0.0}) < 1e-15);
  AffineFunction c = normalize_affine(0.3, cxd{0.0, 0.6}, cxd{0.0, 0.8});
  CHECK(std::abs(c.f0 - cxd{0.3, 0.0}) < 1e-15);
  CHECK(std::abs(c.f1 - cxd{0.0, 0.6}) < 1e-15);
  CHECK_THROWS_AS(normalize_affine(1.0, 0.0, 0.0), Error);
}

TEST_CASE("unit gradient closure and Lipschitz bound") {
  for (int i = 0; i < 200; ++i) {
    AffineFunction f = random_unit_affine();
    CHECK(std::abs(f.gradient_norm() - 1.0) < 1e-12);
    ComplexPoint2 z = random_point(2.0), w = random_point(2.0);
    CHECK(std::abs(f.modulus(z) - f.modulus(w)) <= dist(z, w) + 1e-12);
  }
}

TEST_CASE("unitary invariant s") {
  AffineFunction f{-0.5, 1.0, 0.0};  // z1 - 0.5
  CHECK(unitary_invariant_s(f) == doctest::Approx(0.5));
  AffineFunction g{0.0, 0.0, 1.0};  // z2
  CHECK(unitary_invariant_s(g) == doctest::Approx(1.0));
  AffineFunction h = normalize_affine(-0.3, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
  CHECK(unitary_invariant_s(h) == doctest::Approx(0.7));
  AffineFunction far{1.2, 1.0, 0.0};
  CHECK_THROWS_AS(unitary_invariant_s(far), Error);
}

TEST_CASE("s is invariant under unitary changes of coordinates") {
  for (int i = 0; i < 100; ++i) {
    AffineFunction f = random_unit_affine();
    if (std::abs(f.f0) >= 1.0) continue;
    Unitary2 u = random_unitary();
    AffineFunction g = compose_affine(f, u);
    CHECK(std::abs(g.gradient_norm() - 1.0) < 1e-12);
    CHECK(unitary_invariant_s(g) == doctest::Approx(unitary_invariant_s(f)).epsilon(1e-10));
  }
}

TEST_CASE("normalizing unitary sends |f| to |w1 - (1-s)|") {
  SUBCASE("z1 style is the identity") {
    AffineFunction f{-0.6, 1.0, 0.0};
    Unitary2 u = normalizing_unitary(f);
    CHECK(std::abs(u.u11 - cxd{1.0, 0.0}) < 1e-14);
    CHECK(std::abs(u.u12) < 1e-14);
    CHECK(std::abs(u.u21) < 1e-14);
  }
  SUBCASE("z2 style swaps the coordinates") {
    AffineFunction f{-0.6, 0.0, 1.0};
    Unitary2 u = normalizing_unitary(f);
    CHECK(std::abs(u.u12) == doctest::Approx(1.0));
    CHECK(std::abs(u.u21) == doctest::Approx(1.0));
    CHECK(std::abs(u.u11) < 1e-14);
  }
  SUBCASE("random functions pass the residual check") {
    for (int i = 0; i < 100; ++i) {
      AffineFunction f = random_unit_affine();
      if (std::abs(f.f0) >= 0.999) continue;
      double s = unitary_invariant_s(f);
      Unitary2 u = normalizing_unitary(f);
      CHECK(u.unitarity_defect() < 1e-12);
      for (int k = 0; k < 100; ++k) {
        ComplexPoint2 w = random_point();
        double lhs = f.modulus(u.apply_inverse(w));
        double rhs = std::abs(w.z1 - (1.0 - s));
        CHECK(std::abs(lhs - rhs) < 1e-10);
      }
    }
  }
}

TEST_CASE("line circle radius") {
  AffineFunction g{0.0, 0.0, 1.0};
  CHECK(line_circle(g, 1.0).radius == doctest::Approx(1.0));
  // s = 0.5: cross-check R2^2 = 2s - s^2 against sqrt(1 - |f0|^2)
  AffineFunction f{-0.5, 1.0, 0.0};
  double r2 = line_circle(f, 1.0).radius;
  CHECK(r2 == doctest::Approx(std::sqrt(0.75)).epsilon(1e-12));
  double s = 0.5;
  CHECK(r2 == doctest::Approx(std::sqrt(2.0 * s - s * s)).epsilon(1e-12));
  CHECK_THROWS_AS(line_circle(f, 0.5), Error);
}

TEST_CASE("line intersection") {
  AffineFunction f{0.0, 1.0, 0.0};  // z1 = 0
  AffineFunction g{0.0, 0.0, 1.0};  // z2 = 0
  auto p = line_intersection(f, g);
  REQUIRE(p.has_value());
  CHECK(p->norm() < 1e-14);

  AffineFunction a{-0.5, 1.0, 0.0}, b{-0.3, 1.0, 0.0};
  CHECK_FALSE(line_intersection(a, b).has_value());

  for (int i = 0; i < 100; ++i) {
    AffineFunction u = random_unit_affine(), v = random_unit_affine();
    auto q = line_intersection(u, v);
    if (!q) continue;
    CHECK(u.modulus(*q) < 1e-9 * (1.0 + q->norm()));
    CHECK(v.modulus(*q) < 1e-9 * (1.0 + q->norm()));
  }
}

TEST_CASE("line_of satisfies the owning function") {
  for (int i = 0; i < 100; ++i) {
    AffineFunction f = random_unit_affine();
    ComplexLine l = line_of(f);
    CHECK(f.modulus(l.base) < 1e-12);
    CHECK(std::abs(f.f1 * l.direction.z1 + f.f2 * l.direction.z2) < 1e-12);
    CHECK(l.base.norm() == doctest::Approx(std::abs(f.f0)).epsilon(1e-12));
  }
}

TEST_CASE("torus sampling stays on the torus") {
  AffineFunction f{-0.5, 1.0, 0.0};  // T^{0.5}(0.1)
  SolidTorus t = make_torus(f, 0.1, 1.0, 1);
  TorusMesh mesh = torus_sample(t, 3, 8, 16);
  CHECK(mesh.points.size() == 3 * 8 * 16);
  for (const auto& z : mesh.points) {
    CHECK(std::abs(z.norm() - 1.0) < 1e-12);
    CHECK(f.modulus(z) <= 0.1 + 1e-12);
  }
  CHECK(mesh.covering_radius > 0.0);

  SUBCASE("single point mesh hits the core circle") {
    TorusMesh one = torus_sample(t, 1, 1, 1);
    REQUIRE(one.points.size() == 1);
    CHECK(std::abs(one.points[0].z1 - cxd{0.5, 0.0}) < 1e-12);
    CHECK(std::abs(one.points[0].z2) == doctest::Approx(std::sqrt(0.75)));
  }
  SUBCASE("rotated torus samples map back into the normal form") {
    for (int i = 0; i < 20; ++i) {
      AffineFunction g = random_unit_affine();
      if (std::abs(g.f0) >= 0.9) continue;
      double s = unitary_invariant_s(g);
      double sigma = 0.3 * s;
      SolidTorus tg = make_torus(g, sigma, 1.0, 1);
      TorusMesh m = torus_sample(tg, 2, 4, 8);
      Unitary2 u = normalizing_unitary(g);
      for (const auto& z : m.points) {
        ComplexPoint2 w = u.apply(z);
        CHECK(std::abs(w.z1 - (1.0 - s)) <= sigma + 1e-10);
        CHECK(std::abs(w.norm() - 1.0) < 1e-10);
      }
    }
  }
}

TEST_CASE("empty torus rejected at construction") {
  AffineFunction f{-0.9, 1.0, 0.0};  // s = 0.1
  CHECK_THROWS_AS(make_torus(f, 0.2, 1.0, 1), Error);  // sigma >= s
  CHECK_NOTHROW(make_torus(f, 0.05, 1.0, 1));
}

TEST_CASE("torus diameter behaviour") {
  // s = 1, sigma -> 0: a neighbourhood of a great circle, diameter near 2
  AffineFunction g{0.0, 1.0, 0.0};
  SolidTorus big = make_torus(g, 1e-4, 1.0, 1);
  CHECK(torus_diameter(big) == doctest::Approx(2.0).epsilon(1e-3));

  auto t_of = [](double s, double sigma) {
    AffineFunction f{-(1.0 - s), 1.0, 0.0};
    return make_torus(f, sigma, 1.0, 1);
  };
  CHECK(torus_diameter(t_of(0.1, 0.01)) < torus_diameter(t_of(0.4, 0.01)));
  CHECK(torus_diameter(t_of(0.3, 0.01)) <= torus_diameter(t_of(0.3, 0.05)) + 1e-12);
  // core circle chord lower bound
  double s = 0.3, sigma = 0.02;
  double r2 = std::sqrt(2.0 * s - s * s);
  CHECK(torus_diameter(t_of(s, sigma)) >= 2.0 * r2 * (1.0 - 1e-6));
}
