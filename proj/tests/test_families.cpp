#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hullforge/families.hpp"
#include "hullforge/props.hpp"

using namespace hullforge;

namespace {
constexpr double kPi = 3.14159265358979323846;
std::mt19937_64 rng(909090);
std::uniform_real_distribution<double> unit(0.0, 1.0);
}  // namespace

TEST_CASE("equidistributed points band") {
  Equidistributed e = equidistributed_points(1.0, 5.0, 0.01);
  // 110 is a feasible count (2 sin(pi/110) ~ 0.05712 lies in [0.05, 0.06]);
  // the search returns the largest feasible count, also inside the band
  CHECK(2.0 * std::sin(kPi / 110.0) >= 0.05);
  CHECK(2.0 * std::sin(kPi / 110.0) <= 0.06);
  CHECK(e.count >= 110);
  CHECK(e.spacing >= 0.05);
  CHECK(e.spacing <= 0.06);
  // circumference consistency within one part in N
  CHECK(e.spacing * double(e.count) ==
        doctest::Approx(2.0 * kPi).epsilon(1.0 / double(e.count)));
  CHECK_THROWS_AS(equidistributed_points(1.0, 5.0, 0.5), Error);
}

TEST_CASE("tangency identities") {
  for (int trial = 0; trial < 100; ++trial) {
    double s = 0.05 + 0.9 * unit(rng);
    double t = 0.002 + 0.3 * unit(rng);
    std::int64_t n = 8 + (std::int64_t)(unit(rng) * 500);
    std::int64_t j = (std::int64_t)(unit(rng) * n);
    DerivedConstants d = derive_constants(s, t, 0.0);
    ComplexPoint2 p = tangent_point(s, t, n, j);
    ComplexPoint2 v = tangent_direction(s, t, n, j);
    CHECK(std::abs(hdot(v, p)) < 1e-12);
    CHECK(std::abs(v.norm() - d.R) < 1e-12);
    CHECK(std::abs(p.norm() - d.R) < 1e-12);
    // Eq. (16) / (10) identities
    CHECK(std::abs(d.R * d.R - (1.0 - (2 * t - t * t) * (2 * s - s * s))) < 1e-12);
    CHECK(std::abs(d.s1 - (1.0 - d.R)) < 1e-12);
    CHECK(std::abs(d.s1 * (1.0 + d.R) - (2 * t - t * t) * (2 * s - s * s)) < 1e-12);
    // the annihilating function vanishes on the line with unit gradient
    AffineFunction f = tangent_function(s, t, n, j);
    CHECK(std::abs(f.gradient_norm() - 1.0) < 1e-12);
    CHECK(f.modulus(p) < 1e-12);
    CHECK(f.modulus(p + v * cxd{0.3, 0.7}) < 1e-11);
    CHECK(std::abs(std::abs(f.f0) - d.R) < 1e-12);
  }
}

TEST_CASE("explicit j = 0 cancellation") {
  double s = 0.3, t = 0.05;
  DerivedConstants d = derive_constants(s, t, 0.0);
  ComplexPoint2 p = tangent_point(s, t, 16, 0), v = tangent_direction(s, t, 16, 0);
  // <v,p> = (1-t) R2 (1-s) - (1-s) R2 (1-t) = 0 exactly
  CHECK(std::abs(hdot(v, p)) == 0.0);
  CHECK(p.norm() == doctest::Approx(d.R));
}

TEST_CASE("rotation covariance of the tangent family") {
  double s = 0.35, t = 0.02;
  std::int64_t n = 24;
  for (std::int64_t j : {1, 5, 13}) {
    double phi = 2.0 * kPi * double(j) / double(n);
    AffineFunction fj = tangent_function(s, t, n, j);
    AffineFunction f0 = tangent_function(s, t, n, 0);
    for (int k = 0; k < 50; ++k) {
      ComplexPoint2 z{cxd{unit(rng), unit(rng)}, cxd{unit(rng), unit(rng)}};
      ComplexPoint2 rotated{z.z1, z.z2 * std::polar(1.0, phi)};
      CHECK(std::abs(fj.modulus(rotated) - f0.modulus(z)) < 1e-12);
    }
  }
}

TEST_CASE("turned family reductions") {
  double s = 0.3, t = 0.02;
  std::int64_t n = 32;
  SUBCASE("nu = psi = 0 reduces to the tangent family") {
    for (std::int64_t j = 0; j < n; j += 5) {
      AffineFunction a = turned_function(s, t, 0.0, 0.0, n, j);
      AffineFunction b = tangent_function(s, t, n, j);
      CHECK(std::abs(a.f0 - b.f0) < 1e-14);
      CHECK(std::abs(a.f1 - b.f1) < 1e-14);
      CHECK(std::abs(a.f2 - b.f2) < 1e-14);
    }
  }
  SUBCASE("|p*| = R for all psi") {
    DerivedConstants d = derive_constants(s, t, 0.0);
    for (double psi : {0.0, 0.1, 1.0, 3.0})
      CHECK(turned_point(s, t, psi, n, 3).norm() == doctest::Approx(d.R).epsilon(1e-13));
  }
  SUBCASE("chord length of the turn") {
    DerivedConstants d = derive_constants(s, t, 0.0);
    double psi = 0.01;
    double chord = dist(tangent_point(s, t, n, 2), turned_point(s, t, psi, n, 2));
    CHECK(chord ==
          doctest::Approx(d.R2 * (1.0 - t) * std::abs(std::polar(1.0, psi) - 1.0)));
  }
}

TEST_CASE("F function") {
  CHECK(F_function(0.0, 1.3) == 0.0);
  CHECK(F_function(kPi, 1.2) == doctest::Approx(2.0 / 2.2));
  SUBCASE("strictly increasing before Phi_Q") {
    FBounds fb = F_derivative_bounds(1.2);
    CHECK(fb.C_Q > 0.0);
    CHECK(fb.Phi_Q > 0.0);
    double prev = 0.0;
    for (int i = 1; i <= 100; ++i) {
      double phi = fb.Phi_Q * i / 100.0;
      double v = F_function(phi, 1.2);
      CHECK(v > prev);
      prev = v;
    }
    // finite-difference slopes sit inside [C_Q, 2 C_Q] on the certified range
    int n = 1000;
    for (int i = 1; i <= n; ++i) {
      double phi = fb.Phi_Q * i / n;
      double d = (F_function(phi, 1.2) - F_function(phi - fb.Phi_Q / n, 1.2)) / (fb.Phi_Q / n);
      CHECK(std::abs(d) >= fb.C_Q * 0.9);
      CHECK(std::abs(d) <= 2.0 * fb.C_Q * 1.1);
    }
  }
}

TEST_CASE("intersection formulas against the direct solve") {
  ProofParameters p;
  DerivedConstants d;
  auto setup = [&](double s, double t, double nu, std::int64_t n) {
    p = ProofParameters{};
    p.s = s;
    p.t = t;
    p.nu = nu;
    p.n_count = n;
    d = derive_constants(s, t, nu);
  };
  SUBCASE("j = k at psi = 0 gives the tangency point") {
    setup(0.3, 0.02, 0.05, 64);
    cxd zeta = intersection_zeta(7, 7, 0.0, p, d);
    CHECK(std::abs(zeta) < 1e-14);
    CHECK(intersection_norm_sq(0, 0.0, p, d) == doctest::Approx(d.R * d.R));
  }
  SUBCASE("dual computation to 1e-10 over 1000 random draws") {
    for (int trial = 0; trial < 1000; ++trial) {
      double s = 0.1 + 0.7 * unit(rng);
      double t = 0.01 + 0.25 * unit(rng);
      double nu = (0.05 + 0.9 * unit(rng)) * 0.3 * (1.0 - s);
      std::int64_t n = 8 + (std::int64_t)(unit(rng) * 400);
      setup(s, t, nu, n);
      std::int64_t j = (std::int64_t)(unit(rng) * n);
      std::int64_t k = (std::int64_t)(unit(rng) * n);
      double psi = (unit(rng) - 0.5) * 2.0 * kPi / double(n);
      AffineFunction fj = tangent_function(s, t, n, j);
      AffineFunction gk = turned_function(s, t, nu, psi, n, k);
      auto direct = line_intersection(fj, gk);
      REQUIRE(direct.has_value());
      // formula route: P = p_j + v_j zeta
      ComplexPoint2 formula =
          tangent_point(s, t, n, j) +
          tangent_direction(s, t, n, j) * intersection_zeta(j, k, psi, p, d);
      CHECK(dist(formula, *direct) < 1e-10 * (1.0 + direct->norm()));
      // Eq. (15) norm and the m-only dependence
      double nsq = intersection_norm_sq(k - j, psi, p, d);
      CHECK(std::abs(nsq - direct->norm_sq()) < 1e-10 * (1.0 + nsq));
      CHECK(std::abs(intersection_norm_sq(((k - j) % n + n) % n, psi, p, d) - nsq) <
            1e-10 * (1.0 + nsq));
      // (m, psi) -> (-m, -psi) symmetry
      CHECK(std::abs(intersection_norm_sq(j - k, -psi, p, d) - nsq) < 1e-10 * (1.0 + nsq));
    }
  }
}

TEST_CASE("lemma 2 disjointness") {
  SUBCASE("parallel prop1 family reduces to half the spacing") {
    TorusFamily fam = make_prop1_family(true, 0.6, 6.0, 1e-3, 1, "t");
    Certificate c = lemma2_disjointness(fam, 1e-3);
    CHECK(c.passed);
    double spacing = 2.0 * 0.6 * std::sin(kPi / double(fam.count));
    CHECK(c.margin == doctest::Approx(spacing / 2.0 - 2e-3).epsilon(1e-6));
  }
  SUBCASE("tangent family at moderate scale") {
    double s = 0.3, sigma = 0.05;
    double t = solve_footprint_t(s, (5.0 / 3.0) * sigma);
    CHECK(t == doctest::Approx(1.3e-2).epsilon(0.1));
    DerivedConstants d = derive_constants(s, t, 0.0);
    double eps = 1e-4;
    Equidistributed e = equidistributed_points(d.R2 * (1.0 - t), 10.0, eps);
    TorusFamily fam = make_tangent_family(s, t, e.count, eps, 1, "tan");
    Certificate c = lemma2_disjointness(fam, eps);
    CHECK(c.passed);
    CHECK(c.margin > 0.0);
    // forced failure: check the same family at a hundredfold width
    Certificate bad = lemma2_disjointness(fam, 100.0 * eps);
    CHECK_FALSE(bad.passed);
    CHECK(bad.witness.has_value());
  }
}

TEST_CASE("choose_psi returns 0 when nothing needs repair") {
  // deep tangency circle: every crossing point stays well inside the ball,
  // so no neighbourhood can reach the sphere and psi = 0 already works
  double s = 0.3, t = 0.5, nu = 0.15;
  double eps = 1e-5;
  DerivedConstants d = derive_constants(s, t, nu);
  // sanity: even the saturated crossings stay inside the unit ball
  double K = d.R2 * d.R2 * (1.0 - t) * (1.0 - t) / ((1.0 - s) * (1.0 - s));
  double fpi = F_function(3.14159265358979, d.Q);
  REQUIRE(d.R * d.R * (1.0 + K * fpi * fpi) < 1.0);
  Equidistributed e = equidistributed_points(d.R2 * (1.0 - t), 20.0, eps);
  ProofParameters p;
  p.s = s;
  p.t = t;
  p.nu = nu;
  p.n_count = e.count;
  p.eps = eps;
  PsiChoice choice = choose_psi(p, d, 2.0 * eps);
  CHECK(choice.psi == 0.0);
  CHECK(choice.gate.passed);
}

TEST_CASE("lemma 3 pipeline above the empirical spacing threshold") {
  // B = 40 sits safely above the measured validity threshold B' ~ 14 for
  // these (s, t, nu); the pinned desk instance B = 10 lies below it and is
  // exercised (and expected red) by the acceptance suite
  double s = 0.3, sigma = 0.05;
  double t = solve_footprint_t(s, (5.0 / 3.0) * sigma);
  double nu = s / 10.0;
  double B = 40.0;
  DerivedConstants d = derive_constants(s, t, nu);
  double eps = -1.0;
  PsiChoice choice;
  for (int k = 0; k < 12; ++k) {
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
      break;
    } catch (const Error&) {
      continue;
    }
  }
  REQUIRE(eps > 0.0);
  CHECK(choice.gate.passed);
  CHECK(choice.gate.margin > 0.0);
  // psi stays on the eps scale
  CHECK(std::abs(choice.psi) < 100.0 * eps);
}
