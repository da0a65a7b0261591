#pragma once

#include <string>
#include <vector>

#include "hullforge/families.hpp"
#include "hullforge/separation.hpp"

namespace hullforge {

// Proposition 1: two families of thin tori around z1/z2 circles whose hull
// covers the scaled bidisc q(D1 x D2) through the certified-bidisc grid on
// the distinguished boundary.
struct Prop1Result {
  TorusFamily fam_f, fam_g;
  double s1 = 0.0, s2 = 0.0;
  SeparationConstants ml;  // class constants for (z1 - qR1, z2 - qR2)
  double bidisc_radius = 0.0;
  double r_prime = 1.0;
  double B_actual = 0.0;
  std::vector<Certificate> certs;
};
Prop1Result prop1_families(double R1, double R2, double q, double gamma, double eps,
                           double B, double resolution, int level, const std::string& tag);

// Proposition 2: tangent plus turned family inside a delta-slab around
// z1 = 1-s, hull covering the eps-tube of l^s inside qB.
struct Prop2Result {
  TorusFamily fam_f, fam_g;
  double t = 0.0, nu = 0.0, psi = 0.0;
  double s1 = 0.0, s2 = 0.0;
  SeparationConstants ml;
  double r_prime = 1.0;
  double w_cov = 0.0;  // covered z1 halfwidth around 1-s
  double b = 1.0;      // deep-point fraction of the bidisc radius
  double B_actual = 0.0;
  std::vector<Certificate> certs;
};
// When forced parameters are given the scans are skipped and every gate is
// replayed at exactly those values (used for template stability probes).
struct Prop2Forced {
  double t = 0.0, nu = 0.0, psi = 0.0;
  std::int64_t n = 0;
};
Prop2Result prop2_families(double s, double delta, double q, double s_upper, double eps,
                           double B, double resolution, int level, const std::string& tag,
                           const std::optional<Prop2Forced>& forced = std::nullopt);

// Proposition 3: tangent family at the maximal admissible t plus lattice of
// vertical tori; hull covers the sigma-slab inside (1-rho)B.
struct Prop3Result {
  TorusFamily tangent, lattice;
  double t = 0.0, s_star = 0.0, rho = 0.0, r_prime = 1.0, alpha = 0.0;
  SeparationConstants ml;  // uniform slab constants
  double C = 0.0, D = 0.0;
  double r_max_pxi = 0.0;  // largest |P_xi| over the lattice disc
  double B_actual = 0.0;
  std::vector<Certificate> certs;
};
Prop3Result prop3_families(double s, double sigma, double eps, double B, double resolution,
                           int level, const std::string& tag);

// Upper bound on usable sigma for proposition 3 at this s (feasibility scan).
double sigma_limit(double s);

// Largest t with footprint(t) monotone below the target; bisection on the
// rising branch of (1-t) R2^2 sqrt(2t-t^2) / R.
double solve_footprint_t(double s, double target);

// z1 band of the width-w tube of a tangent/turned member on the unit ball:
// certified [lo, hi] interval of |z1 - (1-s)| over the tube cap ball.
struct Band {
  double lo = 0.0, hi = 0.0;
  bool valid = false;
};
Band tube_z1_band(double s, double t, double nu, double width, bool on_sphere);

}  // namespace hullforge
