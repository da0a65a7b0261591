#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hullforge/geometry.hpp"

namespace hullforge {

// Sphere slice {|f| <= sigma} cap (r * sphere). Nonempty solid torus needs
// sigma < s - (1 - r); on the unit sphere that is the usual sigma < s.
struct SolidTorus {
  AffineFunction f;
  double sigma = 0.0;
  double r = 1.0;
  double s = 1.0;  // 1 - |f0|, stored redundantly and revalidated on load
  int level = 1;
  std::optional<std::int64_t> parent_id;
  std::int64_t id = -1;
};

SolidTorus make_torus(const AffineFunction& f, double sigma, double r, int level,
                      std::optional<std::int64_t> parent_id = std::nullopt,
                      std::int64_t id = -1);

struct TorusMesh {
  std::vector<ComplexPoint2> points;
  double covering_radius = 0.0;  // every torus point lies within this of a sample
};

// Mesh in normal-form coordinates z1 = (1-s) + rho e^{i theta},
// z2 = sqrt(r^2-|z1|^2) e^{i phi}, mapped back through the inverse
// normalizing unitary. rho grid includes 0 (the core circle).
TorusMesh torus_sample(const SolidTorus& t, int n_radial, int n_tube, int n_fiber);

// Supremum of pairwise distances over a boundary-heavy mesh.
double torus_diameter(const SolidTorus& t);

// Membership margin: min(sigma - |f(z)|, tol - ||z|-r|) style check.
bool torus_contains(const SolidTorus& t, const ComplexPoint2& z, double tol);

}  // namespace hullforge
