#pragma once

#include <cmath>
#include <cstdint>
#include <functional>

#include "hullforge/geometry.hpp"

namespace hullforge {

// Point generators with a known covering radius: every point of the region
// lies within covering_radius of some emitted sample.
struct RegionSampler {
  std::string name;
  double covering_radius = 0.0;
  std::function<void(const std::function<void(const ComplexPoint2&)>&)> for_each;
};

// Sphere r*dB^2 via (theta, phi, chi) torus coordinates.
RegionSampler sphere_sampler(double r, double h);

// Closed annulus {r_lo <= |z| <= r_hi}: radial shells of sphere samplers.
RegionSampler annulus_sampler(double r_lo, double r_hi, double h);

// Annulus sampler sized to emit roughly target_count points.
RegionSampler annulus_sampler_by_count(double r_lo, double r_hi, std::int64_t target_count);

// Closed ball r*B^2: 4-d grid intersected with the ball, outside nodes
// projected onto the boundary (projection keeps the covering radius).
RegionSampler ball_sampler(double r, double h);

}  // namespace hullforge
