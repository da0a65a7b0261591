#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hullforge/certificate.hpp"
#include "hullforge/geometry.hpp"
#include "hullforge/samplers.hpp"

namespace hullforge {

// Objective on a sphere r*dB^2 written in the adapted frame of an anchor
// gradient: z = alpha*a + beta*a_perp, |alpha|^2 + |beta|^2 = r^2. The anchor
// term depends only on alpha; the second term is an affine modulus whose
// fiber phase is minimized out exactly. Both terms are 1-Lipschitz on C^2.
struct SphereObjective {
  // anchor term: |f0 + alpha|, or for slabs max(0, |alpha - slab_center| - slab_radius)
  bool slab = false;
  cxd f0{0.0, 0.0};
  cxd slab_center{0.0, 0.0};
  double slab_radius = 0.0;
  // second term: | |g0 + mu*alpha| - |kappa|*|beta| |
  cxd g0{0.0, 0.0};
  cxd mu{0.0, 0.0};
  double abs_kappa = 0.0;
  // frame vectors for mapping parameters back to C^2
  ComplexPoint2 a{{1.0, 0.0}, {0.0, 0.0}};
  ComplexPoint2 a_perp{{0.0, 0.0}, {1.0, 0.0}};

  double eval(double r, double theta, double phi) const;
  ComplexPoint2 point_at(double r, double theta, double phi) const;
};

SphereObjective pair_objective(const AffineFunction& f, const AffineFunction& g);
// max(dist(z1, disc(center,radius)), |g|): anchor frame is the z1 axis.
SphereObjective slab_objective(cxd slab_center, double slab_radius, const AffineFunction& g);

struct BBResult {
  double lower = 0.0;          // certified: true minimum >= lower
  double upper = 0.0;          // value attained at witness
  ComplexPoint2 witness;       // best sample found
  std::int64_t evals = 0;
  bool conclusive = true;      // false when budgets stopped refinement
};

struct BBOptions {
  std::optional<double> pass_target;  // stop early once lower > target
  std::optional<double> fail_below;   // stop once a sample < fail_below is found
  double tol = 1e-4;                  // estimate mode: refine until upper-lower <= tol
  std::int64_t max_evals = 4'000'000;
  double min_box_width = 1e-12;       // radians
};

// Certified minimum of a SphereObjective over the sphere of radius r.
BBResult bb_min_on_sphere(const SphereObjective& obj, double r, const BBOptions& opts);

// Certified minimum of max(|f|,|g|) over a sphere / closed ball / closed annulus.
// Ball and annulus reduce through convexity: the only zero of the pair is the
// line intersection point, so constrained minima sit on boundary spheres
// unless that point lies in the region.
BBResult pair_min_on_sphere(const AffineFunction& f, const AffineFunction& g, double r,
                            const BBOptions& opts);
BBResult pair_min_on_ball(const AffineFunction& f, const AffineFunction& g, double r,
                          const BBOptions& opts);
BBResult pair_min_on_annulus(const AffineFunction& f, const AffineFunction& g, double r_lo,
                             const BBOptions& opts);

// min over the annulus of max(|g|, dist(z1, disc)): the uniform main-lemma
// bound that serves a whole disc of vertical lines at once.
BBResult slab_min_on_annulus(cxd slab_center, double slab_radius, const AffineFunction& g,
                             double r_lo, const BBOptions& opts);

// Grid-certified minimum of max_i |funcs_i| over a sampled region.
// bound = (min over samples) - covering_radius. Throws EmptyRegion and
// ResolutionTooCoarse per the certificate contract.
struct CertifiedMin {
  double bound = 0.0;
  double min_sample = 0.0;
  ComplexPoint2 argmin;
  std::int64_t sample_count = 0;
  double resolution = 0.0;
};
CertifiedMin certified_min(const std::vector<AffineFunction>& funcs,
                           const RegionSampler& region);

// Projected subgradient descent for max(|f|,|g|) over the closed ball, from
// 16 deterministic starts. Returns best value and location (upper bound path).
struct DescentResult {
  double value = 0.0;
  ComplexPoint2 argmin;
};
DescentResult convex_min_max_moduli(const AffineFunction& f, const AffineFunction& g,
                                    double ball_radius);

}  // namespace hullforge
