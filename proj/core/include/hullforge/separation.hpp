#pragma once

#include <optional>
#include <vector>

#include "hullforge/certificate.hpp"
#include "hullforge/minimize.hpp"

namespace hullforge {

// Main-lemma constants for a pair of affine functions: the sublevel sets
// {|f| <= a} and {|g| <= a} are disjoint within the annulus B \ r'B, with a
// certified margin at the stated sampling resolution.
struct SeparationConstants {
  double a = 0.0;
  double r_prime = 1.0;
  double margin = 0.0;
  double resolution = 0.0;
};

// Policy: a = 0.9 * certified lower bound of M(r') where
// M(r') = inf over the annulus of max(|f|,|g|); r' scans a fixed grid
// {0.99, 0.95, 0.9, 0.8, 0.7} (hint prepended) and takes the smallest r'
// with M(r') >= 0.5 * M(first feasible). Near-degenerate pairs whose
// intersection point approaches the sphere get adaptive candidates near 1.
SeparationConstants separation_constants(const AffineFunction& f, const AffineFunction& g,
                                         std::optional<double> r_prime_hint = std::nullopt,
                                         double resolution = 1e-3);

// Uniform variant serving every vertical line z1 = 1 - xi with xi in the
// given disc at once: M = inf over annulus of max(|g|, dist(z1, disc)).
SeparationConstants separation_constants_slab(cxd slab_center, double slab_radius,
                                              const AffineFunction& g,
                                              std::optional<double> r_prime_hint,
                                              double resolution);

// Replays the product-sublevel inclusion over annulus samples and the proof
// dichotomy (|f| > a forces |g| <= eps and vice versa).
Certificate check_inclusion_eq1(const AffineFunction& f, const AffineFunction& g,
                                const SeparationConstants& c, double eps,
                                std::int64_t min_samples = 100000);

enum class RegionKind { ProductSublevel, Bidisc, CircleFamily, FullBidiscProduct };

const char* region_kind_name(RegionKind k);

// A certified-in-hull region with a decidable pointwise membership predicate.
struct HullRegion {
  RegionKind kind = RegionKind::ProductSublevel;
  double r = 1.0;  // ambient ball radius
  AffineFunction f, g;
  double bound = 0.0;       // ProductSublevel: |f g| <= bound
  ComplexPoint2 center;     // Bidisc center
  double polyradius = 0.0;  // Bidisc polyradius in the |f|,|g| coordinates
  cxd z1_center{0.0, 0.0};  // product regions: z1 disc center
  double z1_radius = 0.0;
  double z2_radius = 0.0;
  std::string chain_id;

  bool contains(const ComplexPoint2& z, double margin = 0.0) const;
};

// {|f g| <= a*eps} cap rB, certified-in-hull of the two width-eps tori on
// the r-sphere; r must lie in [c.r_prime, 1].
HullRegion corollary_hull_region(const AffineFunction& f, const AffineFunction& g,
                                 const SeparationConstants& c, double eps, double r);

// Bidisc of polyradius sqrt(a*eps) around the line intersection point.
HullRegion certified_bidisc(const AffineFunction& f, const AffineFunction& g,
                            const SeparationConstants& c, double eps);

}  // namespace hullforge
