#pragma once

#include <optional>
#include <vector>

#include "hullforge/construction.hpp"
#include "hullforge/separation.hpp"

namespace hullforge {

// Every sample of region A lies in B with at least the mesh-spacing margin.
Certificate region_inclusion(const HullRegion& a, const RegionSampler& a_sampler,
                             const HullRegion& b, const std::string& id);

struct SeparationWitness {
  std::vector<double> coefficients;  // flattened monomial table, row-major in (i,j)
  int degree_bound = 0;
  double ratio = 0.0;  // |p(z)| / max over sampled K of |p|
  std::string family;  // affine / product / monomial
};

// One-sided falsifier: a witness with ratio > 1 proves z lies outside the
// polynomial hull of the sampled set, up to the sampling of K. None is never
// evidence of membership.
std::optional<SeparationWitness> polynomial_separation(
    const ComplexPoint2& z, const std::vector<ComplexPoint2>& k_samples, int degree_bound,
    const std::vector<AffineFunction>& nearby = {});

// Re-runs a certificate from its self-contained replay record at a possibly
// different resolution. Unsupported replays are returned unchanged with a note.
Certificate reverify(const Certificate& original, double resolution_scale,
                     const std::vector<SolidTorus>& tori);

struct VerifyReport {
  std::int64_t total = 0, passed = 0, failed = 0, skipped = 0;
  std::vector<Certificate> failures;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::string worst_id;
};
VerifyReport reverify_tree(const ConstructionTree& tree, double resolution_scale);

}  // namespace hullforge
