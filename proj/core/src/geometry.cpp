#include "hullforge/geometry.hpp"

#include <algorithm>

namespace hullforge {

const char* err_name(Err e) {
  switch (e) {
    case Err::ZeroGradient: return "ZeroGradient";
    case Err::LineMissesBall: return "LineMissesBall";
    case Err::LineMissesSphere: return "LineMissesSphere";
    case Err::EmptyTorus: return "EmptyTorus";
    case Err::EmptyRegion: return "EmptyRegion";
    case Err::CirclesIntersect: return "CirclesIntersect";
    case Err::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case Err::RadiusOutOfRange: return "RadiusOutOfRange";
    case Err::IntersectionOutsideBall: return "IntersectionOutsideBall";
    case Err::NoFeasibleCount: return "NoFeasibleCount";
    case Err::EpsTooLarge: return "EpsTooLarge";
    case Err::SpacingViabilityFailed: return "SpacingViabilityFailed";
    case Err::DisjointnessFailed: return "DisjointnessFailed";
    case Err::NoPsiFound: return "NoPsiFound";
    case Err::ParameterSearchFailed: return "ParameterSearchFailed";
    case Err::SigmaTooLarge: return "SigmaTooLarge";
    case Err::CoverSearchFailed: return "CoverSearchFailed";
    case Err::MergeCollision: return "MergeCollision";
    case Err::GateFailed: return "GateFailed";
    case Err::SearchExhausted: return "SearchExhausted";
    case Err::BadConfig: return "BadConfig";
    case Err::BadArchive: return "BadArchive";
  }
  return "Unknown";
}

AffineFunction normalize_affine(cxd f0, cxd f1, cxd f2) {
  double g = std::sqrt(std::norm(f1) + std::norm(f2));
  if (g == 0.0) throw Error(Err::ZeroGradient, "normalize_affine: zero gradient");
  return {f0 / g, f1 / g, f2 / g};
}

double unitary_invariant_s(const AffineFunction& f) {
  double d = std::abs(f.f0);
  if (d >= 1.0) throw Error(Err::LineMissesBall, "unitary_invariant_s: |f0| >= 1");
  return 1.0 - d;
}

double Unitary2::unitarity_defect() const {
  // entries of U* U - I
  cxd a = std::conj(u11) * u11 + std::conj(u21) * u21 - 1.0;
  cxd b = std::conj(u11) * u12 + std::conj(u21) * u22;
  cxd c = std::conj(u12) * u11 + std::conj(u22) * u21;
  cxd d = std::conj(u12) * u12 + std::conj(u22) * u22 - 1.0;
  return std::max(std::max(std::abs(a), std::abs(b)), std::max(std::abs(c), std::abs(d)));
}

Unitary2 compose(const Unitary2& a, const Unitary2& b) {
  return {a.u11 * b.u11 + a.u12 * b.u21, a.u11 * b.u12 + a.u12 * b.u22,
          a.u21 * b.u11 + a.u22 * b.u21, a.u21 * b.u12 + a.u22 * b.u22};
}

Unitary2 normalizing_unitary(const AffineFunction& f) {
  double d = std::abs(f.f0);
  if (d >= 1.0) throw Error(Err::LineMissesBall, "normalizing_unitary: |f0| >= 1");
  // W maps the gradient vector a = (conj f1, conj f2) to (1,0); then a phase on
  // the first coordinate moves f0 onto -(1-s).
  cxd c = (d == 0.0) ? cxd{1.0, 0.0} : -std::conj(f.f0) / d;
  return {c * f.f1, c * f.f2, -std::conj(f.f2), std::conj(f.f1)};
}

AffineFunction compose_affine(const AffineFunction& f, const Unitary2& u) {
  return {f.f0, f.f1 * u.u11 + f.f2 * u.u21, f.f1 * u.u12 + f.f2 * u.u22};
}

ComplexLine line_of(const AffineFunction& f) {
  // nearest point to the origin and a direction annihilated by the gradient
  ComplexPoint2 base{-f.f0 * std::conj(f.f1), -f.f0 * std::conj(f.f2)};
  ComplexPoint2 dir{-f.f2, f.f1};
  return {base, dir};
}

AffineFunction affine_through(const ComplexPoint2& p, const ComplexPoint2& v) {
  double n = v.norm();
  if (n == 0.0) throw Error(Err::ZeroGradient, "affine_through: zero direction");
  cxd f1 = v.z2 / n;
  cxd f2 = -v.z1 / n;
  cxd f0 = -(f1 * p.z1 + f2 * p.z2);
  return {f0, f1, f2};
}

CircleOnSphere line_circle(const AffineFunction& f, double r) {
  double d = std::abs(f.f0);
  if (d >= r) throw Error(Err::LineMissesSphere, "line_circle: |f0| >= r");
  ComplexPoint2 center{-f.f0 * std::conj(f.f1), -f.f0 * std::conj(f.f2)};
  return {center, std::sqrt(r * r - d * d)};
}

std::optional<ComplexPoint2> line_intersection(const AffineFunction& f, const AffineFunction& g) {
  cxd det = pair_determinant(f, g);
  if (std::abs(det) <= 1e-12) return std::nullopt;
  // solve f1 z1 + f2 z2 = -f0, g1 z1 + g2 z2 = -g0
  cxd z1 = (-f.f0 * g.f2 + g.f0 * f.f2) / det;
  cxd z2 = (-g.f0 * f.f1 + f.f0 * g.f1) / det;
  return ComplexPoint2{z1, z2};
}

std::optional<ComplexPoint2> line_intersection(const ComplexLine& a, const ComplexLine& b) {
  return line_intersection(affine_through(a.base, a.direction),
                           affine_through(b.base, b.direction));
}

}  // namespace hullforge
