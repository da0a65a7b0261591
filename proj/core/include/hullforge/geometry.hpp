#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace hullforge {

using cxd = std::complex<double>;

enum class Err {
  ZeroGradient,
  LineMissesBall,
  LineMissesSphere,
  EmptyTorus,
  EmptyRegion,
  CirclesIntersect,
  ResolutionTooCoarse,
  RadiusOutOfRange,
  IntersectionOutsideBall,
  NoFeasibleCount,
  EpsTooLarge,
  SpacingViabilityFailed,
  DisjointnessFailed,
  NoPsiFound,
  ParameterSearchFailed,
  SigmaTooLarge,
  CoverSearchFailed,
  MergeCollision,
  GateFailed,
  SearchExhausted,
  BadConfig,
  BadArchive,
};

const char* err_name(Err e);

// Domain error with an optional witness point (flattened to 4 reals).
class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

struct ComplexPoint2 {
  cxd z1{0.0, 0.0};
  cxd z2{0.0, 0.0};

  double norm_sq() const { return std::norm(z1) + std::norm(z2); }
  double norm() const { return std::sqrt(norm_sq()); }

  ComplexPoint2 operator+(const ComplexPoint2& o) const { return {z1 + o.z1, z2 + o.z2}; }
  ComplexPoint2 operator-(const ComplexPoint2& o) const { return {z1 - o.z1, z2 - o.z2}; }
  ComplexPoint2 operator*(cxd c) const { return {c * z1, c * z2}; }
  ComplexPoint2 operator*(double c) const { return {c * z1, c * z2}; }
};

inline double dist(const ComplexPoint2& a, const ComplexPoint2& b) { return (a - b).norm(); }

// Hermitian inner product <u,v> = u1*conj(v1) + u2*conj(v2).
inline cxd hdot(const ComplexPoint2& u, const ComplexPoint2& v) {
  return u.z1 * std::conj(v.z1) + u.z2 * std::conj(v.z2);
}

// f(z) = f0 + f1*z1 + f2*z2 with |f1|^2 + |f2|^2 = 1.
struct AffineFunction {
  cxd f0{0.0, 0.0};
  cxd f1{1.0, 0.0};
  cxd f2{0.0, 0.0};

  cxd operator()(const ComplexPoint2& z) const { return f0 + f1 * z.z1 + f2 * z.z2; }
  double modulus(const ComplexPoint2& z) const { return std::abs((*this)(z)); }
  double gradient_norm() const { return std::sqrt(std::norm(f1) + std::norm(f2)); }
};

// Rescales (f0,f1,f2) so the gradient has norm one; the zero set is unchanged.
AffineFunction normalize_affine(cxd f0, cxd f1, cxd f2);

// s = 1 - |f0|, the unitary invariant of |f| (requires |f0| < 1).
double unitary_invariant_s(const AffineFunction& f);

struct Unitary2 {
  cxd u11{1.0, 0.0}, u12{0.0, 0.0};
  cxd u21{0.0, 0.0}, u22{1.0, 0.0};

  ComplexPoint2 apply(const ComplexPoint2& z) const {
    return {u11 * z.z1 + u12 * z.z2, u21 * z.z1 + u22 * z.z2};
  }
  Unitary2 adjoint() const {
    return {std::conj(u11), std::conj(u21), std::conj(u12), std::conj(u22)};
  }
  ComplexPoint2 apply_inverse(const ComplexPoint2& z) const { return adjoint().apply(z); }
  // max |U*Uz - z| style residual, used by validity checks
  double unitarity_defect() const;
};

Unitary2 compose(const Unitary2& a, const Unitary2& b);  // (a*b)(z) = a(b(z))

// U with |f(U^{-1} w)| = |w1 - (1-s)| for all w, s = unitary_invariant_s(f).
Unitary2 normalizing_unitary(const AffineFunction& f);

// Coefficients of f o U, i.e. (f o U)(z) = f(U z). Unit gradient is preserved.
AffineFunction compose_affine(const AffineFunction& f, const Unitary2& u);

struct ComplexLine {
  ComplexPoint2 base;       // point on the line (nearest to origin when built from f)
  ComplexPoint2 direction;  // nonzero; f1*d1 + f2*d2 = 0 for the owning f

  ComplexPoint2 at(cxd zeta) const { return base + direction * zeta; }
};

ComplexLine line_of(const AffineFunction& f);

// Annihilating unit-gradient function of the line through p with direction v.
AffineFunction affine_through(const ComplexPoint2& p, const ComplexPoint2& v);

struct CircleOnSphere {
  ComplexPoint2 center;  // nearest point of the line to the origin
  double radius = 0.0;
};

// The circle l_f cap (r * sphere); requires |f0| < r.
CircleOnSphere line_circle(const AffineFunction& f, double r);

// Intersection point of two lines, or nullopt when directions are complex-proportional.
std::optional<ComplexPoint2> line_intersection(const ComplexLine& a, const ComplexLine& b);
std::optional<ComplexPoint2> line_intersection(const AffineFunction& f, const AffineFunction& g);

// det [[f1,f2],[g1,g2]]; zero iff gradients are complex-proportional.
inline cxd pair_determinant(const AffineFunction& f, const AffineFunction& g) {
  return f.f1 * g.f2 - f.f2 * g.f1;
}

// Numeric slack: the fixed 1e-9-of-scale policy plus a floating point floor
// tied to the coordinate scale of the operands (unit ball problems).
inline double slack(double problem_scale, double coordinate_scale = 1.0) {
  const double kEps = 2.220446049250313e-16;
  double s = 1e-9 * std::abs(problem_scale);
  double floor = 64.0 * kEps * std::max(1.0, std::abs(coordinate_scale));
  return std::max(s, floor);
}

}  // namespace hullforge
