#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hullforge/certificate.hpp"
#include "hullforge/minimize.hpp"
#include "hullforge/separation.hpp"
#include "hullforge/torus.hpp"

namespace hullforge {

struct ProofParameters {
  double s = 0.0;
  double t = 0.0;
  std::int64_t n_count = 0;  // the number of equidistributed points
  double eps = 0.0;
  double psi = 0.0;
  double nu = 0.0;
  double B = 10.0;
  double sigma = 0.0;
  double alpha = 0.0;
  double delta = 0.0;
  double q = 0.0;
  double gamma = 0.0;
};

struct DerivedConstants {
  double R = 1.0;       // sphere radius of the tangency circle C_t
  double R2 = 0.0;      // radius of l^s cap dB^2
  double Q = 1.0;       // (1-s+nu)/(1-s)
  double s1 = 0.0;      // 1 - R, in the cancellation-free form
  double s2 = 0.0;      // invariant of the turned family
  double s_star = 0.0;  // tangent-family invariant in the maximal-t setting
  double a = 0.0;
  double r_prime = 1.0;
  double A = 0.0;        // tube slice radius on l^s per unit width
  double A_prime = 0.0;  // crossing neighbourhood estimate per unit width
  double B_prime = 0.0;  // empirical validity threshold when detected
  double C_Q = 0.0;
  double Phi_Q = 0.0;
  double rho = 0.0;
  double b = 1.0;
  double C = 0.0;
  double D = 0.0;
};

DerivedConstants derive_constants(double s, double t, double nu);

// (1-t) R2^2 sqrt(2t-t^2) / R: the |z1-(1-s)| value on l_j cap dB^2.
double tangent_footprint(double s, double t);

enum class FamilyKind { Prop1Z1, Prop1Z2, Tangent, Turned, Lattice };
const char* family_kind_name(FamilyKind k);

// A family of solid tori generated by one parametric rule. Members are
// reproducible by index; the torus list is only materialized for small counts.
struct TorusFamily {
  FamilyKind kind = FamilyKind::Tangent;
  std::string family_id;
  ProofParameters params;
  DerivedConstants derived;
  double width = 0.0;  // the eps of T_j(eps)
  int level = 1;
  std::int64_t count = 0;
  double circle_radius = 0.0;     // Prop1 kinds: |zeta^j| = q R_i
  std::vector<cxd> lattice;       // Lattice kind: the zeta_k
  std::vector<SolidTorus> tori;   // materialized members (may be empty)
  std::vector<ComplexLine> lines;
  std::vector<ComplexPoint2> points;
  std::vector<Certificate> certificates;
};

constexpr std::int64_t kMaterializeLimit = 8192;

// Member accessors by index (valid for any 0 <= m < count).
AffineFunction family_member(const TorusFamily& fam, std::int64_t m);
ComplexPoint2 family_point(const TorusFamily& fam, std::int64_t m);

struct Equidistributed {
  std::vector<cxd> points;
  std::int64_t count = 0;
  double spacing = 0.0;  // chord distance of nearest points, in [B eps, (B+1) eps]
};
Equidistributed equidistributed_points(double radius, double B, double eps);

// Tangent / turned complex line families through equidistributed points of C_t.
ComplexPoint2 tangent_point(double s, double t, std::int64_t n, std::int64_t j);
ComplexPoint2 tangent_direction(double s, double t, std::int64_t n, std::int64_t j);
AffineFunction tangent_function(double s, double t, std::int64_t n, std::int64_t j);
ComplexPoint2 turned_point(double s, double t, double psi, std::int64_t n, std::int64_t j);
ComplexPoint2 turned_direction(double s, double t, double nu, double psi, std::int64_t n,
                               std::int64_t j);
AffineFunction turned_function(double s, double t, double nu, double psi, std::int64_t n,
                               std::int64_t j);

struct LineFamily {
  std::vector<ComplexPoint2> points;
  std::vector<ComplexPoint2> directions;
  std::vector<AffineFunction> functions;
};
LineFamily tangent_line_family(double s, double t, std::int64_t n_count);
LineFamily turned_line_family(double s, double t, double psi, double nu,
                              std::int64_t n_count);

// F(phi) = |1 - e^{i phi}| / |1 - Q e^{i phi}| and finite-difference slope
// bounds 0 < C_Q <= |F'| <= 2 C_Q on (0, Phi_Q].
double F_function(double phi, double Q);
struct FBounds {
  double C_Q = 0.0;
  double Phi_Q = 0.0;
};
FBounds F_derivative_bounds(double Q);

cxd intersection_zeta(std::int64_t j, std::int64_t k, double psi, const ProofParameters& p,
                      const DerivedConstants& d);
double intersection_norm_sq(std::int64_t m, double psi, const ProofParameters& p,
                            const DerivedConstants& d);

// Family builders (normal-form coordinates; width = the eps of T(eps)).
TorusFamily make_tangent_family(double s, double t, std::int64_t n, double eps, int level,
                                std::string id);
TorusFamily make_turned_family(double s, double t, double nu, double psi, std::int64_t n,
                               double eps, int level, std::string id);
TorusFamily make_prop1_family(bool z1_side, double circle_radius, double B, double eps,
                              int level, std::string id);
TorusFamily make_lattice_family(double s, double sigma, double alpha, double eps, int level,
                                std::string id);
std::vector<cxd> lattice_points(double s, double sigma, double alpha);
std::int64_t lattice_count(double s, double sigma, double alpha);
struct LatticeExtremes {
  double s_min = 0.0, s_max = 0.0;
};
LatticeExtremes lattice_extremes(double s, double sigma, double alpha);
cxd lattice_member(const TorusFamily& fam, std::int64_t idx);

// Pairwise tube disjointness at the doubled width for one family: exact
// crossing-point arithmetic covers every pair beyond a small near window,
// which is then settled pair by pair (interval certificate, descent, and
// branch-and-bound when the scale permits).
Certificate lemma2_disjointness(const TorusFamily& fam, double eps);

// Cross-family torus disjointness between a tangent and a turned family.
Certificate cross_family_disjointness(const TorusFamily& fam_f, const TorusFamily& fam_g,
                                      double eps);

// Exact |z|^2 interval certificate for one pair of tori on the unit sphere.
std::optional<Certificate> pair_spread_certificate(const AffineFunction& f, double wf,
                                                   const AffineFunction& g, double wg,
                                                   const std::string& id);

// Full pair certificate (spread interval, descent falsifier, budgeted
// branch-and-bound) for two tori of the given tube width on the unit sphere.
Certificate pair_disjointness_on_sphere(const AffineFunction& f, const AffineFunction& g,
                                        double width, const std::string& id);

struct PsiChoice {
  double psi = 0.0;
  double tau = 0.0;       // neighbourhood threshold that replaces A'
  double min_gap = 0.0;   // min over m of ||P_{0,m}(psi)|^2 - 1|
  Certificate gate;       // the direct pairwise torus-disjointness certificate
};

// Lemma 3: pick psi with |psi| <= 2 pi / N so that all cross-family tori at
// the given tube width are pairwise disjoint. Throws NoPsiFound.
PsiChoice choose_psi(const ProofParameters& params, const DerivedConstants& derived,
                     double tube_width);

}  // namespace hullforge
