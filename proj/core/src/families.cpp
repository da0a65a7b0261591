#include "hullforge/families.hpp"

#include <algorithm>
#include <cmath>

namespace hullforge {

namespace {
constexpr double kPi = 3.14159265358979323846;

double wrap_pi(double x) {
  x = std::fmod(x + kPi, 2.0 * kPi);
  if (x < 0) x += 2.0 * kPi;
  return x - kPi;
}
}  // namespace

const char* family_kind_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::Prop1Z1: return "prop1_z1";
    case FamilyKind::Prop1Z2: return "prop1_z2";
    case FamilyKind::Tangent: return "tangent";
    case FamilyKind::Turned: return "turned";
    case FamilyKind::Lattice: return "lattice";
  }
  return "unknown";
}

DerivedConstants derive_constants(double s, double t, double nu) {
  DerivedConstants d;
  double r2sq = 2.0 * s - s * s;
  d.R2 = std::sqrt(r2sq);
  double one_minus_rsq = (2.0 * t - t * t) * r2sq;
  d.R = std::sqrt(std::max(0.0, 1.0 - one_minus_rsq));
  d.s1 = one_minus_rsq / (1.0 + d.R);  // 1 - R without cancellation
  double u = 1.0 - s;
  d.Q = (u + nu) / u;
  // s2 = 1 - |g0| in a cancellation-free form
  double rsq = 1.0 - one_minus_rsq;
  double W = std::sqrt(rsq + 2.0 * nu * u + nu * nu);
  double num = one_minus_rsq * (rsq + 2.0 * nu * u) + nu * nu * (1.0 - u * u);
  d.s2 = num / (W * (W + rsq + nu * u));
  d.A = d.R / ((1.0 - t) * d.R2);  // slice radius on l^s per unit tube width
  d.D = d.R / ((1.0 - t) * d.R2);
  // C_Q and Phi_Q gate heuristics only; F_derivative_bounds fills them on demand
  return d;
}

double tangent_footprint(double s, double t) {
  DerivedConstants d = derive_constants(s, t, 0.0);
  return (1.0 - t) * d.R2 * d.R2 * std::sqrt(2.0 * t - t * t) / d.R;
}

Equidistributed equidistributed_points(double radius, double B, double eps) {
  double x = B * eps / (2.0 * radius);
  if (x > 1.0) throw Error(Err::NoFeasibleCount, "equidistributed_points: band exceeds diameter");
  std::int64_t n_hi = (std::int64_t)std::floor(kPi / std::asin(x));
  for (std::int64_t n = n_hi; n >= std::max<std::int64_t>(3, n_hi - 2); --n) {
    double spacing = 2.0 * radius * std::sin(kPi / double(n));
    if (spacing >= B * eps && spacing <= (B + 1.0) * eps) {
      Equidistributed e;
      e.count = n;
      e.spacing = spacing;
      if (n <= kMaterializeLimit) {
        e.points.reserve((size_t)n);
        for (std::int64_t j = 0; j < n; ++j)
          e.points.push_back(std::polar(radius, 2.0 * kPi * double(j) / double(n)));
      }
      return e;
    }
  }
  throw Error(Err::NoFeasibleCount, "equidistributed_points: no integer count in band");
}

ComplexPoint2 tangent_point(double s, double t, std::int64_t n, std::int64_t j) {
  DerivedConstants d = derive_constants(s, t, 0.0);
  double phi = 2.0 * kPi * double(j) / double(n);
  return {cxd{1.0 - s, 0.0}, std::polar(d.R2 * (1.0 - t), phi)};
}

ComplexPoint2 tangent_direction(double s, double t, std::int64_t n, std::int64_t j) {
  DerivedConstants d = derive_constants(s, t, 0.0);
  double phi = 2.0 * kPi * double(j) / double(n);
  return {cxd{(1.0 - t) * d.R2, 0.0}, -std::polar(1.0 - s, phi)};
}

AffineFunction tangent_function(double s, double t, std::int64_t n, std::int64_t j) {
  DerivedConstants d = derive_constants(s, t, 0.0);
  double phi = 2.0 * kPi * double(j) / double(n);
  cxd e = std::polar(1.0, phi);
  return {e * d.R, -e * ((1.0 - s) / d.R), cxd{-(1.0 - t) * d.R2 / d.R, 0.0}};
}

ComplexPoint2 turned_point(double s, double t, double psi, std::int64_t n, std::int64_t j) {
  DerivedConstants d = derive_constants(s, t, 0.0);
  double phi = 2.0 * kPi * double(j) / double(n) + psi;
  return {cxd{1.0 - s, 0.0}, std::polar(d.R2 * (1.0 - t), phi)};
}

ComplexPoint2 turned_direction(double s, double t, double nu, double psi, std::int64_t n,
                               std::int64_t j) {
  DerivedConstants d = derive_constants(s, t, 0.0);
  double phi = 2.0 * kPi * double(j) / double(n) + psi;
  return {cxd{(1.0 - t) * d.R2, 0.0}, -std::polar(1.0 - s + nu, phi)};
}

AffineFunction turned_function(double s, double t, double nu, double psi, std::int64_t n,
                               std::int64_t j) {
  DerivedConstants d = derive_constants(s, t, nu);
  double phi = 2.0 * kPi * double(j) / double(n) + psi;
  cxd e = std::polar(1.0, phi);
  double u = 1.0 - s;
  double W = std::sqrt((1.0 - t) * (1.0 - t) * d.R2 * d.R2 + (u + nu) * (u + nu));
  cxd g1 = -e * ((u + nu) / W);
  cxd g2 = cxd{-(1.0 - t) * d.R2 / W, 0.0};
  cxd g0 = e * (((u + nu) * u + d.R2 * d.R2 * (1.0 - t) * (1.0 - t)) / W);
  return {g0, g1, g2};
}

LineFamily tangent_line_family(double s, double t, std::int64_t n_count) {
  LineFamily lf;
  for (std::int64_t j = 0; j < n_count; ++j) {
    lf.points.push_back(tangent_point(s, t, n_count, j));
    lf.directions.push_back(tangent_direction(s, t, n_count, j));
    lf.functions.push_back(tangent_function(s, t, n_count, j));
  }
  return lf;
}

LineFamily turned_line_family(double s, double t, double psi, double nu,
                              std::int64_t n_count) {
  LineFamily lf;
  for (std::int64_t j = 0; j < n_count; ++j) {
    lf.points.push_back(turned_point(s, t, psi, n_count, j));
    lf.directions.push_back(turned_direction(s, t, nu, psi, n_count, j));
    lf.functions.push_back(turned_function(s, t, nu, psi, n_count, j));
  }
  return lf;
}

double F_function(double phi, double Q) {
  cxd e = std::polar(1.0, phi);
  double num = std::abs(1.0 - e);
  double den = std::abs(1.0 - Q * e);
  if (den == 0.0) return 1.0;  // Q = 1, phi = 0 limit
  return num / den;
}

FBounds F_derivative_bounds(double Q) {
  const int n = 10000;
  double h = kPi / double(n);
  FBounds best;
  double run_min = std::numeric_limits<double>::infinity();
  double run_max = 0.0;
  for (int i = 1; i <= n; ++i) {
    double phi = i * h;
    double d = (F_function(phi, Q) - F_function(phi - h, Q)) / h;
    d = std::abs(d);
    run_min = std::min(run_min, d);
    run_max = std::max(run_max, d);
    if (run_min > 0.0 && run_max <= 2.0 * run_min) {
      best.C_Q = run_min;
      best.Phi_Q = phi;
    }
  }
  return best;
}

cxd intersection_zeta(std::int64_t j, std::int64_t k, double psi, const ProofParameters& p,
                      const DerivedConstants& d) {
  double delta = 2.0 * kPi * double(k - j) / double(p.n_count) + psi;
  cxd e = std::polar(1.0, delta);
  cxd den = 1.0 - d.Q * e;
  if (std::abs(den) == 0.0) return cxd{0.0, 0.0};
  return (d.R2 * (1.0 - p.t) / (1.0 - p.s)) * (1.0 - e) / den;
}

double intersection_norm_sq(std::int64_t m, double psi, const ProofParameters& p,
                            const DerivedConstants& d) {
  double delta = 2.0 * kPi * double(m) / double(p.n_count) + psi;
  double F = F_function(delta, d.Q);
  double K = d.R2 * d.R2 * (1.0 - p.t) * (1.0 - p.t) / ((1.0 - p.s) * (1.0 - p.s));
  return d.R * d.R * (1.0 + K * F * F);
}

cxd lattice_member(const TorusFamily& fam, std::int64_t idx) {
  if (!fam.lattice.empty()) return fam.lattice[(size_t)idx];
  double s = fam.params.s, sigma = fam.params.sigma, alpha = fam.params.alpha;
  double rad = (4.0 / 3.0) * sigma;
  std::int64_t span = (std::int64_t)std::floor(rad / alpha);
  std::int64_t seen = 0;
  for (std::int64_t m = -span; m <= span; ++m) {
    double rem = rad * rad - double(m) * double(m) * alpha * alpha;
    if (rem < 0.0) continue;
    std::int64_t nmax = (std::int64_t)std::floor(std::sqrt(rem) / alpha);
    std::int64_t cols = 2 * nmax + 1;
    if (idx < seen + cols) {
      std::int64_t n = (idx - seen) - nmax;
      return s + alpha * cxd{double(m), double(n)};
    }
    seen += cols;
  }
  throw Error(Err::BadConfig, "lattice_member: index out of range");
}

AffineFunction family_member(const TorusFamily& fam, std::int64_t m) {
  switch (fam.kind) {
    case FamilyKind::Prop1Z1: {
      cxd zeta = std::polar(fam.circle_radius, 2.0 * kPi * double(m) / double(fam.count));
      return {-zeta, cxd{1.0, 0.0}, cxd{0.0, 0.0}};
    }
    case FamilyKind::Prop1Z2: {
      cxd zeta = std::polar(fam.circle_radius, 2.0 * kPi * double(m) / double(fam.count));
      return {-zeta, cxd{0.0, 0.0}, cxd{1.0, 0.0}};
    }
    case FamilyKind::Tangent:
      return tangent_function(fam.params.s, fam.params.t, fam.count, m);
    case FamilyKind::Turned:
      return turned_function(fam.params.s, fam.params.t, fam.params.nu, fam.params.psi,
                             fam.count, m);
    case FamilyKind::Lattice:
      return {-(1.0 - lattice_member(fam, m)), cxd{1.0, 0.0}, cxd{0.0, 0.0}};
  }
  throw Error(Err::BadConfig, "family_member: unknown kind");
}

ComplexPoint2 family_point(const TorusFamily& fam, std::int64_t m) {
  switch (fam.kind) {
    case FamilyKind::Prop1Z1:
      return {std::polar(fam.circle_radius, 2.0 * kPi * double(m) / double(fam.count)),
              cxd{0.0, 0.0}};
    case FamilyKind::Prop1Z2:
      return {cxd{0.0, 0.0},
              std::polar(fam.circle_radius, 2.0 * kPi * double(m) / double(fam.count))};
    case FamilyKind::Tangent:
      return tangent_point(fam.params.s, fam.params.t, fam.count, m);
    case FamilyKind::Turned:
      return turned_point(fam.params.s, fam.params.t, fam.params.psi, fam.count, m);
    case FamilyKind::Lattice:
      return {1.0 - lattice_member(fam, m), cxd{0.0, 0.0}};
  }
  throw Error(Err::BadConfig, "family_point: unknown kind");
}

namespace {

void materialize(TorusFamily& fam) {
  if (fam.count > kMaterializeLimit) return;
  fam.tori.reserve((size_t)fam.count);
  for (std::int64_t m = 0; m < fam.count; ++m) {
    AffineFunction f = family_member(fam, m);
    fam.tori.push_back(make_torus(f, fam.width, 1.0, fam.level, std::nullopt, m));
    fam.lines.push_back(line_of(f));
    fam.points.push_back(family_point(fam, m));
  }
}

}  // namespace

TorusFamily make_tangent_family(double s, double t, std::int64_t n, double eps, int level,
                                std::string id) {
  TorusFamily fam;
  fam.kind = FamilyKind::Tangent;
  fam.family_id = std::move(id);
  fam.params.s = s;
  fam.params.t = t;
  fam.params.n_count = n;
  fam.params.eps = eps;
  fam.derived = derive_constants(s, t, 0.0);
  fam.width = eps;
  fam.level = level;
  fam.count = n;
  materialize(fam);
  return fam;
}

TorusFamily make_turned_family(double s, double t, double nu, double psi, std::int64_t n,
                               double eps, int level, std::string id) {
  TorusFamily fam;
  fam.kind = FamilyKind::Turned;
  fam.family_id = std::move(id);
  fam.params.s = s;
  fam.params.t = t;
  fam.params.nu = nu;
  fam.params.psi = psi;
  fam.params.n_count = n;
  fam.params.eps = eps;
  fam.derived = derive_constants(s, t, nu);
  fam.width = eps;
  fam.level = level;
  fam.count = n;
  materialize(fam);
  return fam;
}

TorusFamily make_prop1_family(bool z1_side, double circle_radius, double B, double eps,
                              int level, std::string id) {
  Equidistributed e = equidistributed_points(circle_radius, B, eps);
  TorusFamily fam;
  fam.kind = z1_side ? FamilyKind::Prop1Z1 : FamilyKind::Prop1Z2;
  fam.family_id = std::move(id);
  fam.params.B = B;
  fam.params.eps = eps;
  fam.width = eps;
  fam.level = level;
  fam.count = e.count;
  fam.circle_radius = circle_radius;
  materialize(fam);
  return fam;
}

std::vector<cxd> lattice_points(double s, double sigma, double alpha) {
  std::vector<cxd> pts;
  double rad = (4.0 / 3.0) * sigma;
  std::int64_t span = (std::int64_t)std::floor(rad / alpha);
  for (std::int64_t m = -span; m <= span; ++m)
    for (std::int64_t n = -span; n <= span; ++n) {
      cxd zeta = s + alpha * cxd{double(m), double(n)};
      if (std::abs(zeta - s) <= rad) pts.push_back(zeta);
    }
  return pts;
}

TorusFamily make_lattice_family(double s, double sigma, double alpha, double eps, int level,
                                std::string id) {
  TorusFamily fam;
  fam.kind = FamilyKind::Lattice;
  fam.family_id = std::move(id);
  fam.params.s = s;
  fam.params.sigma = sigma;
  fam.params.alpha = alpha;
  fam.params.eps = eps;
  fam.width = eps;
  fam.level = level;
  fam.count = lattice_count(s, sigma, alpha);
  if (fam.count <= kMaterializeLimit) {
    fam.lattice = lattice_points(s, sigma, alpha);
    materialize(fam);
  }
  return fam;
}

std::int64_t lattice_count(double s, double sigma, double alpha) {
  std::int64_t count = 0;
  double rad = (4.0 / 3.0) * sigma;
  std::int64_t span = (std::int64_t)std::floor(rad / alpha);
  for (std::int64_t m = -span; m <= span; ++m) {
    // |m + i n| alpha <= rad: n range by the circle equation
    double rem = rad * rad - double(m) * double(m) * alpha * alpha;
    if (rem < 0.0) continue;
    count += 2 * (std::int64_t)std::floor(std::sqrt(rem) / alpha) + 1;
  }
  return count;
}

LatticeExtremes lattice_extremes(double s, double sigma, double alpha) {
  LatticeExtremes ext;
  ext.s_min = std::numeric_limits<double>::infinity();
  ext.s_max = -std::numeric_limits<double>::infinity();
  double rad = (4.0 / 3.0) * sigma;
  std::int64_t span = (std::int64_t)std::floor(rad / alpha);
  for (std::int64_t m = -span; m <= span; ++m) {
    double rem = rad * rad - double(m) * double(m) * alpha * alpha;
    if (rem < 0.0) continue;
    std::int64_t nmax = (std::int64_t)std::floor(std::sqrt(rem) / alpha);
    // extreme |1 - zeta| on a vertical lattice segment occurs at its ends or
    // at n = 0, so three probes per column suffice
    for (std::int64_t n : {std::int64_t(0), nmax, -nmax}) {
      cxd zeta = s + alpha * cxd{double(m), double(n)};
      double sk = 1.0 - std::abs(1.0 - zeta);
      ext.s_min = std::min(ext.s_min, sk);
      ext.s_max = std::max(ext.s_max, sk);
    }
  }
  return ext;
}

// ---------------------------------------------------------------------------
// Disjointness engines
// ---------------------------------------------------------------------------

namespace {

// constants of one tangent/turned line family entering the exact
// tube-crossing bound (the alpha-slop chain of the lemma-2 proof)
struct LineGeom {
  double R2 = 0.0, R = 1.0, Rsq = 1.0;
  double t = 0.0;
  double T = 1.0;   // |z2-direction component|: 1-s or 1-s+nu
  double W = 1.0;   // |direction|
  double hp = 0.0;  // |<w, p>|: 0 for tangent, nu R2 (1-t) for turned
  double psi = 0.0;
  std::int64_t N = 0;
  double slice(double width) const { return width * W / ((1.0 - t) * R2); }
};

LineGeom geom_of(const TorusFamily& fam) {
  LineGeom g;
  const auto& p = fam.params;
  DerivedConstants d = derive_constants(p.s, p.t, p.nu);
  g.R2 = d.R2;
  g.R = d.R;
  g.Rsq = d.R * d.R;
  g.t = p.t;
  g.N = fam.count;
  if (fam.kind == FamilyKind::Turned) {
    g.T = 1.0 - p.s + p.nu;
    g.W = std::sqrt((1.0 - p.t) * (1.0 - p.t) * d.R2 * d.R2 + g.T * g.T);
    g.hp = p.nu * d.R2 * (1.0 - p.t);
    g.psi = p.psi;
  } else {
    g.T = 1.0 - p.s;
    g.W = d.R;
    g.hp = 0.0;
  }
  return g;
}

// Certified |z*|^2 range over all crossings of lines in the width-wA tube of
// host family A and the width-wB tube of family B at angle delta. Every point
// of tube_A cap tube_B is such a crossing, so lower > 1 proves the tubes miss
// the closed unit ball and upper < 1 proves they stay strictly inside it;
// either way the tori on the sphere are disjoint.
struct CrossingRange {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
};

CrossingRange crossing_norm_sq_range(const LineGeom& A, const LineGeom& B, double delta,
                                     double wA, double wB, bool tail) {
  double aA = A.slice(wA), aB = B.slice(wB);
  double asum = aA + aB;
  double sh = 2.0 * std::abs(std::sin(0.5 * delta));
  double cm = A.R2 * (1.0 - A.t);  // circle radius of C_t
  double den = std::abs(B.T * std::polar(1.0, delta) - A.T);
  CrossingRange range;
  if (den == 0.0) return range;
  double zmin = std::max(0.0, (cm * sh - asum) / den);
  // cm*sh/den is monotone in delta with supremum 2 cm / (T_A + T_B), so the
  // tail bound stays valid for every angle beyond delta
  double zmax = tail ? 2.0 * cm / (A.T + B.T) + asum / den : (cm * sh + asum) / den;
  double hpmax = A.hp + A.T * aA;
  range.lower = (A.Rsq - 2.0 * cm * aA) - 2.0 * zmax * hpmax + A.W * A.W * zmin * zmin;
  range.upper = (A.Rsq + 2.0 * cm * aA + aA * aA) + 2.0 * zmax * hpmax +
                A.W * A.W * zmax * zmax;
  return range;
}

// tube crossings certified off the sphere (outside or strictly inside)
bool crossing_clears_sphere(const LineGeom& A, const LineGeom& B, double delta, double wA,
                            double wB, bool tail) {
  CrossingRange r = crossing_norm_sq_range(A, B, delta, wA, wB, tail);
  return r.lower > 1.0 + slack(1.0) || r.upper < 1.0 - slack(1.0);
}

struct WindowPlan {
  double delta_edge = kPi;
  double delta_worst = kPi;  // smallest member angle actually covered by the tail
  double tail_margin = 0.0;  // |z*|^2 slack of the tail bound at delta_edge
  std::vector<std::int64_t> window;
  bool tail_ok = false;
};

// Bisect the monotone tail bound for the smallest delta that already proves
// disjointness, then list members inside the remaining near window.
WindowPlan plan_window(const LineGeom& A, const LineGeom& B, double psi_rel, double wA,
                       double wB, bool same_family) {
  WindowPlan plan;
  auto ok = [&](double delta) { return crossing_clears_sphere(A, B, delta, wA, wB, true); };
  if (!ok(kPi)) {
    plan.tail_ok = false;
    plan.delta_edge = kPi;
  } else {
    double lo = 0.0, hi = kPi;
    for (int i = 0; i < 100; ++i) {
      double mid = 0.5 * (lo + hi);
      if (ok(mid)) hi = mid;
      else lo = mid;
    }
    plan.delta_edge = hi;
    plan.tail_margin = crossing_norm_sq_range(A, B, hi, wA, wB, true).lower - 1.0;
    plan.tail_ok = true;
  }
  // members with |wrap(2 pi m / N + psi_rel)| < delta_edge
  std::int64_t N = A.N;
  double phi1 = 2.0 * kPi / double(N);
  std::int64_t m_center = (std::int64_t)std::llround(-psi_rel / phi1);
  std::int64_t halfspan = (std::int64_t)std::ceil(plan.delta_edge / phi1) + 2;
  const std::int64_t cap = 4096;
  halfspan = std::min(halfspan, cap);
  for (std::int64_t dm = -halfspan - 4; dm <= halfspan + 4; ++dm) {
    std::int64_t m = m_center + dm;
    std::int64_t mm = ((m % N) + N) % N;
    if (same_family && mm == 0) continue;
    double delta = wrap_pi(phi1 * double(mm) + psi_rel);
    if (std::abs(delta) < plan.delta_edge) {
      if (std::find(plan.window.begin(), plan.window.end(), mm) == plan.window.end())
        plan.window.push_back(mm);
    } else {
      plan.delta_worst = std::min(plan.delta_worst, std::abs(delta));
    }
  }
  std::sort(plan.window.begin(), plan.window.end());
  return plan;
}

// Projected-on-sphere subgradient descent: an upper-bound falsifier for
// torus (sphere) disjointness.
double sphere_min_upper(const AffineFunction& f, const AffineFunction& g,
                        ComplexPoint2* where) {
  auto value = [&](const ComplexPoint2& z) { return std::max(f.modulus(z), g.modulus(z)); };
  std::vector<ComplexPoint2> starts;
  auto circle_starts = [&](const AffineFunction& h) {
    if (std::abs(h.f0) < 1.0) {
      CircleOnSphere c = line_circle(h, 1.0);
      ComplexLine l = line_of(h);
      double zr = c.radius / l.direction.norm();
      for (int i = 0; i < 4; ++i)
        starts.push_back(l.at(std::polar(zr, 0.5 * kPi * i)));
    }
  };
  circle_starts(f);
  circle_starts(g);
  auto p = line_intersection(f, g);
  if (p && p->norm() > 0.0) starts.push_back(*p * (1.0 / p->norm()));
  ComplexPoint2 best_z = starts.empty() ? ComplexPoint2{cxd{1, 0}, cxd{0, 0}} : starts[0];
  double best = std::numeric_limits<double>::infinity();
  for (auto z : starts) {
    double nz = z.norm();
    if (nz == 0.0) continue;
    z = z * (1.0 / nz);
    double step0 = 0.5 * std::max(value(z), 1e-300);
    for (int it = 1; it <= 300; ++it) {
      const AffineFunction& h = (f.modulus(z) >= g.modulus(z)) ? f : g;
      cxd hv = h(z);
      double m = std::abs(hv);
      if (m < 1e-300) break;
      ComplexPoint2 gr{std::conj(h.f1) * hv / m, std::conj(h.f2) * hv / m};
      z = z - gr * (step0 / double(it));
      double n2 = z.norm();
      if (n2 > 0.0) z = z * (1.0 / n2);
      double v = value(z);
      if (v < best) {
        best = v;
        best_z = z;
      }
    }
  }
  if (where) *where = best_z;
  return best;
}

}  // namespace

std::optional<Certificate> pair_spread_certificate(const AffineFunction& f, double wf,
                                                   const AffineFunction& g, double wg,
                                                   const std::string& id) {
  auto p = line_intersection(f, g);
  if (!p) return std::nullopt;
  cxd det = pair_determinant(f, g);
  ComplexPoint2 col1{g.f2 / det, -g.f1 / det};
  ComplexPoint2 col2{-f.f2 / det, f.f1 / det};
  double lin = 2.0 * (wf * std::abs(hdot(col1, *p)) + wg * std::abs(hdot(col2, *p)));
  double ext = wf * col1.norm() + wg * col2.norm();
  double spread = lin + ext * ext;
  double gap = std::abs(p->norm_sq() - 1.0);
  Certificate c;
  c.id = id;
  c.kind = CertKind::Disjointness;
  c.scale = std::max(gap, spread);
  c.margin = gap - spread - slack(c.scale);
  c.resolution = 0.0;  // exact interval arithmetic
  c.sample_count = 0;
  c.note = "pair |z|^2 interval around the crossing point";
  c.passed = c.margin > 0.0;
  if (!c.passed) c.witness = *p;
  return c;
}

namespace {

// Pairwise certificate for one near-window pair: spread interval first, then
// descent falsification, then a budgeted branch-and-bound on the sphere.
struct PairVerdict {
  bool ok = false;
  double width_slack = 0.0;  // extra tube width still certifiable
  std::string method;
  std::optional<ComplexPoint2> witness;
};

PairVerdict settle_pair_on_sphere(const AffineFunction& f, const AffineFunction& g,
                                  double width) {
  PairVerdict v;
  ComplexPoint2 dwit;
  double dval = sphere_min_upper(f, g, &dwit);
  if (dval < width) {
    v.ok = false;
    v.method = "descent found a crossing";
    v.witness = dwit;
    return v;
  }
  if (auto c = pair_spread_certificate(f, 2.0 * width, g, 2.0 * width, "sp")) {
    // pass at doubled widths certifies slack of a full width step
    if (c->passed) {
      v.ok = true;
      v.width_slack = width;
      v.method = "spread2x+descent";
      return v;
    }
  }
  if (auto c = pair_spread_certificate(f, width, g, width, "sp")) {
    if (c->passed) {
      v.ok = true;
      // translate the |z|^2 margin into a width slack via the linear term
      double per_width = (std::abs(c->scale) > 0 ? (c->scale - c->margin) / width : 1.0);
      v.width_slack = per_width > 0 ? c->margin / per_width : c->margin;
      v.method = "spread+descent";
      return v;
    }
  }
  BBOptions opts;
  opts.pass_target = width;
  opts.fail_below = width;
  opts.tol = std::max(width * 0.05, 1e-15);
  opts.min_box_width = std::max(width * 0.01, 1e-15);
  opts.max_evals = 2'000'000;
  BBResult bb = pair_min_on_sphere(f, g, 1.0, opts);
  if (bb.upper < width) {
    v.ok = false;
    v.method = "branch-and-bound found a crossing";
    v.witness = bb.witness;
    return v;
  }
  if (bb.lower > width) {
    v.ok = true;
    v.width_slack = bb.lower - width;
    v.method = "bb+descent";
    return v;
  }
  v.ok = false;
  v.method = "inconclusive at budget";
  v.witness = bb.witness;
  return v;
}

PairVerdict settle_pair_in_ball(const AffineFunction& f, const AffineFunction& g,
                                double width) {
  PairVerdict v;
  DescentResult d = convex_min_max_moduli(f, g, 1.0);
  if (d.value < width) {
    v.ok = false;
    v.method = "descent found a tube crossing";
    v.witness = d.argmin;
    return v;
  }
  BBOptions opts;
  opts.pass_target = width;
  opts.fail_below = width;
  opts.tol = std::max(width * 0.05, 1e-15);
  opts.min_box_width = std::max(width * 0.01, 1e-15);
  opts.max_evals = 2'000'000;
  BBResult bb = pair_min_on_ball(f, g, 1.0, opts);
  if (bb.upper < width) {
    v.ok = false;
    v.method = "bb found a tube crossing";
    v.witness = bb.witness;
    return v;
  }
  if (bb.lower > width) {
    v.ok = true;
    v.width_slack = bb.lower - width;
    v.method = "bb+descent";
    return v;
  }
  v.ok = false;
  v.method = "inconclusive at budget";
  v.witness = bb.witness;
  return v;
}

Certificate parallel_family_disjointness(const TorusFamily& fam, double width,
                                         const std::string& id) {
  // all member lines are parallel: exact pairwise distance floor
  double min_dist = std::numeric_limits<double>::infinity();
  std::int64_t worst = 1;
  if (fam.kind == FamilyKind::Lattice) {
    // nearest lattice neighbours sit exactly alpha apart
    if (fam.count >= 2) min_dist = fam.params.alpha;
  } else {
    min_dist = 2.0 * fam.circle_radius * std::sin(kPi / double(fam.count));
  }
  Certificate c;
  c.id = id;
  c.kind = CertKind::Disjointness;
  c.scale = width;
  c.resolution = 0.0;
  c.note = std::string("parallel lines, min distance ") + std::to_string(min_dist);
  if (!std::isfinite(min_dist)) {
    c.margin = width;  // single member
    c.passed = true;
    return c;
  }
  // min over ball of max(|f_i|,|f_j|) equals half the line distance
  c.margin = 0.5 * min_dist - width - slack(width);
  c.passed = c.margin > 0.0;
  if (!c.passed) {
    AffineFunction f = family_member(fam, 0);
    ComplexLine l = line_of(f);
    c.witness = l.base;
    c.subjects = {fam.family_id + "[0]", fam.family_id + "[" + std::to_string(worst) + "]"};
  }
  return c;
}

}  // namespace

Certificate pair_disjointness_on_sphere(const AffineFunction& f, const AffineFunction& g,
                                        double width, const std::string& id) {
  PairVerdict v = settle_pair_on_sphere(f, g, width);
  Certificate c;
  c.id = id;
  c.kind = CertKind::Disjointness;
  c.scale = width;
  c.resolution = 0.0;
  c.note = v.method;
  c.replay = {{"engine", "pair_sphere"}, {"f", to_json(f)}, {"g", to_json(g)},
              {"width", width}};
  if (v.ok) {
    c.margin = v.width_slack;
    c.passed = c.margin > slack(width);
  } else {
    c.passed = false;
    c.margin = 0.0;
    c.witness = v.witness ? *v.witness : line_of(f).base;
  }
  return c;
}

Certificate lemma2_disjointness(const TorusFamily& fam, double eps) {
  double width = 2.0 * eps;
  std::string id = fam.family_id + ".disjoint";
  if (fam.kind == FamilyKind::Prop1Z1 || fam.kind == FamilyKind::Prop1Z2 ||
      fam.kind == FamilyKind::Lattice) {
    Certificate c = parallel_family_disjointness(fam, width, id);
    c.replay = {{"engine", "lemma2_parallel"},
                {"kind", family_kind_name(fam.kind)},
                {"radius", fam.circle_radius},
                {"n", fam.count},
                {"s", fam.params.s},
                {"sigma", fam.params.sigma},
                {"alpha", fam.params.alpha},
                {"eps", eps}};
    return c;
  }

  LineGeom geo = geom_of(fam);
  WindowPlan plan = plan_window(geo, geo, 0.0, width, width, true);
  Certificate c;
  c.id = id;
  c.kind = CertKind::Disjointness;
  c.scale = width;
  c.resolution = 0.0;
  c.replay = {{"engine", "lemma2"},
              {"kind", family_kind_name(fam.kind)},
              {"s", fam.params.s},
              {"t", fam.params.t},
              {"nu", fam.params.nu},
              {"psi", fam.params.psi},
              {"n", fam.count},
              {"eps", eps}};

  if (!plan.tail_ok && (std::int64_t)plan.window.size() >= 4096) {
    c.passed = false;
    c.note = "window overflow: B below the validity threshold";
    c.witness = family_point(fam, 0);
    return c;
  }
  // width slack of the exact tail bound at the nearest member angle the tail
  // actually covers, by bisection on the tube width
  double tail_slack = 0.0;
  if (plan.tail_ok) {
    double lo = width, hi = 64.0 * width;
    auto full = [&](double w) {
      return crossing_clears_sphere(geo, geo, plan.delta_worst, w, w, true);
    };
    if (!full(lo)) {
      tail_slack = 0.0;
    } else if (full(hi)) {
      tail_slack = hi - width;
    } else {
      for (int i = 0; i < 60; ++i) {
        double mid = 0.5 * (lo + hi);
        if (full(mid)) lo = mid;
        else hi = mid;
      }
      tail_slack = lo - width;
    }
  }
  double margin = plan.tail_ok ? tail_slack : std::numeric_limits<double>::infinity();
  std::int64_t worst = -1;
  std::string worst_method = plan.tail_ok ? "crossing arithmetic tail" : "";
  for (std::int64_t m : plan.window) {
    AffineFunction f0 = family_member(fam, 0);
    AffineFunction fm = family_member(fam, m);
    PairVerdict v = settle_pair_in_ball(f0, fm, width);
    c.sample_count += 1;
    if (!v.ok) {
      c.passed = false;
      c.margin = 0.0;
      c.note = "pair (0," + std::to_string(m) + "): " + v.method;
      c.subjects = {fam.family_id + "[0]", fam.family_id + "[" + std::to_string(m) + "]"};
      c.witness = v.witness ? *v.witness : family_point(fam, m);
      return c;
    }
    if (v.width_slack < margin) {
      margin = v.width_slack;
      worst = m;
      worst_method = v.method;
    }
  }
  c.margin = margin;
  c.passed = margin > slack(width);
  c.note = "worst pair (0," + std::to_string(std::max<std::int64_t>(worst, 1)) + ") via " +
           worst_method + "; window " + std::to_string(plan.window.size()) +
           ", tail edge " + std::to_string(plan.delta_edge);
  if (!c.passed) c.witness = family_point(fam, std::max<std::int64_t>(worst, 1));
  return c;
}

Certificate cross_family_disjointness(const TorusFamily& fam_f, const TorusFamily& fam_g,
                                      double eps) {
  double width = 2.0 * eps;
  Certificate c;
  c.id = fam_f.family_id + "x" + fam_g.family_id + ".disjoint";
  c.kind = CertKind::Disjointness;
  c.scale = width;
  c.resolution = 0.0;
  c.replay = {{"engine", "cross"},
              {"s", fam_f.params.s},
              {"t", fam_f.params.t},
              {"nu", fam_g.params.nu},
              {"psi", fam_g.params.psi},
              {"n", fam_f.count},
              {"eps", eps}};

  LineGeom gf = geom_of(fam_f);
  LineGeom gg = geom_of(fam_g);
  double psi_rel = gg.psi - gf.psi;
  WindowPlan plan = plan_window(gf, gg, psi_rel, width, width, false);
  if (!plan.tail_ok && (std::int64_t)plan.window.size() >= 4096) {
    c.passed = false;
    c.note = "window overflow: B below the lemma-3 threshold";
    c.witness = family_point(fam_f, 0);
    return c;
  }
  double margin = std::numeric_limits<double>::infinity();
  if (plan.tail_ok) {
    double lo = width, hi = 64.0 * width;
    auto full = [&](double w) {
      return crossing_clears_sphere(gf, gg, plan.delta_worst, w, w, true);
    };
    if (!full(lo)) {
      margin = 0.0;
    } else if (full(hi)) {
      margin = hi - width;
    } else {
      for (int i = 0; i < 60; ++i) {
        double mid = 0.5 * (lo + hi);
        if (full(mid)) lo = mid;
        else hi = mid;
      }
      margin = lo - width;
    }
  }
  std::int64_t worst = -1;
  std::string worst_method = plan.tail_ok ? "crossing arithmetic tail" : "";
  for (std::int64_t m : plan.window) {
    AffineFunction f0 = family_member(fam_f, 0);
    AffineFunction gm = family_member(fam_g, m);
    PairVerdict v = settle_pair_on_sphere(f0, gm, width);
    c.sample_count += 1;
    if (!v.ok) {
      c.passed = false;
      c.margin = 0.0;
      c.note = "pair (f0,g" + std::to_string(m) + "): " + v.method;
      c.subjects = {fam_f.family_id + "[0]", fam_g.family_id + "[" + std::to_string(m) + "]"};
      c.witness = v.witness ? *v.witness : family_point(fam_g, m);
      return c;
    }
    if (v.width_slack < margin) {
      margin = v.width_slack;
      worst = m;
      worst_method = v.method;
    }
  }
  c.margin = margin;
  c.passed = std::isfinite(margin) && margin > slack(width);
  c.note = "worst pair (f0,g" + std::to_string(std::max<std::int64_t>(worst, 0)) + ") via " +
           worst_method + "; window " + std::to_string(plan.window.size());
  if (!c.passed && !c.witness) c.witness = family_point(fam_f, 0);
  return c;
}

PsiChoice choose_psi(const ProofParameters& params, const DerivedConstants& derived,
                     double tube_width) {
  const std::int64_t N = params.n_count;
  const double psi_max = 2.0 * kPi / double(N);
  double eps = tube_width / 2.0;

  // candidate m values whose crossing can approach the sphere
  std::vector<std::int64_t> hot;
  {
    double K = derived.R2 * derived.R2 * (1.0 - params.t) * (1.0 - params.t) /
               ((1.0 - params.s) * (1.0 - params.s));
    double Rsq = derived.R * derived.R;
    double fx_sq = (1.0 - Rsq) / std::max(Rsq * K, 1e-300);
    double phi1 = 2.0 * kPi / double(N);
    double phi_x = kPi;
    if (fx_sq < 1.0) {
      // F is monotone: bisect F(phi) = sqrt(fx_sq)
      double fx = std::sqrt(fx_sq), lo = 0.0, hi = kPi;
      for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (F_function(mid, derived.Q) < fx ? lo : hi) = mid;
      }
      phi_x = hi;
    }
    std::int64_t m_x = (std::int64_t)std::llround(phi_x / phi1);
    std::int64_t span = std::min<std::int64_t>(128, N / 2 + 1);
    for (std::int64_t dm = -span; dm <= span; ++dm) {
      for (std::int64_t base : {std::int64_t(0), m_x, -m_x}) {
        std::int64_t mm = ((base + dm) % N + N) % N;
        if (std::find(hot.begin(), hot.end(), mm) == hot.end()) hot.push_back(mm);
      }
    }
    std::sort(hot.begin(), hot.end());
  }

  // neighbourhood threshold tau: sampled spread of |z|^2 over the tube
  // intersection (stands in for the paper's 4 A' eps)
  auto tau_of = [&](std::int64_t m, double psi) -> double {
    AffineFunction f0 = tangent_function(params.s, params.t, N, 0);
    AffineFunction gm = turned_function(params.s, params.t, params.nu, psi, N, m);
    auto p = line_intersection(f0, gm);
    if (!p) return std::numeric_limits<double>::infinity();
    cxd det = pair_determinant(f0, gm);
    ComplexPoint2 col1{gm.f2 / det, -gm.f1 / det};
    ComplexPoint2 col2{-f0.f2 / det, f0.f1 / det};
    double w = tube_width;
    double worst = 0.0;
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        cxd w1 = std::polar(w, 2.0 * kPi * i / 8.0);
        cxd w2 = std::polar(w, 2.0 * kPi * j / 8.0);
        ComplexPoint2 z = *p + col1 * w1 + col2 * w2;
        worst = std::max(worst, std::abs(z.norm_sq() - p->norm_sq()));
      }
    return worst + slack(worst);
  };

  auto score = [&](double psi) -> double {
    double worst = std::numeric_limits<double>::infinity();
    for (std::int64_t m : hot) {
      double gap = std::abs(intersection_norm_sq(m, psi, params, derived) - 1.0);
      double tau = tau_of(m, psi);
      if (tau <= 0.0) continue;
      worst = std::min(worst, gap / tau);
    }
    return worst;
  };

  auto gate_at = [&](double psi) -> std::optional<PsiChoice> {
    TorusFamily ff = make_tangent_family(params.s, params.t, N, eps, 1, "psi.f");
    TorusFamily fg =
        make_turned_family(params.s, params.t, params.nu, psi, N, eps, 1, "psi.g");
    Certificate gate = cross_family_disjointness(ff, fg, eps);
    if (!gate.passed) return std::nullopt;
    PsiChoice out;
    out.psi = psi;
    out.gate = gate;
    double mg = std::numeric_limits<double>::infinity();
    double tau = 0.0;
    for (std::int64_t m : hot) {
      mg = std::min(mg, std::abs(intersection_norm_sq(m, psi, params, derived) - 1.0));
      tau = std::max(tau, tau_of(m, psi) - slack(1.0));
    }
    out.min_gap = mg;
    out.tau = tau;
    return out;
  };

  // nothing to repair at psi = 0?
  if (score(0.0) > 1.0) {
    if (auto ok = gate_at(0.0)) return *ok;
  }

  struct Cand {
    double psi, sc;
  };
  std::vector<Cand> cands;
  for (int i = 1; i <= 64; ++i) {
    for (double sign : {1.0, -1.0}) {
      double psi = sign * psi_max * double(i) / 65.0;
      cands.push_back({psi, score(psi)});
    }
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (a.sc != b.sc) return a.sc > b.sc;
    return a.psi < b.psi;
  });
  int tried = 0;
  for (const Cand& cd : cands) {
    if (tried >= 8) break;
    ++tried;
    // local golden-section refinement of the score around the candidate
    double lo = cd.psi - psi_max / 65.0, hi = cd.psi + psi_max / 65.0;
    double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = score(x1), f2 = score(x2);
    for (int it = 0; it < 24; ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = score(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = score(x1);
      }
    }
    double psi = 0.5 * (lo + hi);
    if (std::abs(psi) > psi_max) psi = std::copysign(psi_max, psi);
    if (auto ok = gate_at(psi)) return *ok;
    if (auto ok = gate_at(cd.psi)) return *ok;
  }
  throw Error(Err::NoPsiFound,
              "choose_psi: no psi passed the pairwise gate; B is below the lemma-3 "
              "threshold for these parameters");
}

}  // namespace hullforge
