#include "hullforge/separation.hpp"

#include <algorithm>
#include <cmath>

#include "hullforge/parallel.hpp"
#include "hullforge/samplers.hpp"

namespace hullforge {

namespace {

// Certified M(r') for a concrete pair, or the slab variant when slab is set.
struct AnnulusProblem {
  bool is_slab = false;
  AffineFunction f, g;
  cxd slab_center{0.0, 0.0};
  double slab_radius = 0.0;

  BBResult min_over(double r_lo, const BBOptions& opts) const {
    if (is_slab) return slab_min_on_annulus(slab_center, slab_radius, g, r_lo, opts);
    return pair_min_on_annulus(f, g, r_lo, opts);
  }
  // the largest |z| over the zero set of the objective, used to aim r'
  double zero_set_top() const {
    if (!is_slab) {
      auto p = line_intersection(f, g);
      return p ? p->norm() : 0.0;
    }
    ComplexLine lg = line_of(g);
    if (std::abs(lg.direction.z1) < 1e-15) {
      if (std::abs(lg.base.z1 - slab_center) > slab_radius) return 0.0;
      return 1.0;  // vertical zero line reaches the sphere
    }
    cxd zc = (slab_center - lg.base.z1) / lg.direction.z1;
    double zr = slab_radius / std::abs(lg.direction.z1);
    // max of |base + dir*zeta|^2 over the zeta disc, exact
    cxd c = hdot(lg.direction, lg.base);
    double b2 = lg.direction.norm_sq();
    cxd e = c + b2 * std::conj(zc);
    double n_zc = (lg.base + lg.direction * zc).norm_sq();
    double nmax = n_zc + 2.0 * std::abs(e) * zr + b2 * zr * zr;
    return std::sqrt(std::max(0.0, nmax));
  }
};

SeparationConstants solve_separation(const AnnulusProblem& prob,
                                     std::optional<double> r_prime_hint, double resolution) {
  BBOptions opts;
  opts.tol = std::max(resolution * 0.25, 1e-14);
  opts.min_box_width = std::max(opts.tol / 8.0, 1e-15);

  double ztop = prob.zero_set_top();
  auto constants_at = [&](double rp) -> std::optional<SeparationConstants> {
    if (!(rp > 0.0 && rp < 1.0)) return std::nullopt;
    if (ztop >= rp) return std::nullopt;  // annulus would contain a zero
    BBResult r = prob.min_over(rp, opts);
    if (r.lower <= 0.0) return std::nullopt;
    SeparationConstants c;
    c.a = 0.9 * r.lower;
    c.r_prime = rp;
    c.margin = r.lower - c.a;
    c.resolution = opts.tol;
    return c;
  };

  // a feasible hint wins outright (callers pin r' through it)
  if (r_prime_hint) {
    if (auto c = constants_at(*r_prime_hint)) return *c;
  }

  std::vector<double> grid = {0.99, 0.95, 0.9, 0.8, 0.7};
  if (ztop >= 0.7 && ztop < 1.0) {
    // squeezed pair: adaptive candidates between the zero set and the sphere
    for (double frac : {0.75, 0.5, 0.25, 0.1})
      grid.push_back(ztop + (1.0 - ztop) * frac);
  }
  // thinnest annulus first anchors the 0.5*M(first) policy
  std::sort(grid.begin(), grid.end(), std::greater<double>());

  double m_first = -1.0;
  SeparationConstants best;
  bool found = false;
  for (double rp : grid) {
    auto c = constants_at(rp);
    if (!c) continue;
    double bound = c->a / 0.9;
    if (m_first < 0.0) m_first = bound;
    if (bound >= 0.5 * m_first) {
      best = *c;
      found = true;  // keep scanning: grid is ordered largest-annulus last
    }
  }
  if (!found)
    throw Error(Err::ResolutionTooCoarse,
                "separation_constants: no r' candidate gave a positive certified bound");
  return best;
}

}  // namespace

SeparationConstants separation_constants(const AffineFunction& f, const AffineFunction& g,
                                         std::optional<double> r_prime_hint,
                                         double resolution) {
  if (std::abs(f.f0) >= 1.0 || std::abs(g.f0) >= 1.0)
    throw Error(Err::LineMissesBall, "separation_constants: a circle is empty");
  auto p = line_intersection(f, g);
  if (p) {
    double np = p->norm();
    if (std::abs(np - 1.0) <= slack(1.0))
      throw Error(Err::CirclesIntersect, "separation_constants: circles meet on the sphere");
  } else {
    // parallel lines: distance must be positive
    ComplexLine lf = line_of(f);
    if (g.modulus(lf.base) <= slack(1.0))
      throw Error(Err::CirclesIntersect, "separation_constants: coincident lines");
  }
  AnnulusProblem prob;
  prob.f = f;
  prob.g = g;
  return solve_separation(prob, r_prime_hint, resolution);
}

SeparationConstants separation_constants_slab(cxd slab_center, double slab_radius,
                                              const AffineFunction& g,
                                              std::optional<double> r_prime_hint,
                                              double resolution) {
  AnnulusProblem prob;
  prob.is_slab = true;
  prob.slab_center = slab_center;
  prob.slab_radius = slab_radius;
  prob.g = g;
  return solve_separation(prob, r_prime_hint, resolution);
}

Certificate check_inclusion_eq1(const AffineFunction& f, const AffineFunction& g,
                                const SeparationConstants& c, double eps,
                                std::int64_t min_samples) {
  if (!(eps > 0.0)) throw Error(Err::BadConfig, "check_inclusion_eq1: eps <= 0");
  Certificate cert;
  cert.id = "eq1";
  cert.kind = CertKind::Inclusion;
  cert.scale = eps;
  if (c.a <= 0.0) {
    // vacuous: empty product sublevel
    cert.margin = eps;
    cert.passed = true;
    cert.note = "eq1: vacuous (a = 0)";
    return cert;
  }

  RegionSampler region = annulus_sampler_by_count(c.r_prime, 1.0, min_samples);
  struct Acc {
    double worst = std::numeric_limits<double>::infinity();
    ComplexPoint2 where;
    std::int64_t flagged = 0, total = 0;
    std::int64_t violations = 0;
  } acc;
  region.for_each([&](const ComplexPoint2& z) {
    ++acc.total;
    double mf = f.modulus(z), mg = g.modulus(z);
    if (mf * mg <= c.a * eps) {
      ++acc.flagged;
      double m = eps - std::min(mf, mg);
      if (m < acc.worst) {
        acc.worst = m;
        acc.where = z;
      }
      if (m < 0.0) ++acc.violations;
    }
  });

  // dichotomy replay from the disjointness certificate: if |fg| <= a*eps and
  // |f| > a then |g| < eps by arithmetic, symmetrically for |f| <= a.
  double dichotomy_margin = eps * c.margin / (c.a + c.margin);

  cert.sample_count = acc.total;
  cert.resolution = region.covering_radius;
  cert.note = "eq1 product-sublevel inclusion; flagged=" + std::to_string(acc.flagged) +
              " dichotomy_margin=" + std::to_string(dichotomy_margin);
  cert.replay = {{"engine", "eq1"},       {"f", to_json(f)},   {"g", to_json(g)},
                 {"a", c.a},              {"r_prime", c.r_prime}, {"eps", eps},
                 {"samples", min_samples}};
  if (acc.violations > 0) {
    cert.margin = acc.worst;
    cert.passed = false;
    cert.witness = acc.where;
  } else {
    cert.margin = acc.flagged > 0 ? std::min(acc.worst, dichotomy_margin) : dichotomy_margin;
    cert.passed = cert.margin > slack(eps);
  }
  return cert;
}

const char* region_kind_name(RegionKind k) {
  switch (k) {
    case RegionKind::ProductSublevel: return "ProductSublevel";
    case RegionKind::Bidisc: return "Bidisc";
    case RegionKind::CircleFamily: return "CircleFamily";
    case RegionKind::FullBidiscProduct: return "FullBidiscProduct";
  }
  return "Unknown";
}

bool HullRegion::contains(const ComplexPoint2& z, double margin) const {
  switch (kind) {
    case RegionKind::ProductSublevel:
      return f.modulus(z) * g.modulus(z) <= bound - margin && z.norm() <= r + slack(1.0);
    case RegionKind::Bidisc:
      return f.modulus(z) <= polyradius - margin && g.modulus(z) <= polyradius - margin;
    case RegionKind::CircleFamily:
      return std::abs(z.z1 - z1_center) <= z1_radius - margin &&
             std::abs(z.z2) <= z2_radius - margin && z.norm() <= r + slack(1.0);
    case RegionKind::FullBidiscProduct:
      return std::abs(z.z1 - z1_center) <= z1_radius - margin &&
             std::abs(z.z2) <= z2_radius - margin;
  }
  return false;
}

HullRegion corollary_hull_region(const AffineFunction& f, const AffineFunction& g,
                                 const SeparationConstants& c, double eps, double r) {
  if (r < c.r_prime - slack(1.0) || r > 1.0 + slack(1.0))
    throw Error(Err::RadiusOutOfRange, "corollary_hull_region: r outside [r', 1]");
  HullRegion h;
  h.kind = RegionKind::ProductSublevel;
  h.r = r;
  h.f = f;
  h.g = g;
  h.bound = c.a * eps;
  h.chain_id = "cor1";
  return h;
}

HullRegion certified_bidisc(const AffineFunction& f, const AffineFunction& g,
                            const SeparationConstants& c, double eps) {
  if (!(eps > 0.0)) throw Error(Err::BadConfig, "certified_bidisc: eps <= 0");
  auto p = line_intersection(f, g);
  if (!p || p->norm() >= 1.0 - slack(1.0))
    throw Error(Err::IntersectionOutsideBall, "certified_bidisc: intersection not inside ball");
  HullRegion h;
  h.kind = RegionKind::Bidisc;
  h.f = f;
  h.g = g;
  h.center = *p;
  h.polyradius = std::sqrt(c.a * eps);
  h.chain_id = "remark1";
  // corner samples of the polydisc satisfy |f||g| = a*eps up to rounding
  for (int i = 0; i < 4; ++i) {
    double prod = h.polyradius * h.polyradius;
    if (prod > c.a * eps * (1.0 + 1e-12))
      throw Error(Err::BadConfig, "certified_bidisc: corner check failed");
  }
  return h;
}

}  // namespace hullforge
