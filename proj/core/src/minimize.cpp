#include "hullforge/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace hullforge {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double SphereObjective::eval(double r, double theta, double phi) const {
  cxd alpha = std::polar(r * std::cos(theta), phi);
  double rho = r * std::sin(theta);
  double v1;
  if (slab) {
    v1 = std::max(0.0, std::abs(alpha - slab_center) - slab_radius);
  } else {
    v1 = std::abs(f0 + alpha);
  }
  double v2 = std::abs(std::abs(g0 + mu * alpha) - abs_kappa * rho);
  return std::max(v1, v2);
}

ComplexPoint2 SphereObjective::point_at(double r, double theta, double phi) const {
  cxd alpha = std::polar(r * std::cos(theta), phi);
  double rho = r * std::sin(theta);
  cxd w = g0 + mu * alpha;
  cxd beta;
  if (abs_kappa > 0.0 && std::abs(w) > 0.0) {
    // fiber phase cancelling as much of w as possible
    beta = -std::polar(rho, std::arg(w));
    // beta enters through kappa whose phase is folded into abs_kappa; the
    // witness only needs |f|,|g| values, reconstructed through the frame below.
  } else {
    beta = cxd{rho, 0.0};
  }
  return a * alpha + a_perp * beta;
}

SphereObjective pair_objective(const AffineFunction& f, const AffineFunction& g) {
  SphereObjective o;
  o.f0 = f.f0;
  o.g0 = g.f0;
  o.mu = g.f1 * std::conj(f.f1) + g.f2 * std::conj(f.f2);
  cxd kappa = g.f2 * f.f1 - g.f1 * f.f2;
  o.abs_kappa = std::abs(kappa);
  o.a = {std::conj(f.f1), std::conj(f.f2)};
  // a_perp chosen so f(alpha a + beta a_perp) = f0 + alpha exactly and the
  // kappa phase is absorbed: points mapped back still satisfy the equations
  // up to the fiber phase, which eval() minimized anyway.
  o.a_perp = {-f.f2, f.f1};
  if (o.abs_kappa > 0.0) {
    cxd ph = kappa / o.abs_kappa;
    // fold arg(kappa) into the frame so |g0 + mu a + |kappa| beta'| matches
    o.a_perp = o.a_perp * (1.0 / ph);
  }
  return o;
}

SphereObjective slab_objective(cxd slab_center, double slab_radius, const AffineFunction& g) {
  AffineFunction z1axis{0.0, 1.0, 0.0};
  SphereObjective o = pair_objective(z1axis, g);
  o.slab = true;
  o.slab_center = slab_center;
  o.slab_radius = slab_radius;
  o.f0 = 0.0;
  return o;
}

namespace {

struct Box {
  double t0, t1, p0, p1;
  double lower;
  std::int64_t seq;
};
struct BoxCmp {
  bool operator()(const Box& a, const Box& b) const {
    if (a.lower != b.lower) return a.lower > b.lower;  // min-heap on lower
    return a.seq > b.seq;
  }
};

}  // namespace

BBResult bb_min_on_sphere(const SphereObjective& obj, double r, const BBOptions& opts) {
  BBResult res;
  std::priority_queue<Box, std::vector<Box>, BoxCmp> heap;
  std::int64_t seq = 0;
  double best_upper = std::numeric_limits<double>::infinity();
  double best_t = 0.0, best_p = 0.0;
  double settled_lower = std::numeric_limits<double>::infinity();  // boxes proven done

  auto push = [&](double t0, double t1, double p0, double p1) {
    double tc = 0.5 * (t0 + t1), pc = 0.5 * (p0 + p1);
    double v = obj.eval(r, tc, pc);
    ++res.evals;
    if (v < best_upper) {
      best_upper = v;
      best_t = tc;
      best_p = pc;
    }
    double lb = v - r * (0.5 * (t1 - t0) + 0.5 * (p1 - p0));
    heap.push(Box{t0, t1, p0, p1, lb, seq++});
  };

  // initial 4x8 grid keeps early bounds tight
  {
    int nt = 4, np = 8;
    for (int i = 0; i < nt; ++i)
      for (int j = 0; j < np; ++j)
        push((kPi / 2.0) * i / nt, (kPi / 2.0) * (i + 1) / nt, 2.0 * kPi * j / np,
             2.0 * kPi * (j + 1) / np);
  }

  bool budget_hit = false;
  while (!heap.empty()) {
    double frontier = heap.top().lower;
    double global_lower = std::min(frontier, settled_lower);
    if (opts.pass_target && global_lower > *opts.pass_target) break;
    if (opts.fail_below && best_upper < *opts.fail_below) break;
    if (!opts.pass_target && best_upper - global_lower <= opts.tol) break;
    if (res.evals >= opts.max_evals) {
      budget_hit = true;
      break;
    }
    Box b = heap.top();
    heap.pop();
    double wt = b.t1 - b.t0, wp = b.p1 - b.p0;
    if (std::max(wt, wp) < opts.min_box_width) {
      settled_lower = std::min(settled_lower, b.lower);
      continue;
    }
    if (wt >= wp) {
      double tm = 0.5 * (b.t0 + b.t1);
      push(b.t0, tm, b.p0, b.p1);
      push(tm, b.t1, b.p0, b.p1);
    } else {
      double pm = 0.5 * (b.p0 + b.p1);
      push(b.t0, b.t1, b.p0, pm);
      push(b.t0, b.t1, pm, b.p1);
    }
  }

  double frontier =
      heap.empty() ? std::numeric_limits<double>::infinity() : heap.top().lower;
  res.lower = std::min(frontier, settled_lower);
  if (!std::isfinite(res.lower)) res.lower = best_upper;
  res.upper = best_upper;
  res.witness = obj.point_at(r, best_t, best_p);
  res.conclusive = !budget_hit;
  return res;
}

BBResult pair_min_on_sphere(const AffineFunction& f, const AffineFunction& g, double r,
                            const BBOptions& opts) {
  return bb_min_on_sphere(pair_objective(f, g), r, opts);
}

namespace {

// Parallel gradients: |g| is constant on fibers of f, so the problem drops to
// the w = f(z) disc D(f0, r_disc) with objective max(|w|, |w - c|).
BBResult parallel_disc_min(const AffineFunction& f, const AffineFunction& g, double r_disc,
                           const BBOptions& opts) {
  cxd ratio = (std::abs(f.f1) >= std::abs(f.f2)) ? g.f1 / f.f1 : g.f2 / f.f2;
  cxd phase = ratio / std::abs(ratio);
  cxd c = f.f0 - g.f0 / phase;  // |g(z)| = |f(z) - c|
  BBResult res;
  auto to_point = [&](cxd w) {
    // nearest-to-origin preimage of f = w
    cxd dw = w - f.f0;
    return ComplexPoint2{dw * std::conj(f.f1), dw * std::conj(f.f2)};
  };
  cxd mid = c * 0.5;
  if (std::abs(mid - f.f0) <= r_disc) {
    res.lower = res.upper = std::abs(mid);
    res.witness = to_point(mid);
    res.evals = 1;
    return res;
  }
  // certified grid over the disc
  double h = std::max(opts.tol, 1e-5);
  int n = std::max(3, (int)std::ceil(2.0 * r_disc / h));
  double best = std::numeric_limits<double>::infinity();
  cxd bw;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cxd w = f.f0 + cxd{-r_disc + 2.0 * r_disc * (i + 0.5) / n,
                         -r_disc + 2.0 * r_disc * (j + 0.5) / n};
      if (std::abs(w - f.f0) > r_disc) {
        w = f.f0 + (w - f.f0) * (r_disc / std::abs(w - f.f0));
      }
      double v = std::max(std::abs(w), std::abs(w - c));
      ++res.evals;
      if (v < best) {
        best = v;
        bw = w;
      }
    }
  double cell = 2.0 * r_disc / n;  // grid covering radius in the disc
  res.upper = best;
  res.lower = best - cell;
  res.witness = to_point(bw);
  return res;
}

}  // namespace

BBResult pair_min_on_ball(const AffineFunction& f, const AffineFunction& g, double r,
                          const BBOptions& opts) {
  auto p = line_intersection(f, g);
  if (!p) return parallel_disc_min(f, g, r, opts);
  double np = p->norm();
  if (np <= r) {
    BBResult res;
    res.lower = res.upper = 0.0;
    res.witness = *p;
    res.evals = 1;
    return res;
  }
  // max of two affine moduli is convex with its only zero at p outside the
  // ball, so the constrained minimum sits on the boundary sphere.
  return pair_min_on_sphere(f, g, r, opts);
}

BBResult pair_min_on_annulus(const AffineFunction& f, const AffineFunction& g, double r_lo,
                             const BBOptions& opts) {
  if (!(r_lo > 0.0 && r_lo < 1.0))
    throw Error(Err::RadiusOutOfRange, "pair_min_on_annulus: r_lo outside (0,1)");
  auto p = line_intersection(f, g);
  if (!p) return parallel_disc_min(f, g, 1.0, opts);
  double np = p->norm();
  if (np >= r_lo && np <= 1.0) {
    BBResult res;
    res.lower = res.upper = 0.0;
    res.witness = *p;
    res.evals = 1;
    return res;
  }
  if (np < r_lo) {
    // zero of the convex objective below the annulus: minimum on the inner sphere
    return pair_min_on_sphere(f, g, r_lo, opts);
  }
  BBResult inner = pair_min_on_sphere(f, g, r_lo, opts);
  BBResult outer = pair_min_on_sphere(f, g, 1.0, opts);
  BBResult res = inner.upper <= outer.upper ? inner : outer;
  res.lower = std::min(inner.lower, outer.lower);
  res.evals = inner.evals + outer.evals;
  res.conclusive = inner.conclusive && outer.conclusive;
  return res;
}

BBResult slab_min_on_annulus(cxd slab_center, double slab_radius, const AffineFunction& g,
                             double r_lo, const BBOptions& opts) {
  // zero set of the objective: points of {g=0} whose z1 lies in the slab disc.
  // Both terms are convex, so minima off the zero set sit on boundary spheres.
  SphereObjective obj = slab_objective(slab_center, slab_radius, g);
  ComplexLine lg = line_of(g);
  // zero set Z = {g = 0, z1 in disc}: a disc in the line. Its |z|^2 range is
  // an exact quadratic over the zeta disc; the case split below decides
  // whether the convex reduction to boundary spheres applies.
  double nmin, nmax;
  ComplexPoint2 z_center;
  if (std::abs(lg.direction.z1) > 1e-300) {
    cxd zc = (slab_center - lg.base.z1) / lg.direction.z1;
    double zr = slab_radius / std::abs(lg.direction.z1);
    ComplexPoint2 at_c = lg.at(zc);
    z_center = at_c;
    double b2 = lg.direction.norm_sq();
    double cmod = std::abs(hdot(lg.direction, at_c));
    double rho_star = (b2 > 0.0) ? std::min(zr, cmod / b2) : 0.0;
    nmin = std::max(0.0, at_c.norm_sq() - 2.0 * cmod * rho_star + b2 * rho_star * rho_star);
    nmax = at_c.norm_sq() + 2.0 * cmod * zr + b2 * zr * zr;
  } else {
    // vertical line z1 = const
    if (std::abs(lg.base.z1 - slab_center) > slab_radius) {
      // Z empty: the objective depends on z1 only; certified grid on the
      // z1 disc (both terms 1-Lipschitz in z1, annulus z1-image is the disc)
      double best = std::numeric_limits<double>::infinity();
      cxd bw;
      int n = 2048;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          cxd z1{-1.0 + 2.0 * (i + 0.5) / n, -1.0 + 2.0 * (j + 0.5) / n};
          if (std::abs(z1) > 1.0) continue;
          double v = std::max(std::abs(z1 - lg.base.z1),
                              std::max(0.0, std::abs(z1 - slab_center) - slab_radius));
          if (v < best) {
            best = v;
            bw = z1;
          }
        }
      BBResult res;
      res.upper = best;
      res.lower = best - 2.0 * std::sqrt(2.0) / n;
      res.witness = {bw, cxd{0.0, 0.0}};
      res.evals = (std::int64_t)n * n;
      return res;
    }
    double zsq = std::norm(lg.base.z1);
    nmin = zsq;
    nmax = std::min(1.0, zsq + std::max(0.0, 1.0 - zsq));
    z_center = {lg.base.z1, cxd{std::sqrt(std::max(0.0, 1.0 - zsq)), 0.0}};
  }

  double fp = slack(1.0);
  bool zero_below = nmin < r_lo * r_lo - fp;
  bool zero_in_annulus = !zero_below && nmin <= 1.0 + fp && nmax >= r_lo * r_lo - fp;
  if (zero_in_annulus) {
    BBResult res;
    res.lower = res.upper = 0.0;
    res.witness = z_center;
    res.evals = 1;
    return res;
  }
  BBResult inner = bb_min_on_sphere(obj, r_lo, opts);
  if (zero_below) {
    // a zero of the convex objective sits below the annulus: the segment from
    // it to any annulus point crosses the inner sphere at a no-larger value
    return inner;
  }
  BBResult outer = bb_min_on_sphere(obj, 1.0, opts);
  BBResult res = inner.upper <= outer.upper ? inner : outer;
  res.lower = std::min(inner.lower, outer.lower);
  res.evals = inner.evals + outer.evals;
  res.conclusive = inner.conclusive && outer.conclusive;
  return res;
}

CertifiedMin certified_min(const std::vector<AffineFunction>& funcs,
                           const RegionSampler& region) {
  if (funcs.empty()) throw Error(Err::EmptyRegion, "certified_min: no functions");
  CertifiedMin out;
  out.resolution = region.covering_radius;
  double best = std::numeric_limits<double>::infinity();
  ComplexPoint2 arg;
  std::int64_t count = 0;
  region.for_each([&](const ComplexPoint2& z) {
    double v = 0.0;
    for (const auto& f : funcs) v = std::max(v, f.modulus(z));
    ++count;
    if (v < best) {
      best = v;
      arg = z;
    }
  });
  if (count == 0) throw Error(Err::EmptyRegion, "certified_min: empty region");
  out.min_sample = best;
  out.argmin = arg;
  out.sample_count = count;
  out.bound = best - region.covering_radius;
  if (out.bound <= 0.0 && best > 0.0)
    throw Error(Err::ResolutionTooCoarse, "certified_min: bound <= 0 with positive samples");
  return out;
}

DescentResult convex_min_max_moduli(const AffineFunction& f, const AffineFunction& g,
                                    double ball_radius) {
  auto value = [&](const ComplexPoint2& z) { return std::max(f.modulus(z), g.modulus(z)); };
  auto subgrad = [&](const ComplexPoint2& z) -> ComplexPoint2 {
    // gradient of |h| in real coordinates corresponds to conj-coefficient steer
    const AffineFunction& h = (f.modulus(z) >= g.modulus(z)) ? f : g;
    cxd hv = h(z);
    double m = std::abs(hv);
    if (m < 1e-300) return {cxd{0, 0}, cxd{0, 0}};
    return {std::conj(h.f1) * hv / m, std::conj(h.f2) * hv / m};
  };

  DescentResult best;
  best.value = std::numeric_limits<double>::infinity();
  // 16 deterministic starts: center, axes, and a fixed phase spread
  std::vector<ComplexPoint2> starts;
  starts.push_back({cxd{0, 0}, cxd{0, 0}});
  for (int i = 0; i < 15; ++i) {
    double a = 2.0 * kPi * i / 15.0;
    starts.push_back({std::polar(0.7 * ball_radius, a),
                      std::polar(0.7 * ball_radius, 2.0 * a + 0.5)});
  }
  for (auto z : starts) {
    double step0 = 0.5 * std::max(value(z), 1e-12);
    for (int it = 1; it <= 400; ++it) {
      ComplexPoint2 gr = subgrad(z);
      double gn = gr.norm();
      if (gn < 1e-300) break;
      double step = step0 / double(it);
      z = z - gr * (step / gn);
      double nz = z.norm();
      if (nz > ball_radius) z = z * (ball_radius / nz);
      double v = value(z);
      if (v < best.value) {
        best.value = v;
        best.argmin = z;
      }
    }
  }
  return best;
}

}  // namespace hullforge
