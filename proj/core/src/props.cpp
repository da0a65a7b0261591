#include "hullforge/props.hpp"

#include <algorithm>
#include <cmath>

namespace hullforge {

namespace {
constexpr double kPi = 3.14159265358979323846;

Certificate arithmetic_cert(std::string id, CertKind kind, double margin, double scale,
                            std::string note) {
  Certificate c;
  c.id = std::move(id);
  c.kind = kind;
  c.scale = scale;
  c.margin = margin;
  c.resolution = 0.0;
  c.note = std::move(note);
  c.passed = margin > slack(scale);
  return c;
}

}  // namespace

double solve_footprint_t(double s, double target) {
  // footprint rises from 0, peaks, then falls; bisect on the rising branch
  double lo = 0.0, hi = 0.5, peak_t = 0.5;
  {
    double gl = 0.0, gh = 0.99;
    double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = gh - gr * (gh - gl), x2 = gl + gr * (gh - gl);
    double f1 = tangent_footprint(s, x1), f2 = tangent_footprint(s, x2);
    for (int i = 0; i < 80; ++i) {
      if (f1 < f2) {
        gl = x1;
        x1 = x2;
        f1 = f2;
        x2 = gl + gr * (gh - gl);
        f2 = tangent_footprint(s, x2);
      } else {
        gh = x2;
        x2 = x1;
        f2 = f1;
        x1 = gh - gr * (gh - gl);
        f1 = tangent_footprint(s, x1);
      }
    }
    peak_t = 0.5 * (gl + gh);
  }
  if (target >= tangent_footprint(s, peak_t))
    throw Error(Err::SigmaTooLarge, "solve_footprint_t: target beyond the peak footprint");
  hi = peak_t;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (tangent_footprint(s, mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double sigma_limit(double s) {
  double gl = 0.0, gh = 0.99;
  double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = gh - gr * (gh - gl), x2 = gl + gr * (gh - gl);
  double f1 = tangent_footprint(s, x1), f2 = tangent_footprint(s, x2);
  for (int i = 0; i < 80; ++i) {
    if (f1 < f2) {
      gl = x1;
      x1 = x2;
      f1 = f2;
      x2 = gl + gr * (gh - gl);
      f2 = tangent_footprint(s, x2);
    } else {
      gh = x2;
      x2 = x1;
      f2 = f1;
      x1 = gh - gr * (gh - gl);
      f1 = tangent_footprint(s, x1);
    }
  }
  double peak = tangent_footprint(s, 0.5 * (gl + gh));
  return 0.55 * (3.0 / 5.0) * peak;
}

Band tube_z1_band(double s, double t, double nu, double width, bool on_sphere) {
  DerivedConstants d = derive_constants(s, t, nu);
  double cm = d.R2 * (1.0 - t);
  double T = 1.0 - s + nu;
  double W2 = (1.0 - t) * (1.0 - t) * d.R2 * d.R2 + T * T;
  double W = std::sqrt(W2);
  double aw = width * W / ((1.0 - t) * d.R2);
  double hp = nu * d.R2 * (1.0 - t) + T * aw;
  double Rsq = d.R * d.R;
  Band band;
  double disc_hi = hp * hp + W2 * (1.0 - Rsq + 2.0 * cm * aw);
  double xmax = (hp + std::sqrt(std::max(0.0, disc_hi))) / W2;
  band.hi = (1.0 - t) * d.R2 * xmax;
  if (on_sphere) {
    double arg = hp * hp + W2 * (1.0 - Rsq - 2.0 * cm * aw - aw * aw);
    if (arg < 0.0) {
      band.lo = 0.0;
      band.valid = false;
      return band;
    }
    double xmin = std::max(0.0, (-hp + std::sqrt(arg)) / W2);
    band.lo = (1.0 - t) * d.R2 * xmin;
    band.valid = true;
  } else {
    band.lo = 0.0;
    band.valid = true;
  }
  return band;
}

// ---------------------------------------------------------------------------
// Proposition 1
// ---------------------------------------------------------------------------

Prop1Result prop1_families(double R1, double R2, double q, double gamma, double eps,
                           double B, double resolution, int level, const std::string& tag) {
  if (std::abs(R1 * R1 + R2 * R2 - 1.0) > 1e-10)
    throw Error(Err::BadConfig, "prop1_families: R1^2 + R2^2 != 1");
  if (!(q > 0.0 && q < 1.0)) throw Error(Err::BadConfig, "prop1_families: q outside (0,1)");

  Prop1Result out;
  try {
    out.fam_f = make_prop1_family(true, q * R1, B, eps, level, tag + ".f");
    out.fam_g = make_prop1_family(false, q * R2, B, eps, level, tag + ".g");
  } catch (const Error& e) {
    if (e.code() == Err::NoFeasibleCount)
      throw Error(Err::EpsTooLarge, std::string("prop1_families: ") + e.what());
    throw;
  }
  out.s1 = 1.0 - q * R1;
  out.s2 = 1.0 - q * R2;
  double spacing_f = 2.0 * q * R1 * std::sin(kPi / double(out.fam_f.count));
  double spacing_g = 2.0 * q * R2 * std::sin(kPi / double(out.fam_g.count));
  out.B_actual = std::max(spacing_f, spacing_g) / eps;

  // same-family tube disjointness (parallel lines, exact)
  out.certs.push_back(lemma2_disjointness(out.fam_f, eps));
  out.certs.push_back(lemma2_disjointness(out.fam_g, eps));

  // cross-family class representative: phase rotations in both coordinates
  // map any pair (f_j, g_k) onto (f_0, g_0)
  AffineFunction f0 = family_member(out.fam_f, 0);
  AffineFunction g0 = family_member(out.fam_g, 0);
  {
    Certificate c = pair_disjointness_on_sphere(f0, g0, 2.0 * eps, tag + ".cross");
    c.note += " (one rotation class covers all cross pairs)";
    out.certs.push_back(c);
  }

  // main-lemma class constants and the certified-bidisc grid
  out.ml = separation_constants(f0, g0, std::nullopt, resolution);
  out.bidisc_radius = std::sqrt(out.ml.a * eps);
  if (!(out.bidisc_radius > (out.B_actual + 1.0) * eps))
    throw Error(Err::SpacingViabilityFailed,
                "prop1_families: sqrt(a eps) <= (B+1) eps at a=" + std::to_string(out.ml.a));
  out.certs.push_back(arithmetic_cert(
      tag + ".viability", CertKind::Coverage,
      out.bidisc_radius - (out.B_actual + 1.0) * eps, eps,
      "spacing viability sqrt(a eps) > (B+1) eps"));

  // bidiscs must sit inside the r'-ball of the corollary
  double reach = std::hypot(q * R1 + out.bidisc_radius, q * R2 + out.bidisc_radius);
  out.r_prime = out.ml.r_prime;
  if (reach > out.r_prime) {
    if (reach >= 1.0)
      throw Error(Err::SpacingViabilityFailed, "prop1_families: bidiscs reach the sphere");
    out.r_prime = 0.5 * (reach + 1.0);
  }
  out.certs.push_back(arithmetic_cert(tag + ".bidisc_in_ball", CertKind::Inclusion,
                                      out.r_prime - reach, 1.0,
                                      "certified bidiscs inside the r' ball"));

  // coverage of the distinguished boundary by the bidisc grid
  {
    double rad = out.bidisc_radius;
    auto nearest = [](double theta, std::int64_t n, double radius) {
      std::int64_t j = (std::int64_t)std::llround(theta * double(n) / (2.0 * kPi));
      double best = std::numeric_limits<double>::infinity();
      for (std::int64_t dj = -1; dj <= 1; ++dj) {
        double pj = 2.0 * kPi * double(j + dj) / double(n);
        best = std::min(best, std::abs(std::polar(radius, theta) - std::polar(radius, pj)));
      }
      return best;
    };
    double worst = 0.0;
    double w1 = 0.0, w2 = 0.0;
    int n_grid = 1024;
    // expected margin governs the grid; refine once if needed
    for (int pass = 0; pass < 2; ++pass) {
      worst = 0.0;
      for (int i = 0; i < n_grid; ++i)
        for (int j = 0; j < n_grid; ++j) {
          double t1 = 2.0 * kPi * (i + 0.5) / n_grid;
          double t2 = 2.0 * kPi * (j + 0.5) / n_grid;
          double d1 = nearest(t1, out.fam_f.count, q * R1);
          double d2 = nearest(t2, out.fam_g.count, q * R2);
          double v = std::max(d1, d2);
          if (v > worst) {
            worst = v;
            w1 = t1;
            w2 = t2;
          }
        }
      double cover = kPi * std::max(q * R1, q * R2) / n_grid * std::sqrt(2.0);
      if (rad - worst - cover > 0.0 || n_grid >= 4096) {
        Certificate c;
        c.id = tag + ".eq4_grid";
        c.kind = CertKind::Coverage;
        c.scale = rad;
        c.margin = rad - worst - cover;
        c.resolution = cover;
        c.sample_count = (std::int64_t)n_grid * n_grid;
        c.note = "distinguished boundary covered by certified bidiscs; "
                 "closed bidisc follows from the maximum principle";
        c.passed = c.margin > slack(rad);
        if (!c.passed)
          c.witness = {std::polar(q * R1, w1), std::polar(q * R2, w2)};
        c.replay = {{"engine", "eq4_grid"}, {"R1", R1},   {"R2", R2}, {"q", q},
                    {"eps", eps},           {"a", out.ml.a}, {"nf", out.fam_f.count},
                    {"ng", out.fam_g.count}};
        out.certs.push_back(c);
        break;
      }
      n_grid *= 4;
    }
  }

  // gamma-neighbourhood report (informational)
  {
    double d1 = R1 * (1.0 - q) + eps;  // | |z1| - R1 | bound on the f tori
    double z2lo = std::sqrt(std::max(0.0, 1.0 - (q * R1 + eps) * (q * R1 + eps)));
    double d2 = std::max(std::abs(z2lo - R2),
                         std::sqrt(std::max(0.0, 1.0 - (q * R1 - eps) * (q * R1 - eps))) - R2);
    double dist_f = std::hypot(d1, d2);
    double e1 = R2 * (1.0 - q) + eps;
    double z1lo = std::sqrt(std::max(0.0, 1.0 - (q * R2 + eps) * (q * R2 + eps)));
    double e2 = std::max(std::abs(z1lo - R1),
                         std::sqrt(std::max(0.0, 1.0 - (q * R2 - eps) * (q * R2 - eps))) - R1);
    double dist_g = std::hypot(e1, e2);
    double worst = std::max(dist_f, dist_g);
    Certificate c = arithmetic_cert(tag + ".gamma", CertKind::Inclusion, gamma - worst, gamma,
                                    "tori within the gamma-neighbourhood of dD1 x dD2 "
                                    "(informational; distance bound " +
                                        std::to_string(worst) + ")");
    if (!c.passed) c.witness = family_point(out.fam_f, 0);
    out.certs.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Proposition 3
// ---------------------------------------------------------------------------

Prop3Result prop3_families(double s, double sigma, double eps, double B, double resolution,
                           int level, const std::string& tag) {
  if (!(sigma > 0.0) || sigma > sigma_limit(s))
    throw Error(Err::SigmaTooLarge, "prop3_families: sigma above sigma'(s)");
  Prop3Result out;
  out.t = solve_footprint_t(s, (5.0 / 3.0) * sigma);
  DerivedConstants d = derive_constants(s, out.t, 0.0);
  out.s_star = d.s1;
  out.D = d.R / ((1.0 - out.t) * d.R2);

  double cm = d.R2 * (1.0 - out.t);
  Equidistributed e;
  try {
    e = equidistributed_points(cm, B, eps);
  } catch (const Error& err) {
    if (err.code() == Err::NoFeasibleCount)
      throw Error(Err::EpsTooLarge, std::string("prop3_families: ") + err.what());
    throw;
  }
  out.B_actual = e.spacing / eps;
  if (2.0 * eps >= out.s_star)
    throw Error(Err::EpsTooLarge, "prop3_families: 2 eps >= s*(s,sigma), tori empty");
  out.tangent = make_tangent_family(s, out.t, e.count, eps, level, tag + ".f");
  out.certs.push_back(lemma2_disjointness(out.tangent, eps));

  // |P_xi|^2 over the lattice disc is an isotropic quadratic in xi:
  // (1-x)^2 + (cm - u(s-xi)/cm)^2-type expansion gives
  // c0 + (1 + u^2/cm^2) |xi - xi*|^2 with a real vertex xi*, so the range
  // over the disc has a closed form.
  double rad_disc = (4.0 / 3.0) * sigma;
  {
    double u = 1.0 - s;
    double k0 = cm - u * s / cm;
    double c1 = 1.0 + u * u / (cm * cm);
    double x_star = (1.0 - k0 * u / cm) / c1;
    double c0 = (1.0 - x_star) * (1.0 - x_star) +
                (k0 + (u / cm) * x_star) * (k0 + (u / cm) * x_star);
    double dist = std::abs(s - x_star);
    double mn = c0 + c1 * std::pow(std::max(0.0, dist - rad_disc), 2);
    double mx = c0 + c1 * (dist + rad_disc) * (dist + rad_disc);
    out.rho = 1.0 - std::sqrt(std::max(0.0, mn) * (1.0 - 1e-12));
    out.r_max_pxi = std::sqrt(mx) * (1.0 + 1e-12);
  }
  if (out.r_max_pxi >= 1.0)
    throw Error(Err::SigmaTooLarge, "prop3_families: lattice crossings reach the sphere");

  // uniform main-lemma constants over the whole lattice disc; several
  // near-sphere annuli are tried and the largest certified a wins
  AffineFunction f0 = family_member(out.tangent, 0);
  bool have_ml = false;
  for (double frac : {0.95, 0.85, 0.6, 0.3}) {
    double hint = out.r_max_pxi + (1.0 - out.r_max_pxi) * frac;
    try {
      SeparationConstants c =
          separation_constants_slab(cxd{1.0 - s, 0.0}, rad_disc, f0, hint, resolution);
      if (!have_ml || c.a > out.ml.a) out.ml = c;
      have_ml = true;
    } catch (const Error&) {
    }
  }
  if (!have_ml)
    throw Error(Err::ResolutionTooCoarse, "prop3_families: no slab annulus certified");
  out.r_prime = std::max(out.ml.r_prime, out.r_max_pxi * (1.0 + 1e-12));

  // C D > 2 (B+1) and the lattice step
  out.C = 2.04 * (out.B_actual + 1.0) / out.D;
  out.alpha = 0.99 * out.ml.a / out.C;
  if (4.0 * eps >= out.alpha)
    throw Error(Err::EpsTooLarge,
                "prop3_families: lattice tori of width 2 eps overlap (alpha = " +
                    std::to_string(out.alpha) + ")");
  out.lattice = make_lattice_family(s, sigma, out.alpha, eps, level, tag + ".g");
  out.certs.push_back(lemma2_disjointness(out.lattice, eps));

  // nearest lattice point within alpha/sqrt(2) < a/C of any xi in the disc
  out.certs.push_back(arithmetic_cert(
      tag + ".alpha_net", CertKind::Coverage,
      out.ml.a / out.C - out.alpha * std::sqrt(0.5), out.ml.a / out.C,
      "lattice alpha-net reaches every xi within a/C"));

  // disc radius D C eps must exceed half the intersection-point spacing
  {
    double rp_max = cm + (1.0 - s) * rad_disc / cm;
    double spacing_max = 2.0 * rp_max * std::sin(kPi / double(out.tangent.count));
    double margin = out.D * out.C * eps - spacing_max;
    out.certs.push_back(arithmetic_cert(tag + ".cd_spacing", CertKind::Coverage, margin,
                                        out.D * out.C * eps,
                                        "D C eps covers the circle point spacing"));
    if (margin <= 0.0)
      throw Error(Err::EpsTooLarge, "prop3_families: C D spacing gate failed");
  }

  // cross-family separation by the z1 band on the sphere
  {
    Band band = tube_z1_band(s, out.t, 0.0, 2.0 * eps, true);
    double lattice_hi = rad_disc + 2.0 * eps;
    double margin = band.valid ? band.lo - lattice_hi : -1.0;
    Certificate c = arithmetic_cert(tag + ".cross_band", CertKind::Disjointness, margin,
                                    sigma,
                                    "tangent tori on |z1-(1-s)| = (5/3) sigma vs lattice "
                                    "tori within (4/3) sigma");
    if (!c.passed) c.witness = family_point(out.tangent, 0);
    out.certs.push_back(c);
    if (!c.passed)
      throw Error(Err::EpsTooLarge, "prop3_families: cross band separation failed");
    // containment in the 2 sigma slab
    double contain = 2.0 * sigma - std::max(band.hi, lattice_hi);
    out.certs.push_back(arithmetic_cert(tag + ".contain", CertKind::Inclusion, contain,
                                        sigma, "all tori inside |z1-(1-s)| <= 2 sigma"));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Proposition 2
// ---------------------------------------------------------------------------

Prop2Result prop2_families(double s, double delta, double q, double s_upper, double eps,
                           double B, double resolution, int level, const std::string& tag,
                           const std::optional<Prop2Forced>& forced) {
  if (!(q > 0.0 && q < 1.0))
    throw Error(Err::BadConfig, "prop2_families: q outside (0,1)");
  // t caps: R(t) > q with eps slack, footprint within delta/2, s1 small
  double r2sq = 2.0 * s - s * s;
  double t;
  if (forced) {
    t = forced->t;
  } else {
    double t_R;
    {
      // 1 - (2t - t^2) r2sq >= q^2 + 4 (1-s) eps  =>  rising-branch bound
      double target = 1.0 - q * q - 4.0 * (1.0 - s) * eps;
      if (target <= 0.0)
        throw Error(Err::ParameterSearchFailed, "prop2_families: q too large");
      double x = std::min(1.0, target / r2sq);  // 2t - t^2 <= x
      t_R = 1.0 - std::sqrt(std::max(0.0, 1.0 - x));
    }
    double t_delta;
    try {
      t_delta = solve_footprint_t(s, delta / 2.0);
    } catch (const Error&) {
      t_delta = t_R;  // delta/2 beyond the peak never binds below t_R
    }
    double t_s;
    {
      // s1 = (2t-t^2) r2sq / (1+R) <= s_upper / 2
      double x = std::min(1.0, s_upper * 1.0 / r2sq);  // conservative, refined below
      t_s = 1.0 - std::sqrt(std::max(0.0, 1.0 - x));
    }
    t = 0.999 * std::min({t_R, t_delta, t_s});
  }
  if (!(t > 0.0)) throw Error(Err::ParameterSearchFailed, "prop2_families: no admissible t");

  DerivedConstants d0 = derive_constants(s, t, 0.0);
  double cm = d0.R2 * (1.0 - t);
  Equidistributed e;
  if (forced) {
    e.count = forced->n;
    e.spacing = 2.0 * cm * std::sin(kPi / double(forced->n));
    if (e.spacing < B * eps * (1.0 - 1e-9) || e.spacing > (B + 1.0) * eps * (1.0 + 1e-9))
      throw Error(Err::ParameterSearchFailed, "prop2_families: forced n out of spacing band");
  } else {
    try {
      e = equidistributed_points(cm, B, eps);
    } catch (const Error& err) {
      throw Error(Err::ParameterSearchFailed, std::string("prop2_families: ") + err.what());
    }
  }
  double B_actual = e.spacing / eps;
  if (2.0 * eps >= d0.s1)
    throw Error(Err::ParameterSearchFailed, "prop2_families: 2 eps >= s1, tori empty");

  std::vector<double> nus;
  if (forced) {
    nus.push_back(forced->nu);
  } else {
    // halving ladder with intermediate steps: the crossing window position
    // scales with nu, so the finer grid can steer it between member angles
    for (int k = 0; k <= 40; ++k)
      for (double mul : {1.0, 1.41, 1.19, 1.68})
        nus.push_back(s / 10.0 * std::pow(0.5, k) * mul);
    nus.push_back(0.0);
  }

  std::string reason = "nu scan exhausted";
  for (double nu : nus) {
    DerivedConstants d = derive_constants(s, t, nu);
    if (d.s2 > s_upper) continue;
    if (2.0 * eps >= d.s2 && nu > 0.0) continue;
    // both families inside the delta slab
    Band bf = tube_z1_band(s, t, 0.0, 2.0 * eps, false);
    Band bg = tube_z1_band(s, t, nu, 2.0 * eps, false);
    if (std::max(bf.hi, bg.hi) > delta) {
      reason = "delta containment failed at nu=" + std::to_string(nu);
      continue;
    }
    ProofParameters params;
    params.s = s;
    params.t = t;
    params.nu = nu;
    params.n_count = e.count;
    params.eps = eps;
    params.B = B_actual;
    params.delta = delta;
    params.q = q;

    TorusFamily fam_f = make_tangent_family(s, t, e.count, eps, level, tag + ".f");
    Certificate l2a = lemma2_disjointness(fam_f, eps);
    if (!l2a.passed) {
      reason = "lemma 2a failed";
      continue;
    }
    TorusFamily probe_g = make_turned_family(s, t, nu, 0.0, e.count, eps, level, tag + ".g");
    Certificate l2b = lemma2_disjointness(probe_g, eps);
    if (!l2b.passed) {
      reason = "lemma 2b failed at nu=" + std::to_string(nu);
      continue;
    }
    PsiChoice psi;
    if (forced) {
      psi.psi = forced->psi;
      TorusFamily probe_f2 = make_tangent_family(s, t, e.count, eps, level, tag + ".pf");
      TorusFamily probe_g2 =
          make_turned_family(s, t, nu, forced->psi, e.count, eps, level, tag + ".pg");
      psi.gate = cross_family_disjointness(probe_f2, probe_g2, eps);
      if (!psi.gate.passed) {
        reason = "forced psi failed the cross gate";
        continue;
      }
    } else {
      try {
        psi = choose_psi(params, d, 2.0 * eps);
      } catch (const Error& err) {
        reason = std::string(err.what());
        continue;
      }
    }

    // main-lemma constants for the class pair (f_0, g_0(psi))
    AffineFunction f0 = tangent_function(s, t, e.count, 0);
    AffineFunction g0 = turned_function(s, t, nu, psi.psi, e.count, 0);
    SeparationConstants ml;
    try {
      double p00 = std::sqrt(intersection_norm_sq(0, psi.psi, params, d));
      std::optional<double> hint;
      if (p00 < 1.0) hint = 0.5 * (p00 + 1.0);
      double sep_res = std::min(resolution, 0.02 * std::max(1.0 - d.R * d.R, 1e-14));
      ml = separation_constants(f0, g0, hint, sep_res);
    } catch (const Error& err) {
      reason = std::string("main lemma: ") + err.what();
      continue;
    }

    // deep bidisc ball around p_0 and the coverage arithmetic
    double rad = std::sqrt(ml.a * eps);
    double off = g0.modulus(tangent_point(s, t, e.count, 0));
    double ballrad = rad - off;
    double need = (1.0 + (B_actual + 1.0) / 2.0) * eps;
    if (!(ballrad > need)) {
      reason = "viability: ball radius " + std::to_string(ballrad) + " below " +
               std::to_string(need);
      continue;
    }
    double w_cov = ballrad - (B_actual + 1.0) * eps / 2.0;
    double w_claim = std::min(w_cov, 2.0 * eps);
    // product membership: q^2 <= R^2 - 2 (1-s) eps ensures |z2| <= cm on the slab
    double prod_margin = (d.R * d.R - 2.0 * (1.0 - s) * eps) - q * q;
    if (prod_margin <= 0.0) {
      reason = "R(t) > q margin failed";
      continue;
    }
    double circle_reach = std::hypot(1.0 - s + w_claim, cm);
    if (circle_reach >= 1.0) {
      reason = "coverage circles reach the sphere";
      continue;
    }

    Prop2Result out;
    out.t = t;
    out.nu = nu;
    out.psi = psi.psi;
    out.s1 = d.s1;
    out.s2 = nu > 0.0 ? d.s2 : d.s1;
    out.ml = ml;
    out.b = ballrad / rad;
    out.w_cov = w_cov;
    out.B_actual = B_actual;
    out.r_prime = std::max(ml.r_prime, circle_reach * (1.0 + 1e-12));
    out.fam_f = std::move(fam_f);
    out.fam_g = make_turned_family(s, t, nu, psi.psi, e.count, eps, level, tag + ".g");
    out.certs.push_back(l2a);
    Certificate l2b_psi = lemma2_disjointness(out.fam_g, eps);
    if (!l2b_psi.passed) {
      reason = "lemma 2b failed after the psi turn";
      continue;
    }
    out.certs.push_back(l2b_psi);
    out.certs.push_back(psi.gate);
    out.certs.push_back(arithmetic_cert(tag + ".viability", CertKind::Coverage,
                                        ballrad - need, eps,
                                        "deep bidisc balls cover the C_t tube"));
    out.certs.push_back(arithmetic_cert(tag + ".w_cov", CertKind::Coverage, w_cov - eps, eps,
                                        "covered tube width w_cov >= eps"));
    out.certs.push_back(arithmetic_cert(tag + ".product", CertKind::Inclusion, prod_margin,
                                        1.0, "q ball slab sits inside the covered product"));
    out.certs.push_back(arithmetic_cert(tag + ".delta", CertKind::Inclusion,
                                        delta - std::max(bf.hi, bg.hi), delta,
                                        "tubes inside the delta slab"));
    return out;
  }
  throw Error(Err::ParameterSearchFailed, "prop2_families: " + reason);
}

}  // namespace hullforge
