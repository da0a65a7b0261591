#include "hullforge/samplers.hpp"

#include <algorithm>

namespace hullforge {

namespace {
constexpr double kPi = 3.14159265358979323846;

// theta in [0, pi/2], phi/chi in [0, 2pi): coordinate steps move a sphere
// point by at most r * step, so half-steps bound the covering radius.
void sphere_grid(double r, double h, const std::function<void(const ComplexPoint2&)>& fn) {
  double step = 2.0 * h / (3.0 * r);  // covering <= r*(3*step/2)/... = h
  int nt = std::max(1, (int)std::ceil((kPi / 2.0) / step));
  int np = std::max(1, (int)std::ceil((2.0 * kPi) / step));
  for (int i = 0; i < nt; ++i) {
    double theta = (kPi / 2.0) * (i + 0.5) / nt;
    double c = r * std::cos(theta), s = r * std::sin(theta);
    for (int j = 0; j < np; ++j) {
      double phi = 2.0 * kPi * (j + 0.5) / np;
      cxd z1 = std::polar(c, phi);
      for (int k = 0; k < np; ++k) {
        double chi = 2.0 * kPi * (k + 0.5) / np;
        fn({z1, std::polar(s, chi)});
      }
    }
  }
}
}  // namespace

RegionSampler sphere_sampler(double r, double h) {
  RegionSampler s;
  s.name = "sphere";
  s.covering_radius = h;
  s.for_each = [r, h](const std::function<void(const ComplexPoint2&)>& fn) {
    sphere_grid(r, h, fn);
  };
  return s;
}

RegionSampler annulus_sampler(double r_lo, double r_hi, double h) {
  if (!(r_lo < r_hi)) throw Error(Err::EmptyRegion, "annulus_sampler: r_lo >= r_hi");
  RegionSampler s;
  s.name = "annulus";
  s.covering_radius = h;
  int shells = std::max(2, (int)std::ceil((r_hi - r_lo) / h) + 1);
  s.for_each = [=](const std::function<void(const ComplexPoint2&)>& fn) {
    for (int i = 0; i < shells; ++i) {
      double r = r_lo + (r_hi - r_lo) * double(i) / double(shells - 1);
      sphere_grid(r, h / 2.0, fn);
    }
  };
  return s;
}

RegionSampler annulus_sampler_by_count(double r_lo, double r_hi, std::int64_t target_count) {
  // 4-volume of the annulus is (pi^2/2)(r_hi^4 - r_lo^4)
  double vol = (kPi * kPi / 2.0) * (std::pow(r_hi, 4) - std::pow(r_lo, 4));
  double h = std::pow(std::max(vol, 1e-12) / double(target_count), 0.25);
  return annulus_sampler(r_lo, r_hi, h);
}

RegionSampler ball_sampler(double r, double h) {
  RegionSampler s;
  s.name = "ball";
  s.covering_radius = h;
  s.for_each = [r, h](const std::function<void(const ComplexPoint2&)>& fn) {
    double step = h;  // 4-d grid covering radius = step * sqrt(4)/2 = step
    int n = std::max(1, (int)std::ceil(2.0 * r / step));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) {
            double x1 = -r + 2.0 * r * (a + 0.5) / n;
            double y1 = -r + 2.0 * r * (b + 0.5) / n;
            double x2 = -r + 2.0 * r * (c + 0.5) / n;
            double y2 = -r + 2.0 * r * (d + 0.5) / n;
            ComplexPoint2 z{{x1, y1}, {x2, y2}};
            double nz = z.norm();
            if (nz > r) {
              if (nz > r + step) continue;  // farther than one cell from the ball
              z = z * (r / nz);
            }
            fn(z);
          }
  };
  return s;
}

}  // namespace hullforge
