#include "hullforge/torus.hpp"

#include <algorithm>
#include <cmath>

namespace hullforge {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

SolidTorus make_torus(const AffineFunction& f, double sigma, double r, int level,
                      std::optional<std::int64_t> parent_id, std::int64_t id) {
  double d = std::abs(f.f0);
  double s = 1.0 - d;
  if (!(s < 1.0 + 1e-15) || !(d < r) || !(sigma < s - (1.0 - r)))
    throw Error(Err::EmptyTorus, "make_torus: sigma >= s - (1-r) or line misses sphere");
  if (sigma <= 0.0) throw Error(Err::EmptyTorus, "make_torus: sigma <= 0");
  SolidTorus t;
  t.f = f;
  t.sigma = sigma;
  t.r = r;
  t.s = s;
  t.level = level;
  t.parent_id = parent_id;
  t.id = id;
  return t;
}

TorusMesh torus_sample(const SolidTorus& t, int n_radial, int n_tube, int n_fiber) {
  if (n_radial < 1 || n_tube < 1 || n_fiber < 1)
    throw Error(Err::EmptyRegion, "torus_sample: mesh sizes must be >= 1");
  double d = std::abs(t.f.f0);
  if (!(d < t.r) || !(t.sigma < t.s - (1.0 - t.r)))
    throw Error(Err::EmptyTorus, "torus_sample: empty torus");

  Unitary2 u = normalizing_unitary(t.f);
  Unitary2 uinv = u.adjoint();
  double one_minus_s = 1.0 - t.s;

  TorusMesh mesh;
  mesh.points.reserve(static_cast<size_t>(n_radial) * n_tube * n_fiber);
  for (int i = 0; i < n_radial; ++i) {
    double rho = (n_radial == 1) ? 0.0 : t.sigma * double(i) / double(n_radial - 1);
    for (int j = 0; j < n_tube; ++j) {
      double theta = 2.0 * kPi * double(j) / double(n_tube);
      cxd z1 = one_minus_s + std::polar(rho, theta);
      double z2abs_sq = t.r * t.r - std::norm(z1);
      double z2abs = std::sqrt(std::max(0.0, z2abs_sq));
      for (int k = 0; k < n_fiber; ++k) {
        double phi = 2.0 * kPi * double(k) / double(n_fiber);
        ComplexPoint2 w{z1, std::polar(z2abs, phi)};
        mesh.points.push_back(uinv.apply(w));
      }
    }
  }
  // parameter-step displacement bounds: rho step, tube arc, fiber arc
  double h_rho = (n_radial == 1) ? t.sigma : 0.5 * t.sigma / double(n_radial - 1);
  double h_tube = t.sigma * kPi / double(n_tube);
  double h_fiber = t.r * kPi / double(n_fiber);
  // z1 motion drags |z2| by at most the same amount on the sphere
  mesh.covering_radius = 2.0 * (h_rho + h_tube) + h_fiber;
  return mesh;
}

double torus_diameter(const SolidTorus& t) {
  // boundary ring rho = sigma dominates; keep the core ring as well
  const int n_tube = 12, n_fiber = 48;
  TorusMesh boundary;
  {
    Unitary2 uinv = normalizing_unitary(t.f).adjoint();
    double one_minus_s = 1.0 - t.s;
    for (double rho : {0.0, t.sigma}) {
      for (int j = 0; j < n_tube; ++j) {
        double theta = 2.0 * kPi * j / n_tube;
        cxd z1 = one_minus_s + std::polar(rho, theta);
        double z2abs = std::sqrt(std::max(0.0, t.r * t.r - std::norm(z1)));
        for (int k = 0; k < n_fiber; ++k) {
          double phi = 2.0 * kPi * k / n_fiber;
          boundary.points.push_back(uinv.apply({z1, std::polar(z2abs, phi)}));
        }
      }
    }
  }
  double best = 0.0;
  for (size_t i = 0; i < boundary.points.size(); ++i)
    for (size_t j = i + 1; j < boundary.points.size(); ++j)
      best = std::max(best, dist(boundary.points[i], boundary.points[j]));
  return best;
}

bool torus_contains(const SolidTorus& t, const ComplexPoint2& z, double tol) {
  if (std::abs(z.norm() - t.r) > tol) return false;
  return t.f.modulus(z) <= t.sigma + tol;
}

}  // namespace hullforge
