#include "hullforge/export.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace hullforge {

namespace {

std::array<double, 4> flatten(const ComplexPoint2& z) {
  return {z.z1.real(), z.z1.imag(), z.z2.real(), z.z2.imag()};
}

// orthonormal basis of the pole's complement, deterministic
std::array<std::array<double, 4>, 3> pole_basis(const std::array<double, 4>& pole) {
  std::array<std::array<double, 4>, 4> cand = {{{1, 0, 0, 0}, {0, 1, 0, 0},
                                                {0, 0, 1, 0}, {0, 0, 0, 1}}};
  std::array<std::array<double, 4>, 3> basis{};
  int got = 0;
  for (const auto& c : cand) {
    if (got == 3) break;
    std::array<double, 4> v = c;
    double dp = 0.0;
    for (int i = 0; i < 4; ++i) dp += v[i] * pole[i];
    for (int i = 0; i < 4; ++i) v[i] -= dp * pole[i];
    for (int g = 0; g < got; ++g) {
      double d2 = 0.0;
      for (int i = 0; i < 4; ++i) d2 += v[i] * basis[g][i];
      for (int i = 0; i < 4; ++i) v[i] -= d2 * basis[g][i];
    }
    double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
    if (n < 1e-9) continue;
    for (int i = 0; i < 4; ++i) v[i] /= n;
    basis[got++] = v;
  }
  return basis;
}

}  // namespace

std::optional<std::array<double, 3>> stereographic(const ComplexPoint2& z,
                                                   const std::array<double, 4>& pole) {
  std::array<double, 4> x = flatten(z);
  double nx = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
  if (nx > 0.0)
    for (auto& v : x) v /= nx;  // project samples of r-spheres onto the unit sphere
  double dp = 0.0;
  for (int i = 0; i < 4; ++i) dp += x[i] * pole[i];
  double denom = 1.0 - dp;
  if (std::abs(denom) < 1e-12) return std::nullopt;  // pole collision
  auto basis = pole_basis(pole);
  std::array<double, 3> out{};
  for (int k = 0; k < 3; ++k) {
    double c = 0.0;
    for (int i = 0; i < 4; ++i) c += x[i] * basis[k][i];
    out[k] = c / denom;
  }
  return out;
}

ExportStats export_tree(const ConstructionTree& tree, Projection proj,
                        const std::array<double, 4>& pole, const std::string& out_path,
                        int n_tube, int n_fiber) {
  ExportStats stats;
  std::string tmp = out_path + ".tmp";
  std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Err::BadConfig, "export_tree: cannot open " + tmp);
  if (proj == Projection::Stereographic)
    out << "level,torus_id,x,y,z\n";
  else
    out << "level,torus_id,re_z1,im_z1,re_z2,im_z2\n";
  char buf[256];
  for (const auto& gen : tree.generations) {
    for (const auto& t : gen.tori) {
      TorusMesh mesh = torus_sample(t, 1, n_tube, n_fiber);
      for (const auto& z : mesh.points) {
        if (proj == Projection::Stereographic) {
          auto p = stereographic(z, pole);
          if (!p) {
            ++stats.skipped_pole;
            continue;
          }
          std::snprintf(buf, sizeof(buf), "%d,%" PRId64 ",%.17g,%.17g,%.17g\n", t.level,
                        t.id, (*p)[0], (*p)[1], (*p)[2]);
        } else {
          std::snprintf(buf, sizeof(buf), "%d,%" PRId64 ",%.17g,%.17g,%.17g,%.17g\n",
                        t.level, t.id, z.z1.real(), z.z1.imag(), z.z2.real(), z.z2.imag());
        }
        out << buf;
        ++stats.rows;
      }
    }
  }
  out.close();
  if (std::rename(tmp.c_str(), out_path.c_str()) != 0)
    throw Error(Err::BadConfig, "export_tree: rename failed");
  return stats;
}

}  // namespace hullforge
