#pragma once

#include <array>
#include <optional>
#include <string>

#include "hullforge/construction.hpp"

namespace hullforge {

enum class Projection { Stereographic, Coordinates };

struct ExportStats {
  std::int64_t rows = 0;
  std::int64_t skipped_pole = 0;  // sample collided with the projection pole
};

// One CSV row per sample point: level, torus id, then 3 stereographic or 4
// raw coordinates. The pole is a unit vector in R^4.
ExportStats export_tree(const ConstructionTree& tree, Projection proj,
                        const std::array<double, 4>& pole, const std::string& out_path,
                        int n_tube = 8, int n_fiber = 32);

std::optional<std::array<double, 3>> stereographic(const ComplexPoint2& z,
                                                   const std::array<double, 4>& pole);

}  // namespace hullforge
