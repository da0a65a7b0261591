#pragma once

#include <optional>
#include <string>

#include "hullforge/construction.hpp"

namespace hullforge {

struct RunConfig {
  double beta = 0.5;
  int depth = 2;
  double B = 10.0;
  double resolution = 1e-3;
  double eps_initial = 1e-3;
  std::int64_t budget_tori = 2'000'000;
  double budget_seconds = 3600.0;
  std::uint64_t seed = 1;
  std::string out_path = "tree.json";
};

void validate(const RunConfig& cfg);  // throws BadConfig with a precise message

nlohmann::json to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::json& j);

struct TreeArchive {
  int format_version = 1;
  RunConfig config;
  ConstructionTree tree;
};

nlohmann::json to_json(const TreeArchive& a);
TreeArchive archive_from_json(const nlohmann::json& j);

// Atomic write (temp file + rename); serialization is deterministic.
void save_archive(const TreeArchive& a, const std::string& path);
TreeArchive load_archive(const std::string& path);

}  // namespace hullforge
