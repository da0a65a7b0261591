#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "hullforge/archive.hpp"
#include "hullforge/export.hpp"
#include "hullforge/verify.hpp"

using namespace hullforge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitPartial = 2;
constexpr int kExitCertFailed = 3;

// line/column for a byte offset, for config parse errors
std::pair<int, int> line_of_offset(const std::string& text, size_t byte) {
  int line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Err::BadConfig, "config file not readable: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return config_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = line_of_offset(text, e.byte);
    throw Error(Err::BadConfig, path + ":" + std::to_string(line) + ":" +
                                    std::to_string(col) + ": " + e.what());
  }
}

int cmd_construct(const RunConfig& cfg, bool json_out) {
  validate(cfg);
  Budget budget{cfg.budget_tori, cfg.budget_seconds};
  ConstructionTree tree =
      build_cantor_tree(cfg.beta, cfg.depth, budget, cfg.B, cfg.eps_initial, cfg.resolution);
  TreeArchive archive;
  archive.config = cfg;
  archive.tree = tree;
  save_archive(archive, cfg.out_path);

  std::int64_t certs = 0, failed = 0;
  for (const auto& g : tree.generations)
    for (const auto& c : g.certificates) {
      ++certs;
      if (!c.passed) ++failed;
    }
  if (json_out) {
    nlohmann::json j;
    j["status"] = tree.status == TreeStatus::Complete ? "Complete" : "PartialWithWitness";
    j["levels"] = tree.generations.size();
    j["certificates"] = certs;
    j["failed"] = failed;
    j["out"] = cfg.out_path;
    std::cout << j.dump(1) << "\n";
  } else {
    std::cout << "status: "
              << (tree.status == TreeStatus::Complete ? "Complete" : "PartialWithWitness")
              << "\n";
    if (!tree.status_note.empty()) std::cout << "note: " << tree.status_note << "\n";
    for (const auto& g : tree.generations)
      std::cout << "level " << g.level << ": eps=" << g.eps_level << " r=" << g.r_level
                << " tori=" << g.tori.size() << " virtual=" << g.virtual_count << "\n";
    std::cout << "certificates: " << certs << " (" << failed << " failed)\n";
    std::cout << "archive: " << cfg.out_path << "\n";
  }
  if (failed > 0) return kExitCertFailed;
  if (tree.status != TreeStatus::Complete) return kExitPartial;
  return kExitOk;
}

int cmd_verify(const std::string& path, double resolution_scale, bool json_out) {
  TreeArchive a = load_archive(path);
  VerifyReport rep = reverify_tree(a.tree, resolution_scale);
  if (json_out) {
    nlohmann::json j;
    j["total"] = rep.total;
    j["passed"] = rep.passed;
    j["failed"] = rep.failed;
    j["worst_margin"] = rep.worst_margin;
    j["worst_id"] = rep.worst_id;
    j["failures"] = nlohmann::json::array();
    for (const auto& c : rep.failures) j["failures"].push_back(to_json(c));
    std::cout << j.dump(1) << "\n";
  } else {
    std::cout << "certificates: " << rep.total << " passed: " << rep.passed
              << " failed: " << rep.failed << "\n";
    std::cout << "worst margin: " << rep.worst_margin << " at " << rep.worst_id << "\n";
    for (const auto& c : rep.failures) {
      std::cout << "FAIL " << c.id << ": " << c.note;
      if (c.witness)
        std::cout << " witness (" << c.witness->z1.real() << "," << c.witness->z1.imag()
                  << "," << c.witness->z2.real() << "," << c.witness->z2.imag() << ")";
      std::cout << "\n";
    }
  }
  return rep.failed == 0 ? kExitOk : kExitCertFailed;
}

int cmd_query(const std::string& path, double re1, double im1, double re2, double im2,
              int level, bool json_out) {
  TreeArchive a = load_archive(path);
  ComplexPoint2 z{{re1, im1}, {re2, im2}};
  CoveragePath cp = point_coverage_query(a.tree, z, level);
  if (json_out) {
    nlohmann::json j;
    j["covered"] = cp.covered;
    j["steps"] = nlohmann::json::array();
    for (const auto& s : cp.steps)
      j["steps"].push_back({{"kind", s.kind}, {"detail", s.detail}, {"margin", s.margin}});
    std::cout << j.dump(1) << "\n";
  } else {
    std::cout << (cp.covered ? "covered" : "NotCovered") << " at level " << level << "\n";
    for (const auto& s : cp.steps)
      std::cout << "  " << s.kind << ": " << s.detail << " (margin " << s.margin << ")\n";
  }
  return kExitOk;
}

int cmd_export(const std::string& path, const std::string& projection,
               const std::string& out, double px, double py, double pz, double pw) {
  TreeArchive a = load_archive(path);
  Projection proj =
      projection == "coordinates" ? Projection::Coordinates : Projection::Stereographic;
  double n = std::sqrt(px * px + py * py + pz * pz + pw * pw);
  if (n == 0.0) throw Error(Err::BadConfig, "export: zero pole");
  std::array<double, 4> pole{px / n, py / n, pz / n, pw / n};
  ExportStats st = export_tree(a.tree, proj, pole, out);
  std::cout << "rows: " << st.rows << " skipped_pole: " << st.skipped_pole << " -> " << out
            << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hullforge: certified nested solid-torus constructions in the 3-sphere"};
  app.require_subcommand(1);
  bool json_out = false;
  app.add_flag("--format-json,--format", json_out, "machine readable verdict summary");

  RunConfig cfg;
  std::string config_path;
  auto* construct = app.add_subcommand("construct", "build a generation tree and archive it");
  construct->add_option("--config", config_path, "JSON config file");
  construct->add_option("--beta", cfg.beta, "ball radius in (0,1)");
  construct->add_option("--depth", cfg.depth, "number of generations");
  construct->add_option("--B", cfg.B, "spacing constant, at least 5");
  construct->add_option("--resolution", cfg.resolution, "certificate sampling resolution");
  construct->add_option("--eps", cfg.eps_initial, "initial eps for the halving search");
  construct->add_option("--seed", cfg.seed, "seed for randomized sampling");
  construct->add_option("--out", cfg.out_path, "archive output path");
  construct->add_option("--budget-tori", cfg.budget_tori, "max materialized tori per level");
  construct->add_option("--budget-seconds", cfg.budget_seconds, "wall clock budget");

  std::string archive_path, out_path = "tori.csv", projection = "stereographic";
  double resolution_scale = 1.0;
  auto* verify = app.add_subcommand("verify", "re-run every certificate of an archive");
  verify->add_option("archive", archive_path, "archive path")->required();
  verify->add_option("--resolution-scale", resolution_scale,
                     "scale factor on sampling density");

  double re1 = 0, im1 = 0, re2 = 0, im2 = 0;
  int level = 1;
  auto* query = app.add_subcommand("query", "coverage chain for a point");
  query->add_option("archive", archive_path, "archive path")->required();
  query->add_option("--re1", re1)->required();
  query->add_option("--im1", im1);
  query->add_option("--re2", re2)->required();
  query->add_option("--im2", im2);
  query->add_option("--level", level);

  double px = 0, py = 0, pz = 0, pw = 1;
  auto* exprt = app.add_subcommand("export", "tabulate torus samples for plotting");
  exprt->add_option("archive", archive_path, "archive path")->required();
  exprt->add_option("--projection", projection, "stereographic|coordinates");
  exprt->add_option("--out", out_path, "CSV output path");
  exprt->add_option("--pole-x", px);
  exprt->add_option("--pole-y", py);
  exprt->add_option("--pole-z", pz);
  exprt->add_option("--pole-w", pw);

  CLI11_PARSE(app, argc, argv);
  try {
    if (construct->parsed()) {
      if (!config_path.empty()) {
        RunConfig file_cfg = load_config_file(config_path);
        // explicit command line flags win over config file values
        if (!construct->count("--beta")) cfg.beta = file_cfg.beta;
        if (!construct->count("--depth")) cfg.depth = file_cfg.depth;
        if (!construct->count("--B")) cfg.B = file_cfg.B;
        if (!construct->count("--resolution")) cfg.resolution = file_cfg.resolution;
        if (!construct->count("--eps")) cfg.eps_initial = file_cfg.eps_initial;
        if (!construct->count("--seed")) cfg.seed = file_cfg.seed;
        if (!construct->count("--out")) cfg.out_path = file_cfg.out_path;
        if (!construct->count("--budget-tori")) cfg.budget_tori = file_cfg.budget_tori;
        if (!construct->count("--budget-seconds"))
          cfg.budget_seconds = file_cfg.budget_seconds;
      }
      return cmd_construct(cfg, json_out);
    }
    if (verify->parsed()) return cmd_verify(archive_path, resolution_scale, json_out);
    if (query->parsed()) return cmd_query(archive_path, re1, im1, re2, im2, level, json_out);
    if (exprt->parsed()) return cmd_export(archive_path, projection, out_path, px, py, pz, pw);
  } catch (const Error& e) {
    std::cerr << "error [" << err_name(e.code()) << "]: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
