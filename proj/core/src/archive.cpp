#include "hullforge/archive.hpp"

#include <cstdio>
#include <fstream>

namespace hullforge {

void validate(const RunConfig& cfg) {
  auto fail = [](const std::string& field, const std::string& why) {
    throw Error(Err::BadConfig, "config." + field + ": " + why);
  };
  if (!(cfg.beta > 0.0 && cfg.beta < 1.0)) fail("beta", "must lie in (0,1)");
  if (cfg.depth < 1) fail("depth", "must be >= 1");
  if (!(cfg.B >= 5.0)) fail("B", "must be >= 5");
  if (!(cfg.resolution > 0.0 && cfg.resolution <= 0.1))
    fail("resolution", "must lie in (0, 0.1]");
  if (!(cfg.eps_initial > 0.0 && cfg.eps_initial < 1.0))
    fail("eps_initial", "must lie in (0,1)");
  if (cfg.budget_tori < 0) fail("budget_tori", "must be >= 0");
  if (!(cfg.budget_seconds > 0.0)) fail("budget_seconds", "must be > 0");
  if (cfg.out_path.empty()) fail("out", "must be a path");
}

nlohmann::json to_json(const RunConfig& cfg) {
  return {{"beta", cfg.beta},
          {"depth", cfg.depth},
          {"B", cfg.B},
          {"resolution", cfg.resolution},
          {"eps_initial", cfg.eps_initial},
          {"budget_tori", cfg.budget_tori},
          {"budget_seconds", cfg.budget_seconds},
          {"seed", cfg.seed},
          {"out", cfg.out_path}};
}

RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig cfg;
  cfg.beta = j.value("beta", cfg.beta);
  cfg.depth = j.value("depth", cfg.depth);
  cfg.B = j.value("B", cfg.B);
  cfg.resolution = j.value("resolution", cfg.resolution);
  cfg.eps_initial = j.value("eps_initial", cfg.eps_initial);
  cfg.budget_tori = j.value("budget_tori", cfg.budget_tori);
  cfg.budget_seconds = j.value("budget_seconds", cfg.budget_seconds);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.out_path = j.value("out", cfg.out_path);
  return cfg;
}

namespace {

nlohmann::json torus_to_json(const SolidTorus& t) {
  nlohmann::json j;
  j["id"] = t.id;
  j["f"] = to_json(t.f);
  j["sigma"] = t.sigma;
  j["r"] = t.r;
  j["s"] = t.s;
  j["level"] = t.level;
  if (t.parent_id) j["parent"] = *t.parent_id;
  return j;
}

SolidTorus torus_from_json(const nlohmann::json& j) {
  SolidTorus t;
  t.id = j.at("id").get<std::int64_t>();
  t.f = affine_from_json(j.at("f"));
  t.sigma = j.at("sigma").get<double>();
  t.r = j.at("r").get<double>();
  t.s = j.at("s").get<double>();
  t.level = j.at("level").get<int>();
  if (j.contains("parent")) t.parent_id = j.at("parent").get<std::int64_t>();
  return t;
}

nlohmann::json cxd_to_json(const cxd& z) { return nlohmann::json::array({z.real(), z.imag()}); }
cxd cxd_from_json(const nlohmann::json& j) { return {j[0].get<double>(), j[1].get<double>()}; }

nlohmann::json gen_to_json(const GenerationRecord& g) {
  nlohmann::json j;
  j["level"] = g.level;
  j["eps_level"] = g.eps_level;
  j["r_level"] = g.r_level;
  j["s_values"] = g.s_values;
  j["virtual_count"] = g.virtual_count;
  j["tori"] = nlohmann::json::array();
  for (const auto& t : g.tori) j["tori"].push_back(torus_to_json(t));
  j["certificates"] = nlohmann::json::array();
  for (const auto& c : g.certificates) j["certificates"].push_back(to_json(c));
  j["parent_map"] = nlohmann::json::array();
  for (const auto& [child, parent] : g.parent_map)
    j["parent_map"].push_back(nlohmann::json::array({child, parent}));
  j["bidiscs"] = nlohmann::json::array();
  for (const auto& b : g.bidiscs)
    j["bidiscs"].push_back({{"R1", b.spec.R1},
                            {"R2", b.spec.R2},
                            {"q", b.spec.q},
                            {"nf", b.nf},
                            {"ng", b.ng},
                            {"s1", b.s1},
                            {"s2", b.s2},
                            {"a", b.a},
                            {"r_prime", b.r_prime},
                            {"bidisc_radius", b.bidisc_radius},
                            {"B_actual", b.B_actual},
                            {"eps", b.eps}});
  j["classes"] = nlohmann::json::array();
  for (const auto& cs : g.classes) {
    nlohmann::json jc;
    jc["s_class"] = cs.s_class;
    jc["sigma"] = cs.sigma;
    jc["eps"] = cs.eps;
    jc["t3"] = cs.t3;
    jc["s_star"] = cs.s_star;
    jc["alpha"] = cs.alpha;
    jc["a3"] = cs.a3;
    jc["C"] = cs.C;
    jc["D"] = cs.D;
    jc["rho"] = cs.rho;
    jc["r_prime3"] = cs.r_prime3;
    jc["r_prime4"] = cs.r_prime4;
    jc["B3"] = cs.B3;
    jc["n3"] = cs.n3;
    jc["lattice_count"] = cs.lattice_count;
    jc["template"] = {{"t", cs.templ.t},
                      {"nu", cs.templ.nu},
                      {"psi", cs.templ.psi},
                      {"s1", cs.templ.s1},
                      {"s2", cs.templ.s2},
                      {"a", cs.templ.a},
                      {"r_prime", cs.templ.r_prime},
                      {"w_cov", cs.templ.w_cov},
                      {"b", cs.templ.b},
                      {"B_actual", cs.templ.B_actual},
                      {"n", cs.templ.n},
                      {"eps", cs.templ.eps}};
    jc["parents"] = cs.parent_ids;
    j["classes"].push_back(jc);
  }
  return j;
}

GenerationRecord gen_from_json(const nlohmann::json& j) {
  GenerationRecord g;
  g.level = j.at("level").get<int>();
  g.eps_level = j.at("eps_level").get<double>();
  g.r_level = j.at("r_level").get<double>();
  g.s_values = j.at("s_values").get<std::vector<double>>();
  g.virtual_count = j.at("virtual_count").get<std::int64_t>();
  for (const auto& t : j.at("tori")) g.tori.push_back(torus_from_json(t));
  for (const auto& c : j.at("certificates")) g.certificates.push_back(certificate_from_json(c));
  for (const auto& p : j.at("parent_map"))
    g.parent_map.push_back({p[0].get<std::int64_t>(), p[1].get<std::int64_t>()});
  for (const auto& b : j.at("bidiscs")) {
    Level1Bidisc lb;
    lb.spec = {b.at("R1").get<double>(), b.at("R2").get<double>(), b.at("q").get<double>()};
    lb.nf = b.at("nf").get<std::int64_t>();
    lb.ng = b.at("ng").get<std::int64_t>();
    lb.s1 = b.at("s1").get<double>();
    lb.s2 = b.at("s2").get<double>();
    lb.a = b.at("a").get<double>();
    lb.r_prime = b.at("r_prime").get<double>();
    lb.bidisc_radius = b.at("bidisc_radius").get<double>();
    lb.B_actual = b.at("B_actual").get<double>();
    lb.eps = b.at("eps").get<double>();
    g.bidiscs.push_back(lb);
  }
  for (const auto& jc : j.at("classes")) {
    ClassSolve cs;
    cs.s_class = jc.at("s_class").get<double>();
    cs.sigma = jc.at("sigma").get<double>();
    cs.eps = jc.at("eps").get<double>();
    cs.t3 = jc.at("t3").get<double>();
    cs.s_star = jc.at("s_star").get<double>();
    cs.alpha = jc.at("alpha").get<double>();
    cs.a3 = jc.at("a3").get<double>();
    cs.C = jc.at("C").get<double>();
    cs.D = jc.at("D").get<double>();
    cs.rho = jc.at("rho").get<double>();
    cs.r_prime3 = jc.at("r_prime3").get<double>();
    cs.r_prime4 = jc.at("r_prime4").get<double>();
    cs.B3 = jc.at("B3").get<double>();
    cs.n3 = jc.at("n3").get<std::int64_t>();
    cs.lattice_count = jc.at("lattice_count").get<std::int64_t>();
    const auto& tp = jc.at("template");
    cs.templ = {tp.at("t").get<double>(),        tp.at("nu").get<double>(),
                tp.at("psi").get<double>(),      tp.at("s1").get<double>(),
                tp.at("s2").get<double>(),       tp.at("a").get<double>(),
                tp.at("r_prime").get<double>(),  tp.at("w_cov").get<double>(),
                tp.at("b").get<double>(),        tp.at("B_actual").get<double>(),
                tp.at("n").get<std::int64_t>(),  tp.at("eps").get<double>()};
    cs.parent_ids = jc.at("parents").get<std::vector<std::int64_t>>();
    g.classes.push_back(cs);
  }
  return g;
}

}  // namespace

nlohmann::json to_json(const TreeArchive& a) {
  nlohmann::json j;
  j["format"] = "hullforge-tree";
  j["version"] = a.format_version;
  j["config"] = to_json(a.config);
  j["beta"] = a.tree.beta;
  j["status"] = a.tree.status == TreeStatus::Complete ? "Complete" : "PartialWithWitness";
  j["status_note"] = a.tree.status_note;
  j["generations"] = nlohmann::json::array();
  for (const auto& g : a.tree.generations) j["generations"].push_back(gen_to_json(g));
  j["hull_chain"] = nlohmann::json::array();
  for (const auto& c : a.tree.hull_chain) j["hull_chain"].push_back(to_json(c));
  return j;
}

TreeArchive archive_from_json(const nlohmann::json& j) {
  if (!j.contains("format") || j.at("format") != "hullforge-tree")
    throw Error(Err::BadArchive, "not a hullforge tree archive");
  TreeArchive a;
  a.format_version = j.at("version").get<int>();
  if (a.format_version != 1)
    throw Error(Err::BadArchive,
                "unsupported archive version " + std::to_string(a.format_version));
  a.config = config_from_json(j.at("config"));
  a.tree.beta = j.at("beta").get<double>();
  a.tree.status = j.at("status").get<std::string>() == "Complete"
                      ? TreeStatus::Complete
                      : TreeStatus::PartialWithWitness;
  a.tree.status_note = j.value("status_note", "");
  for (const auto& g : j.at("generations")) a.tree.generations.push_back(gen_from_json(g));
  for (const auto& c : j.at("hull_chain")) a.tree.hull_chain.push_back(certificate_from_json(c));
  return a;
}

void save_archive(const TreeArchive& a, const std::string& path) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Err::BadConfig, "save_archive: cannot open " + tmp);
    out << to_json(a).dump(1) << "\n";
    if (!out) throw Error(Err::BadConfig, "save_archive: write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw Error(Err::BadConfig, "save_archive: rename to " + path + " failed");
}

TreeArchive load_archive(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Err::BadArchive, "load_archive: cannot open " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Err::BadArchive, std::string("load_archive: ") + e.what());
  }
  return archive_from_json(j);
}

}  // namespace hullforge
