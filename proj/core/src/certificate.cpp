#include "hullforge/certificate.hpp"

namespace hullforge {

const char* cert_kind_name(CertKind k) {
  switch (k) {
    case CertKind::Disjointness: return "Disjointness";
    case CertKind::Inclusion: return "Inclusion";
    case CertKind::Coverage: return "Coverage";
    case CertKind::LowerBound: return "LowerBound";
  }
  return "Unknown";
}

CertKind cert_kind_from(const std::string& name) {
  if (name == "Disjointness") return CertKind::Disjointness;
  if (name == "Inclusion") return CertKind::Inclusion;
  if (name == "Coverage") return CertKind::Coverage;
  if (name == "LowerBound") return CertKind::LowerBound;
  throw Error(Err::BadArchive, "unknown certificate kind: " + name);
}

Certificate make_pass(std::string id, CertKind kind, double margin, double resolution,
                      std::int64_t samples, double scale, std::string note) {
  Certificate c;
  c.id = std::move(id);
  c.kind = kind;
  c.margin = margin;
  c.resolution = resolution;
  c.sample_count = samples;
  c.scale = scale;
  c.note = std::move(note);
  c.passed = margin > slack(scale);
  return c;
}

Certificate make_fail(std::string id, CertKind kind, double margin, double resolution,
                      std::int64_t samples, double scale, std::string note,
                      const ComplexPoint2& witness) {
  Certificate c = make_pass(std::move(id), kind, margin, resolution, samples, scale,
                            std::move(note));
  c.passed = false;
  c.witness = witness;
  return c;
}

nlohmann::json to_json(const ComplexPoint2& p) {
  return nlohmann::json::array(
      {p.z1.real(), p.z1.imag(), p.z2.real(), p.z2.imag()});
}

ComplexPoint2 point_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 4) throw Error(Err::BadArchive, "bad point");
  return {cxd{j[0].get<double>(), j[1].get<double>()},
          cxd{j[2].get<double>(), j[3].get<double>()}};
}

nlohmann::json to_json(const AffineFunction& f) {
  return nlohmann::json::array({f.f0.real(), f.f0.imag(), f.f1.real(), f.f1.imag(),
                                f.f2.real(), f.f2.imag()});
}

AffineFunction affine_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 6) throw Error(Err::BadArchive, "bad affine function");
  return {cxd{j[0].get<double>(), j[1].get<double>()},
          cxd{j[2].get<double>(), j[3].get<double>()},
          cxd{j[4].get<double>(), j[5].get<double>()}};
}

nlohmann::json to_json(const Certificate& c) {
  nlohmann::json j;
  j["id"] = c.id;
  j["kind"] = cert_kind_name(c.kind);
  j["subjects"] = c.subjects;
  j["margin"] = c.margin;
  j["resolution"] = c.resolution;
  j["samples"] = c.sample_count;
  j["passed"] = c.passed;
  j["note"] = c.note;
  j["scale"] = c.scale;
  if (c.witness) j["witness"] = to_json(*c.witness);
  if (!c.replay.is_null()) j["replay"] = c.replay;
  return j;
}

Certificate certificate_from_json(const nlohmann::json& j) {
  Certificate c;
  c.id = j.at("id").get<std::string>();
  c.kind = cert_kind_from(j.at("kind").get<std::string>());
  c.subjects = j.at("subjects").get<std::vector<std::string>>();
  c.margin = j.at("margin").get<double>();
  c.resolution = j.at("resolution").get<double>();
  c.sample_count = j.at("samples").get<std::int64_t>();
  c.passed = j.at("passed").get<bool>();
  c.note = j.at("note").get<std::string>();
  c.scale = j.at("scale").get<double>();
  if (j.contains("witness")) c.witness = point_from_json(j["witness"]);
  if (j.contains("replay")) c.replay = j["replay"];
  return c;
}

}  // namespace hullforge
