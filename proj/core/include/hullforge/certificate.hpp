#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hullforge/geometry.hpp"

namespace hullforge {

enum class CertKind { Disjointness, Inclusion, Coverage, LowerBound };

const char* cert_kind_name(CertKind k);
CertKind cert_kind_from(const std::string& name);

// One machine-checkable elementary fact. passed implies margin > 0; a failed
// certificate always carries a witness.
struct Certificate {
  std::string id;
  CertKind kind = CertKind::LowerBound;
  std::vector<std::string> subjects;
  double margin = 0.0;
  double resolution = 0.0;
  std::int64_t sample_count = 0;
  std::optional<ComplexPoint2> witness;
  bool passed = false;
  std::string note;        // engine id plus a short chain description
  double scale = 1.0;      // problem scale feeding the slack policy
  nlohmann::json replay;   // self-contained arguments for re-verification
};

Certificate make_pass(std::string id, CertKind kind, double margin, double resolution,
                      std::int64_t samples, double scale, std::string note);
Certificate make_fail(std::string id, CertKind kind, double margin, double resolution,
                      std::int64_t samples, double scale, std::string note,
                      const ComplexPoint2& witness);

nlohmann::json to_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ComplexPoint2& p);
ComplexPoint2 point_from_json(const nlohmann::json& j);
nlohmann::json to_json(const AffineFunction& f);
AffineFunction affine_from_json(const nlohmann::json& j);

}  // namespace hullforge
