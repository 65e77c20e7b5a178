#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "sigquad/compress.hpp"
#include "sigquad/csg.hpp"
#include "sigquad/spline_element.hpp"

namespace sigquad {

inline constexpr int kRuleSchemaVersion = 1;

/// Element file: { "sides": [ { "degree": 1|3, "knots": [[x,y],...] }, ... ] }
SplineElement parse_element(const nlohmann::json& j);
SplineElement load_element(const std::filesystem::path& path);

/// CSG file: { "op": "union"|"intersection"|"difference", "children": [...] }
/// with leaves { "ball": {"center": [x,y,z], "radius": r} } and
/// { "polyhedron": {"vertices": [...], "facets": [[i,j,k],...] } }.
IndicatorDomain parse_csg(const nlohmann::json& j);
IndicatorDomain load_csg(const std::filesystem::path& path);

struct RuleProvenance {
  std::string kind;         // "spline" | "qmc" | ""
  std::string source;       // path of the geometry file
  std::uint64_t source_hash = 0;
  long long points = 0;     // K, qmc only
  std::uint64_t seed = 0;   // ray seed, qmc only
};

/// Self-contained rule file: re-verification needs only this plus the
/// source geometry.
struct RuleFile {
  int schema_version = kRuleSchemaVersion;
  SignedRule rule;
  RuleProvenance provenance;
};

nlohmann::json rule_to_json(const RuleFile& rf);
RuleFile rule_from_json(const nlohmann::json& j);
void save_rule(const RuleFile& rf, const std::filesystem::path& path);
RuleFile load_rule(const std::filesystem::path& path);

/// FNV-1a of the file bytes, for provenance.
std::uint64_t hash_file(const std::filesystem::path& path);

}  // namespace sigquad
