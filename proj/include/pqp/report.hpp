#pragma once

// JSON serialisation of reports. Key order is fixed by construction, so a
// fixed input and seed always give the same bytes.

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pqp/group_view.hpp"
#include "pqp/predicates.hpp"
#include "pqp/theorems.hpp"

namespace pqp {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

inline std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline Json report_header(std::string_view command, std::string_view input_text) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["tool_version"] = kToolVersion;
  j["command"] = command;
  j["input_digest"] = "fnv1a64:" + fnv1a64_hex(input_text);
  return j;
}

inline Json to_json(const TheoremVerdict& v) {
  Json j;
  j["id"] = v.id;
  j["group"] = v.group;
  j["holds"] = v.holds;
  j["precondition"] = v.precondition;
  j["precondition_met"] = v.precondition_met;
  j["swept"] = v.swept;
  Json w = Json::object();
  for (const auto& [k, val] : v.witness) w[k] = val;
  j["witness"] = v.witness.empty() ? Json(nullptr) : w;
  Json d = Json::object();
  for (const auto& [k, val] : v.data) d[k] = val;
  j["data"] = d;
  return j;
}

template <FiniteGroup G>
Json to_json(const G& g, const Verdict& v) {
  Json j;
  j["holds"] = v.holds;
  if (v.witness.empty()) {
    j["witness"] = nullptr;
  } else {
    Json w;
    for (const auto& [label, x] : v.witness) w[label] = g.describe(x);
    j["witness"] = w;
  }
  if (!v.note.empty()) j["note"] = v.note;
  j["checked"] = v.checked;
  j["exhaustive"] = v.exhaustive;
  return j;
}

template <FiniteGroup G>
Json to_json(const G& g, const PropertyReport& r) {
  Json j;
  j["prime"] = r.prime;
  j["order"] = r.order;
  j["exponent"] = r.exponent;
  j["nilpotency_class"] = r.nilpotency_class;
  j["min_generators"] = r.min_generators;
  Json props;
  for (const auto& [name, v] : r.properties) props[name] = to_json(g, v);
  j["properties"] = props;
  return j;
}

template <FiniteGroup G>
Json to_json(const G& g, const std::vector<PowerStructureLevel>& rows) {
  Json out = Json::array();
  for (const auto& row : rows) {
    Json j;
    j["i"] = row.i;
    j["power_set_size"] = row.power_set_size;
    j["agemo_order"] = row.agemo_order;
    j["index"] = g.order() / row.agemo_order;
    j["omega_order"] = row.omega_order;
    j["bounded_set_size"] = row.bounded_set_size;
    j["omega_exponent"] = row.omega_exponent;
    j["condition_1"] = to_json(g, row.powers);
    j["condition_2"] = to_json(g, row.omega);
    j["condition_3"] = to_json(g, row.index);
    out.push_back(j);
  }
  return out;
}

} // namespace pqp
