#pragma once
// JSON serialization for the report types and the model file format.
// Rationals are rendered as exact "num/den" strings; floating point
// appears only in oracle outputs.

#include <json.hpp>

#include <string>

#include "pqtrace/identities.hpp"
#include "pqtrace/oracle.hpp"
#include "pqtrace/trace.hpp"
#include "pqtrace/triangle.hpp"

namespace pqtrace {

using json = nlohmann::ordered_json;

inline json moment_json(const MomentExpr& e) {
  json m = json::object();
  for (const auto& [k, c] : e.m) m[std::to_string(k)] = number_str(c);
  return json{{"unit", number_str(e.unit)},
              {"p", number_str(e.p)},
              {"q", number_str(e.q)},
              {"m", m}};
}

inline json residual_json(const ResidualPart& part) {
  json out;
  out["label"] = part.label;
  if (std::holds_alternative<NCPoly>(part.value)) {
    out["kind"] = "operator";
    out["poly"] = std::get<NCPoly>(part.value).str();
  } else {
    out["kind"] = "moment";
    out["value"] = moment_json(std::get<MomentExpr>(part.value));
  }
  return out;
}

inline json report_json(const IdentityReport& rep, bool include_ms) {
  json out;
  out["name"] = rep.name;
  out["order"] = rep.order;
  out["status"] = rep.pass ? "pass" : "fail";
  json parts = json::array();
  for (const auto& part : rep.residuals) parts.push_back(residual_json(part));
  out["residual"] = parts;
  if (include_ms) out["ms"] = rep.wall_ms;
  return out;
}

inline json genfun_json(const GenfunReport& rep) {
  json entries = json::array();
  for (const auto& e : rep.entries)
    entries.push_back(json{{"n", e.n},
                           {"k", e.k},
                           {"series", number_str(e.series)},
                           {"table", number_str(e.table)},
                           {"match", e.match}});
  return json{{"N", rep.N},
              {"self_consistent", rep.self_consistent},
              {"mismatches", rep.mismatches},
              {"entries", entries}};
}

inline json haar_json(const HaarReport& rep) {
  json rows = json::array();
  for (const auto& r : rep.moments)
    rows.push_back(json{{"j", r.j},
                        {"estimate", r.estimate},
                        {"target", r.target},
                        {"abs_error", r.abs_error}});
  return json{{"d", rep.config.d},
              {"samples", rep.config.samples},
              {"max_j", rep.config.max_j},
              {"seed", rep.config.seed},
              {"moments", rows},
              {"max_thm_sum_residual", rep.max_thm_sum_residual},
              {"max_thm_comm_residual", rep.max_thm_comm_residual}};
}

/// Model file format: {"angles": [radians...], "mult": [m11, m10, m01, m00]}.
inline ModelSpec model_from_json(const json& j) {
  ModelSpec spec;
  if (!j.is_object() || !j.contains("angles") || !j.contains("mult"))
    throw std::invalid_argument(
        "model file must be an object with \"angles\" and \"mult\"");
  for (const auto& a : j.at("angles")) spec.angles.push_back(a.get<double>());
  const auto& m = j.at("mult");
  if (!m.is_array() || m.size() != 4)
    throw std::invalid_argument("\"mult\" must be [m11, m10, m01, m00]");
  for (int i = 0; i < 4; ++i) spec.mult[i] = m[i].get<int>();
  spec.validate();
  return spec;
}

inline json model_json(const ModelSpec& spec) {
  return json{{"angles", spec.angles},
              {"mult", {spec.mult[0], spec.mult[1], spec.mult[2], spec.mult[3]}}};
}

}  // namespace pqtrace
