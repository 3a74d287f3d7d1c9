#pragma once

#include <json.hpp>

#include "lindiv/divergence.hpp"
#include "lindiv/witness.hpp"

namespace lindiv {

// Stable JSON schemas; field names and meanings are documented in README.md.

inline nlohmann::json to_json(const GrowthSample& s) {
  nlohmann::json j;
  j["n"] = s.n;
  if (s.value) {
    j["value"] = *s.value;
  } else {
    j["value"] = nullptr;
  }
  j["unreachable_within_bound"] = !s.value.has_value();
  j["pairs_examined"] = s.pairs_examined;
  j["exhaustive"] = s.exhaustive;
  j["search_bound"] = s.search_bound;
  j["seed"] = s.seed;
  j["wall_seconds"] = s.wall_seconds;
  return j;
}

inline nlohmann::json to_json(const WitnessReport& r) {
  nlohmann::json j;
  j["endpoints_verified"] = r.endpoints_verified;
  j["edges_valid"] = r.edges_valid;
  j["length"] = r.length;
  j["length_bound"] = r.length_bound;
  j["radius"] = r.radius.str();
  nlohmann::json verdicts = nlohmann::json::array();
  for (auto v : r.avoidance) verdicts.push_back(to_string(v));
  j["avoidance"] = verdicts;
  j["avoidance_counts"] = {{"exact", r.count(AvoidVerdict::Exact)},
                           {"certified", r.count(AvoidVerdict::Certified)},
                           {"violated", r.count(AvoidVerdict::Violated)}};
  j["overall_pass"] = r.overall_pass;
  return j;
}

}  // namespace lindiv
