#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lindiv/bfs.hpp"
#include "lindiv/detour.hpp"
#include "lindiv/rational.hpp"
#include "lindiv/space.hpp"

namespace lindiv {

enum class AvoidVerdict { Exact, Certified, Violated };

inline const char* to_string(AvoidVerdict v) {
  switch (v) {
    case AvoidVerdict::Exact: return "exact";
    case AvoidVerdict::Certified: return "certified";
    case AvoidVerdict::Violated: return "violated";
  }
  return "?";
}

struct WitnessReport {
  bool endpoints_verified = false;
  bool edges_valid = false;
  std::int64_t length = 0;
  std::int64_t length_bound = 0;
  Rational radius;
  std::vector<AvoidVerdict> avoidance;  // one verdict per path vertex
  bool overall_pass = false;

  std::size_t count(AvoidVerdict v) const {
    std::size_t c = 0;
    for (auto a : avoidance)
      if (a == v) ++c;
    return c;
  }
};

struct VerifyOptions {
  // Try the family certificate before spending exact-norm budget; exact
  // evidence is still consulted whenever the certificate falls short.
  bool certificate_first = false;
  std::size_t cap = kDefaultBfsCap;
};

// Checks a claimed witness path: edges are real edges, the endpoint matches,
// the length is within its bound and every vertex stays out of the open ball
// B(center, radius). "violated" needs exact evidence; "certified" means only
// the family lower bound was used.
template <MarkedSpace S>
WitnessReport verify_witness_with(const S& space, const Path<typename S::vertex_type>& path,
                                  const Exclusion<S>& excl,
                                  const typename S::vertex_type& expected_end,
                                  std::int64_t length_bound, const VerifyOptions& opts = {}) {
  WitnessReport report;
  report.length = static_cast<std::int64_t>(path.length());
  report.length_bound = length_bound;
  report.radius = excl.radius();

  report.edges_valid = path.vertices.size() == path.labels.size() + 1;
  if (report.edges_valid) {
    for (std::size_t i = 0; i < path.labels.size(); ++i) {
      bool found = false;
      for (const auto& step : space.neighbors(path.vertices[i])) {
        if (step.label == path.labels[i] &&
            space.canonical_key(step.to) == space.canonical_key(path.vertices[i + 1])) {
          found = true;
          break;
        }
      }
      if (!found) {
        report.edges_valid = false;
        break;
      }
    }
  }

  report.endpoints_verified =
      !path.vertices.empty() &&
      space.canonical_key(path.end()) == space.canonical_key(expected_end);

  bool any_violated = false;
  report.avoidance.reserve(path.vertices.size());
  for (const auto& v : path.vertices) {
    AvoidVerdict verdict;
    if (opts.certificate_first &&
        Rational(certificate_or_zero(space, v)) >= excl.radius()) {
      verdict = AvoidVerdict::Certified;
    } else if (excl.excluded(v)) {
      verdict = AvoidVerdict::Violated;
      any_violated = true;
    } else {
      // The exclusion ball is complete, so non-membership is exact evidence.
      verdict = AvoidVerdict::Exact;
    }
    report.avoidance.push_back(verdict);
  }

  report.overall_pass = report.endpoints_verified && report.edges_valid &&
                        report.length <= report.length_bound && !any_violated;
  return report;
}

template <MarkedSpace S>
WitnessReport verify_witness(const S& space, const Path<typename S::vertex_type>& path,
                             const typename S::vertex_type& center, const Rational& radius,
                             const typename S::vertex_type& expected_end, std::int64_t length_bound,
                             const VerifyOptions& opts = {}) {
  Exclusion<S> excl(space, center, radius, opts.cap);
  return verify_witness_with(space, path, excl, expected_end, length_bound, opts);
}

}  // namespace lindiv
