#pragma once

#include <deque>
#include <map>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "lindiv/bfs.hpp"
#include "lindiv/detour.hpp"
#include "lindiv/rational.hpp"
#include "lindiv/space.hpp"

// Test-only oracles, deliberately independent of the library's search
// machinery: plain word enumeration and a single-queue complement BFS.

namespace lindiv::testing {

// Every element reachable by generator words of length <= radius, with its
// word-metric distance, found without the library BFS.
template <MarkedSpace S>
std::unordered_map<std::string, std::int64_t> word_enumeration_ball(const S& space,
                                                                    std::int64_t radius) {
  std::unordered_map<std::string, std::int64_t> dist;
  std::vector<typename S::vertex_type> layer{space.basepoint()};
  dist[space.canonical_key(space.basepoint())] = 0;
  for (std::int64_t d = 0; d < radius; ++d) {
    std::vector<typename S::vertex_type> next;
    for (const auto& v : layer) {
      for (const auto& step : space.neighbors(v)) {
        auto key = space.canonical_key(step.to);
        if (dist.count(key)) continue;
        dist[key] = d + 1;
        next.push_back(step.to);
      }
    }
    layer = std::move(next);
  }
  return dist;
}

// Unidirectional breadth-first detour search; -1 when b is unreachable within
// the length bound.
template <MarkedSpace S>
std::int64_t brute_detour(const S& space, const typename S::vertex_type& a,
                          const typename S::vertex_type& b, const typename S::vertex_type& center,
                          const Rational& radius, std::int64_t bound) {
  const std::int64_t inside = radius.open_ball_max_dist();
  BallMap<typename S::vertex_type> cb(center);
  if (inside >= 0) extend_ball(space, cb, inside);
  auto excluded = [&](const std::string& key) {
    return inside >= 0 && cb.lookup(key).has_value();
  };
  const std::string bk = space.canonical_key(b);
  std::unordered_map<std::string, std::int64_t> dist;
  std::deque<typename S::vertex_type> queue;
  dist[space.canonical_key(a)] = 0;
  queue.push_back(a);
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    const std::int64_t d = dist.at(space.canonical_key(v));
    if (space.canonical_key(v) == bk) return d;
    if (d >= bound) continue;
    for (const auto& step : space.neighbors(v)) {
      auto key = space.canonical_key(step.to);
      if (excluded(key) || dist.count(key)) continue;
      dist[key] = d + 1;
      queue.push_back(step.to);
    }
  }
  return -1;
}

// Adapter that strips the metric oracles off a space, so oracle-backed and
// search-backed code paths can be compared on the same family.
template <MarkedSpace S>
class PlainView {
 public:
  using vertex_type = typename S::vertex_type;
  explicit PlainView(const S& inner) : inner_(inner) {}
  vertex_type basepoint() const { return inner_.basepoint(); }
  int degree_bound() const { return inner_.degree_bound(); }
  auto neighbors(const vertex_type& v) const { return inner_.neighbors(v); }
  std::string canonical_key(const vertex_type& v) const { return inner_.canonical_key(v); }
  std::string label_text(const Label& l) const { return inner_.label_text(l); }

 private:
  const S& inner_;
};

// Adapter that keeps the metric oracles but hides the pair-orbit key, to
// isolate orbit grouping in comparisons.
template <MarkedSpace S>
class NoOrbitView {
 public:
  using vertex_type = typename S::vertex_type;
  explicit NoOrbitView(const S& inner) : inner_(inner) {}
  vertex_type basepoint() const { return inner_.basepoint(); }
  int degree_bound() const { return inner_.degree_bound(); }
  auto neighbors(const vertex_type& v) const { return inner_.neighbors(v); }
  std::string canonical_key(const vertex_type& v) const { return inner_.canonical_key(v); }
  std::string label_text(const Label& l) const { return inner_.label_text(l); }
  std::int64_t exact_norm(const vertex_type& v) const
    requires HasNormOracle<S>
  {
    return inner_.exact_norm(v);
  }
  std::int64_t pair_distance(const vertex_type& u, const vertex_type& v) const
    requires HasPairOracle<S>
  {
    return inner_.pair_distance(u, v);
  }

 private:
  const S& inner_;
};

// Exhaustive certificate soundness sweep: lower bound never exceeds the BFS
// norm anywhere in the ball.
template <MarkedSpace S>
  requires HasCertificate<S>
std::int64_t certificate_violations(const S& space, std::int64_t radius) {
  auto b = ball(space, radius);
  std::int64_t bad = 0;
  for (const auto& [key, entry] : b.dist) {
    if (space.norm_lower_bound(entry.first) > entry.second) ++bad;
  }
  return bad;
}

inline std::mt19937_64 seeded_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

// Random generator word of the given length.
template <MarkedSpace S>
std::vector<Label> random_word(const S& space, std::int64_t length, std::mt19937_64& rng) {
  std::vector<Label> word;
  typename S::vertex_type v = space.basepoint();
  for (std::int64_t i = 0; i < length; ++i) {
    auto nb = space.neighbors(v);
    std::uniform_int_distribution<std::size_t> pick(0, nb.size() - 1);
    auto& step = nb[pick(rng)];
    word.push_back(step.label);
    v = step.to;
  }
  return word;
}

}  // namespace lindiv::testing
