#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lindiv/space.hpp"

namespace lindiv {

inline constexpr std::size_t kDefaultBfsCap = 5'000'000;

// Exact distances from a center out to some radius, keyed by canonical form.
template <typename V>
struct BallMap {
  V center;
  std::int64_t radius = -1;  // complete up to and including this distance
  std::unordered_map<std::string, std::pair<V, std::int64_t>> dist;
  std::vector<std::string> frontier;  // keys at distance == radius

  explicit BallMap(V c) : center(std::move(c)) {}

  std::optional<std::int64_t> lookup(const std::string& key) const {
    auto it = dist.find(key);
    if (it == dist.end()) return std::nullopt;
    return it->second.second;
  }

  std::size_t size() const { return dist.size(); }
};

// Grows a ball map breadth-first to the requested radius. Throws
// BudgetExceeded when the vertex count passes the cap; never truncates.
template <MarkedSpace S>
void extend_ball(const S& space, BallMap<typename S::vertex_type>& ball, std::int64_t radius,
                 std::size_t cap = kDefaultBfsCap) {
  using V = typename S::vertex_type;
  if (ball.radius < 0) {
    ball.dist.emplace(space.canonical_key(ball.center), std::make_pair(ball.center, 0));
    ball.frontier = {space.canonical_key(ball.center)};
    ball.radius = 0;
  }
  while (ball.radius < radius) {
    std::vector<std::string> next;
    for (const auto& key : ball.frontier) {
      const V& v = ball.dist.at(key).first;
      for (const auto& step : space.neighbors(v)) {
        std::string nk = space.canonical_key(step.to);
        auto [it, fresh] = ball.dist.emplace(std::move(nk), std::make_pair(step.to, ball.radius + 1));
        if (fresh) {
          if (ball.dist.size() > cap) {
            throw BudgetExceeded("BFS ball exceeded vertex cap of " + std::to_string(cap));
          }
          next.push_back(it->first);
        }
      }
    }
    ball.frontier = std::move(next);
    ball.radius += 1;
    if (ball.frontier.empty()) break;  // whole component enumerated
  }
  ball.radius = std::max(ball.radius, radius);
}

template <MarkedSpace S>
BallMap<typename S::vertex_type> ball(const S& space, std::int64_t radius,
                                      std::size_t cap = kDefaultBfsCap) {
  BallMap<typename S::vertex_type> b(space.basepoint());
  extend_ball(space, b, radius, cap);
  return b;
}

// Vertices at distance exactly n from the basepoint, sorted by canonical key
// so every run enumerates them in the same order.
template <MarkedSpace S>
std::vector<typename S::vertex_type> sphere(const S& space, std::int64_t n,
                                            std::size_t cap = kDefaultBfsCap) {
  auto b = ball(space, n, cap);
  std::vector<std::pair<std::string, typename S::vertex_type>> keyed;
  for (const auto& [key, entry] : b.dist) {
    if (entry.second == n) keyed.emplace_back(key, entry.first);
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<typename S::vertex_type> out;
  out.reserve(keyed.size());
  for (auto& [key, v] : keyed) out.push_back(std::move(v));
  return out;
}

// Memoized word norms for one space. BFS layers are grown on demand under a
// lock; lookups against already-grown layers are read-only.
template <MarkedSpace S>
class NormCache {
 public:
  explicit NormCache(const S& space, std::size_t cap = kDefaultBfsCap)
      : space_(space), ball_(space.basepoint()), cap_(cap) {}

  std::int64_t norm(const typename S::vertex_type& v) {
    if constexpr (HasNormOracle<S>) {
      return space_.exact_norm(v);
    } else {
      std::string key = space_.canonical_key(v);
      std::lock_guard<std::mutex> lock(mutex_);
      while (true) {
        if (auto d = ball_.lookup(key)) return *d;
        if (ball_.radius >= 0 && ball_.frontier.empty()) {
          throw BudgetExceeded("norm: vertex not in the enumerated component");
        }
        extend_ball(space_, ball_, ball_.radius + 1, cap_);
      }
    }
  }

  // Distance from basepoint if it is <= radius, otherwise nullopt (exact
  // either way: the ball is complete through `radius`).
  std::optional<std::int64_t> norm_within(const typename S::vertex_type& v, std::int64_t radius) {
    if constexpr (HasNormOracle<S>) {
      std::int64_t d = space_.exact_norm(v);
      if (d <= radius) return d;
      return std::nullopt;
    } else {
      std::string key = space_.canonical_key(v);
      std::lock_guard<std::mutex> lock(mutex_);
      extend_ball(space_, ball_, radius, cap_);
      return ball_.lookup(key);
    }
  }

  const S& space() const { return space_; }

 private:
  const S& space_;
  BallMap<typename S::vertex_type> ball_;
  std::size_t cap_;
  std::mutex mutex_;
};

template <MarkedSpace S>
std::int64_t norm(const S& space, const typename S::vertex_type& v,
                  std::size_t cap = kDefaultBfsCap) {
  if constexpr (HasNormOracle<S>) {
    return space.exact_norm(v);
  } else {
    NormCache<S> cache(space, cap);
    return cache.norm(v);
  }
}

// BFS tree from the basepoint with parent labels, for recovering geodesic
// words at desk scale.
template <MarkedSpace S>
struct BfsTree {
  struct Node {
    typename S::vertex_type vertex;
    std::int64_t dist = 0;
    std::string parent;  // empty at the root
    Label via;
  };
  std::unordered_map<std::string, Node> nodes;
  std::string root_key;
};

template <MarkedSpace S>
BfsTree<S> bfs_tree(const S& space, std::int64_t radius, std::size_t cap = kDefaultBfsCap) {
  using V = typename S::vertex_type;
  BfsTree<S> tree;
  tree.root_key = space.canonical_key(space.basepoint());
  tree.nodes.emplace(tree.root_key,
                     typename BfsTree<S>::Node{space.basepoint(), 0, "", Label{}});
  std::vector<std::string> frontier{tree.root_key};
  for (std::int64_t depth = 0; depth < radius && !frontier.empty(); ++depth) {
    std::vector<std::string> next;
    for (const auto& key : frontier) {
      const V v = tree.nodes.at(key).vertex;
      for (const auto& step : space.neighbors(v)) {
        std::string nk = space.canonical_key(step.to);
        auto [it, fresh] = tree.nodes.emplace(
            std::move(nk), typename BfsTree<S>::Node{step.to, depth + 1, key, step.label});
        if (fresh) {
          if (tree.nodes.size() > cap) throw BudgetExceeded("bfs_tree exceeded vertex cap");
          next.push_back(it->first);
        }
      }
    }
    frontier = std::move(next);
  }
  return tree;
}

// Geodesic word from the basepoint to the vertex with this key.
template <MarkedSpace S>
std::vector<Label> geodesic_word(const BfsTree<S>& tree, const std::string& key) {
  std::vector<Label> word;
  std::string cur = key;
  while (cur != tree.root_key) {
    const auto& node = tree.nodes.at(cur);
    word.push_back(node.via);
    cur = node.parent;
  }
  std::reverse(word.begin(), word.end());
  return word;
}

}  // namespace lindiv
