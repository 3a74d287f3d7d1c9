#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "lindiv/bfs.hpp"
#include "lindiv/rational.hpp"
#include "lindiv/space.hpp"

namespace lindiv {

// The open ball being avoided, materialized once. A vertex is excluded iff
// its distance to the center is strictly below the radius, which for integer
// graph metrics means membership in the ball of radius open_ball_max_dist().
// Spaces with a pairwise metric oracle skip the membership map entirely.
template <MarkedSpace S>
class Exclusion {
 public:
  Exclusion(const S& space, typename S::vertex_type center, const Rational& radius,
            std::size_t cap = kDefaultBfsCap)
      : space_(space), ball_(std::move(center)), radius_(radius) {
    inside_max_ = radius.open_ball_max_dist();
    if (inside_max_ >= 0) extend_ball(space_, ball_, inside_max_, cap);
  }

  bool excluded_key(const std::string& key) const {
    if (inside_max_ < 0) return false;
    return ball_.lookup(key).has_value();
  }

  bool excluded(const typename S::vertex_type& v) const {
    if (inside_max_ < 0) return false;
    if constexpr (HasPairOracle<S>) {
      return space_.pair_distance(ball_.center, v) <= inside_max_;
    } else {
      return excluded_key(space_.canonical_key(v));
    }
  }

  const typename S::vertex_type& center() const { return ball_.center; }
  std::int64_t inside_max() const { return inside_max_; }
  const BallMap<typename S::vertex_type>& ball() const { return ball_; }

  const Rational& radius() const { return radius_; }
  std::size_t ball_size() const { return inside_max_ < 0 ? 0 : ball_.size(); }

 private:
  const S& space_;
  BallMap<typename S::vertex_type> ball_;
  Rational radius_;
  std::int64_t inside_max_ = -1;
};

template <typename V>
struct DetourResult {
  std::optional<Path<V>> path;  // empty: unreachable within the bound
  std::int64_t search_bound = 0;
  Rational excluded_radius;

  bool unreachable_within_bound() const { return !path.has_value(); }
  std::int64_t length() const { return path ? static_cast<std::int64_t>(path->length()) : -1; }
};

namespace detail {

template <typename V>
struct SearchNode {
  V vertex;
  std::int64_t dist = 0;
  std::string parent;  // empty for the root
  Label via;
};

// Rebuilds the labeled path root -> key from a forward search tree.
template <MarkedSpace S>
Path<typename S::vertex_type> rebuild_forward(
    const S& space, const std::unordered_map<std::string, SearchNode<typename S::vertex_type>>& tree,
    const std::string& root_key, const std::string& key) {
  std::vector<std::string> chain;
  std::string cur = key;
  while (cur != root_key) {
    chain.push_back(cur);
    cur = tree.at(cur).parent;
  }
  Path<typename S::vertex_type> path(tree.at(root_key).vertex);
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const auto& node = tree.at(*it);
    path.push(node.via, node.vertex);
  }
  return path;
}

// Appends the walk key -> root of a backward search tree, looking up each
// edge label from the forward side (the neighbor relation is symmetric).
template <MarkedSpace S>
void append_backward(const S& space,
                     const std::unordered_map<std::string, SearchNode<typename S::vertex_type>>& tree,
                     const std::string& root_key, std::string key,
                     Path<typename S::vertex_type>& path) {
  while (key != root_key) {
    const std::string& next = tree.at(key).parent;
    bool pushed = false;
    for (const auto& step : space.neighbors(path.end())) {
      if (space.canonical_key(step.to) == next) {
        path.push(step.label, step.to);
        pushed = true;
        break;
      }
    }
    check(pushed, "backward reconstruction found no connecting edge");
    key = next;
  }
}

template <MarkedSpace S>
bool norm_admissible(const S& space, const typename S::vertex_type& v, std::int64_t bound) {
  if constexpr (HasNormOracle<S>) {
    return space.exact_norm(v) <= bound;
  } else {
    (void)space;
    (void)v;
    (void)bound;
    return true;  // spaces without an oracle are bounded by path length only
  }
}

// Bidirectional BFS over the complement of the excluded ball.
template <MarkedSpace S>
std::optional<Path<typename S::vertex_type>> complement_bidirectional(
    const S& space, const typename S::vertex_type& a, const typename S::vertex_type& b,
    const Exclusion<S>& excl, std::int64_t bound, std::size_t cap) {
  using V = typename S::vertex_type;
  using Tree = std::unordered_map<std::string, SearchNode<V>>;

  const std::string a_key = space.canonical_key(a);
  const std::string b_key = space.canonical_key(b);
  if (a_key == b_key) return Path<V>(a);

  Tree fwd, bwd;
  fwd.emplace(a_key, SearchNode<V>{a, 0, "", Label{}});
  bwd.emplace(b_key, SearchNode<V>{b, 0, "", Label{}});
  std::vector<std::string> fq{a_key}, bq{b_key};
  std::int64_t fr = 0, br = 0;
  std::int64_t best = -1;
  std::string best_key;

  auto expand = [&](Tree& mine, Tree& other, std::vector<std::string>& frontier,
                    std::int64_t depth) {
    std::vector<std::string> next;
    for (const auto& key : frontier) {
      const V v = mine.at(key).vertex;
      for (const auto& step : space.neighbors(v)) {
        std::string nk = space.canonical_key(step.to);
        if (mine.count(nk)) continue;
        if (excl.excluded_key(nk)) continue;
        if (!norm_admissible(space, step.to, bound)) continue;
        mine.emplace(nk, SearchNode<V>{step.to, depth + 1, key, step.label});
        if (mine.size() + other.size() > cap) {
          throw BudgetExceeded("min_detour exceeded vertex cap");
        }
        auto hit = other.find(nk);
        if (hit != other.end()) {
          std::int64_t total = depth + 1 + hit->second.dist;
          if (best < 0 || total < best) {
            best = total;
            best_key = nk;
          }
        }
        next.push_back(std::move(nk));
      }
    }
    frontier = std::move(next);
  };

  while (true) {
    if (best >= 0 && best <= fr + br + 1) break;
    if (fr + br >= bound) break;  // nothing within the length bound left
    if (fq.empty() && bq.empty()) break;
    if (!fq.empty() && (bq.empty() || fq.size() <= bq.size())) {
      expand(fwd, bwd, fq, fr);
      ++fr;
    } else {
      expand(bwd, fwd, bq, br);
      ++br;
    }
  }

  if (best < 0 || best > bound) return std::nullopt;
  Path<V> path = rebuild_forward(space, fwd, a_key, best_key);
  append_backward(space, bwd, b_key, best_key, path);
  return path;
}

// A* over the complement with the exact pairwise metric as heuristic.
template <MarkedSpace S>
  requires HasPairOracle<S>
std::optional<Path<typename S::vertex_type>> complement_astar(
    const S& space, const typename S::vertex_type& a, const typename S::vertex_type& b,
    const Exclusion<S>& excl, std::int64_t bound, std::size_t cap) {
  using V = typename S::vertex_type;
  const std::string b_key = space.canonical_key(b);

  std::unordered_map<std::string, SearchNode<V>> tree;
  const std::string a_key = space.canonical_key(a);
  tree.emplace(a_key, SearchNode<V>{a, 0, "", Label{}});

  using QEntry = std::pair<std::int64_t, std::string>;  // (f, key)
  std::priority_queue<QEntry, std::vector<QEntry>, std::greater<>> open;
  open.emplace(space.pair_distance(a, b), a_key);

  while (!open.empty()) {
    auto [f, key] = open.top();
    open.pop();
    if (f > bound) return std::nullopt;
    const auto& node = tree.at(key);
    if (f > node.dist + space.pair_distance(node.vertex, b)) continue;  // stale
    if (key == b_key) return rebuild_forward(space, tree, a_key, key);
    const V v = node.vertex;
    const std::int64_t g = node.dist;
    for (const auto& step : space.neighbors(v)) {
      if (excl.excluded(step.to)) continue;
      if (!norm_admissible(space, step.to, bound)) continue;
      std::string nk = space.canonical_key(step.to);
      auto it = tree.find(nk);
      if (it != tree.end() && it->second.dist <= g + 1) continue;
      tree[nk] = SearchNode<V>{step.to, g + 1, key, step.label};
      if (tree.size() > cap) throw BudgetExceeded("min_detour exceeded vertex cap");
      open.emplace(g + 1 + space.pair_distance(step.to, b), std::move(nk));
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Shortest path from a to b avoiding a prepared exclusion ball (div_profile
// evaluates many pairs against one ball).
template <MarkedSpace S>
DetourResult<typename S::vertex_type> min_detour_with(const S& space,
                                                      const typename S::vertex_type& a,
                                                      const typename S::vertex_type& b,
                                                      const Exclusion<S>& excl,
                                                      std::int64_t search_bound,
                                                      std::size_t cap = kDefaultBfsCap) {
  using V = typename S::vertex_type;
  if (excl.excluded(a) || excl.excluded(b)) {
    throw InvalidInput("min_detour: an endpoint lies inside the excluded ball");
  }
  std::optional<Path<V>> path;
  if constexpr (HasPairOracle<S>) {
    path = detail::complement_astar(space, a, b, excl, search_bound, cap);
  } else {
    path = detail::complement_bidirectional(space, a, b, excl, search_bound, cap);
  }
  DetourResult<V> result;
  result.path = std::move(path);
  result.search_bound = search_bound;
  result.excluded_radius = excl.radius();
  return result;
}

// Shortest path from a to b avoiding the open ball B(center, radius), with
// both path length and (where an oracle exists) vertex norms capped by
// search_bound. An empty result is a lower-bound statement, not a proof of
// infinite divergence. Callers must keep search_bound >= max(||a||, ||b||).
template <MarkedSpace S>
DetourResult<typename S::vertex_type> min_detour(const S& space, const typename S::vertex_type& a,
                                                 const typename S::vertex_type& b,
                                                 const typename S::vertex_type& center,
                                                 const Rational& radius, std::int64_t search_bound,
                                                 std::size_t cap = kDefaultBfsCap) {
  Exclusion<S> excl(space, center, radius, cap);
  return min_detour_with(space, a, b, excl, search_bound, cap);
}

// Exact detour distances to one fixed anchor, sharing a single backward
// complement search of radius R across many sources. Detours up to
// (forward depth) + R are decided exactly.
template <MarkedSpace S>
class AnchoredDetour {
 public:
  AnchoredDetour(const S& space, typename S::vertex_type anchor, const Exclusion<S>& excl,
                 std::int64_t back_radius, std::size_t cap = kDefaultBfsCap)
      : space_(space), excl_(excl), back_(std::move(anchor)), cap_(cap) {
    check(!excl.excluded(back_.center), "anchor lies inside the excluded ball");
    grow_backward(back_radius);
  }

  // Exact length of the shortest avoiding path from g to the anchor, or
  // nullopt if it exceeds length_cap.
  std::optional<std::int64_t> distance_from(const typename S::vertex_type& g,
                                            std::int64_t length_cap) {
    using V = typename S::vertex_type;
    if (excl_.excluded(g)) throw InvalidInput("AnchoredDetour: source inside the excluded ball");
    const std::string gk = space_.canonical_key(g);
    std::int64_t best = -1;
    auto offer = [&](const std::string& key, std::int64_t df) {
      auto it = back_.dist.find(key);
      if (it != back_.dist.end() && (best < 0 || df + it->second.second < best)) {
        best = df + it->second.second;
      }
    };
    std::unordered_map<std::string, std::pair<V, std::int64_t>> seen;
    seen.emplace(gk, std::make_pair(g, 0));
    offer(gk, 0);
    std::vector<std::string> frontier{gk};
    std::int64_t depth = 0;
    while (!frontier.empty()) {
      if (best >= 0 && depth + back_.radius >= best) break;
      if (depth >= length_cap) break;
      std::vector<std::string> next;
      for (const auto& key : frontier) {
        const V v = seen.at(key).first;
        for (const auto& step : space_.neighbors(v)) {
          if (excl_.excluded(step.to)) continue;
          std::string nk = space_.canonical_key(step.to);
          auto [it, fresh] = seen.emplace(std::move(nk), std::make_pair(step.to, depth + 1));
          if (!fresh) continue;
          if (seen.size() > cap_) throw BudgetExceeded("AnchoredDetour exceeded vertex cap");
          offer(it->first, depth + 1);
          next.push_back(it->first);
        }
      }
      frontier = std::move(next);
      depth += 1;
    }
    if (best < 0 || best > length_cap) return std::nullopt;
    return best;
  }

 private:
  const S& space_;
  const Exclusion<S>& excl_;
  BallMap<typename S::vertex_type> back_;
  std::size_t cap_;

  // Complement-ball growth around the anchor.
  void grow_backward(std::int64_t radius) {
    using V = typename S::vertex_type;
    back_.dist.emplace(space_.canonical_key(back_.center), std::make_pair(back_.center, 0));
    back_.frontier = {space_.canonical_key(back_.center)};
    back_.radius = 0;
    while (back_.radius < radius && !back_.frontier.empty()) {
      std::vector<std::string> next;
      for (const auto& key : back_.frontier) {
        const V v = back_.dist.at(key).first;
        for (const auto& step : space_.neighbors(v)) {
          if (excl_.excluded(step.to)) continue;
          std::string nk = space_.canonical_key(step.to);
          auto [it, fresh] =
              back_.dist.emplace(std::move(nk), std::make_pair(step.to, back_.radius + 1));
          if (fresh) {
            if (back_.dist.size() > cap_) throw BudgetExceeded("AnchoredDetour exceeded vertex cap");
            next.push_back(it->first);
          }
        }
      }
      back_.frontier = std::move(next);
      back_.radius += 1;
    }
    back_.radius = radius;
  }
};

}  // namespace lindiv
