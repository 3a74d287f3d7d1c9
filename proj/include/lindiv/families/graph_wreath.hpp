#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "lindiv/rational.hpp"
#include "lindiv/space.hpp"

namespace lindiv {

// Lazily generated, genuinely infinite vertex-transitive graphs; finite
// truncations are deliberately not offered.
template <typename G>
concept GraphDriver = requires(const G& g, const typename G::vertex_type& v,
                               const typename G::vertex_type& u, std::int64_t len) {
  typename G::vertex_type;
  { g.basepoint() } -> std::convertible_to<typename G::vertex_type>;
  { g.neighbors(v) } -> std::convertible_to<std::vector<typename G::vertex_type>>;
  { g.degree_bound() } -> std::convertible_to<int>;
  { g.key(v) } -> std::convertible_to<std::string>;
  { g.norm(v) } -> std::convertible_to<std::int64_t>;
  { g.distance(u, v) } -> std::convertible_to<std::int64_t>;
  { g.geodesic(u, v) } -> std::convertible_to<std::vector<typename G::vertex_type>>;
  { g.ray(len) } -> std::convertible_to<std::vector<typename G::vertex_type>>;
};

struct ZLineGraph {
  using vertex_type = std::int64_t;

  vertex_type basepoint() const { return 0; }
  int degree_bound() const { return 2; }
  std::vector<vertex_type> neighbors(vertex_type v) const { return {v + 1, v - 1}; }
  std::string key(vertex_type v) const { return std::to_string(v); }
  std::int64_t norm(vertex_type v) const { return iabs(v); }
  std::int64_t distance(vertex_type u, vertex_type v) const { return iabs(u - v); }

  std::vector<vertex_type> geodesic(vertex_type u, vertex_type v) const {
    std::vector<vertex_type> out{u};
    const int dir = v >= u ? +1 : -1;
    for (vertex_type x = u; x != v; x += dir) out.push_back(x + dir);
    return out;
  }

  std::vector<vertex_type> ray(std::int64_t len) const {
    std::vector<vertex_type> out;
    for (std::int64_t i = 0; i <= len; ++i) out.push_back(i);
    return out;
  }

  std::string name() const { return "z-line"; }
};

struct GridGraph {
  using vertex_type = std::pair<std::int64_t, std::int64_t>;

  vertex_type basepoint() const { return {0, 0}; }
  int degree_bound() const { return 4; }
  std::vector<vertex_type> neighbors(vertex_type v) const {
    return {{v.first + 1, v.second},
            {v.first - 1, v.second},
            {v.first, v.second + 1},
            {v.first, v.second - 1}};
  }
  std::string key(vertex_type v) const {
    return std::to_string(v.first) + "," + std::to_string(v.second);
  }
  std::int64_t norm(vertex_type v) const { return iabs(v.first) + iabs(v.second); }
  std::int64_t distance(vertex_type u, vertex_type v) const {
    return iabs(u.first - v.first) + iabs(u.second - v.second);
  }

  std::vector<vertex_type> geodesic(vertex_type u, vertex_type v) const {
    std::vector<vertex_type> out{u};
    vertex_type cur = u;
    const int dx = v.first >= u.first ? +1 : -1;
    while (cur.first != v.first) {
      cur.first += dx;
      out.push_back(cur);
    }
    const int dy = v.second >= u.second ? +1 : -1;
    while (cur.second != v.second) {
      cur.second += dy;
      out.push_back(cur);
    }
    return out;
  }

  std::vector<vertex_type> ray(std::int64_t len) const {
    std::vector<vertex_type> out;
    for (std::int64_t i = 0; i <= len; ++i) out.push_back({i, 0});
    return out;
  }

  std::string name() const { return "z2-grid"; }
};

// k-regular tree: a vertex is its path word from the root, consecutive
// letters distinct. The root has k children; any other vertex has its parent
// plus k - 1 children.
struct RegularTreeGraph {
  using vertex_type = std::vector<std::int8_t>;
  std::int32_t k = 3;

  explicit RegularTreeGraph(std::int32_t degree) : k(degree) {
    check(degree >= 3, "regular tree driver needs degree >= 3");
  }

  vertex_type basepoint() const { return {}; }
  int degree_bound() const { return k; }

  std::vector<vertex_type> neighbors(const vertex_type& v) const {
    std::vector<vertex_type> out;
    if (!v.empty()) {
      vertex_type parent = v;
      parent.pop_back();
      out.push_back(parent);
    }
    for (std::int8_t c = 0; c < k; ++c) {
      if (!v.empty() && c == v.back()) continue;
      vertex_type child = v;
      child.push_back(c);
      out.push_back(child);
    }
    return out;
  }

  std::string key(const vertex_type& v) const {
    std::string out;
    for (std::int8_t c : v) out += static_cast<char>('a' + c);
    return out;
  }

  std::int64_t norm(const vertex_type& v) const { return static_cast<std::int64_t>(v.size()); }

  std::int64_t distance(const vertex_type& u, const vertex_type& v) const {
    std::size_t common = 0;
    while (common < u.size() && common < v.size() && u[common] == v[common]) ++common;
    return static_cast<std::int64_t>(u.size() - common + v.size() - common);
  }

  std::vector<vertex_type> geodesic(const vertex_type& u, const vertex_type& v) const {
    std::size_t common = 0;
    while (common < u.size() && common < v.size() && u[common] == v[common]) ++common;
    std::vector<vertex_type> out{u};
    vertex_type cur = u;
    while (cur.size() > common) {
      cur.pop_back();
      out.push_back(cur);
    }
    for (std::size_t i = common; i < v.size(); ++i) {
      cur.push_back(v[i]);
      out.push_back(cur);
    }
    return out;
  }

  std::vector<vertex_type> ray(std::int64_t len) const {
    std::vector<vertex_type> out{{}};
    vertex_type cur;
    for (std::int64_t i = 0; i < len; ++i) {
      cur.push_back(i % 2 == 0 ? 0 : 1);  // alternate to respect the word rule
      out.push_back(cur);
    }
    return out;
  }

  std::string name() const { return "tree-" + std::to_string(k); }
};

template <typename AV, typename BV>
struct GWVertex {
  std::map<AV, BV> support;  // a -> f(a) != b0
  AV cursor{};

  friend bool operator==(const GWVertex&, const GWVertex&) = default;
};

namespace gw_label {
inline constexpr std::int16_t kAMove = 0;  // arg: index into A-neighbors of the cursor
inline constexpr std::int16_t kBMove = 1;  // arg: index into B-neighbors of f(cursor)
}  // namespace gw_label

template <GraphDriver A, GraphDriver B>
class GWSpace {
 public:
  using AV = typename A::vertex_type;
  using BV = typename B::vertex_type;
  using vertex_type = GWVertex<AV, BV>;

  GWSpace(A a, B b) : a_(std::move(a)), b_(std::move(b)) {}

  const A& base_graph() const { return a_; }
  const B& fiber_graph() const { return b_; }

  vertex_type basepoint() const {
    vertex_type v;
    v.cursor = a_.basepoint();
    return v;
  }

  int degree_bound() const { return a_.degree_bound() + b_.degree_bound(); }

  BV value_at(const vertex_type& v, const AV& a) const {
    auto it = v.support.find(a);
    return it == v.support.end() ? b_.basepoint() : it->second;
  }

  vertex_type apply(const vertex_type& v, const Label& label) const {
    vertex_type out = v;
    if (label.kind == gw_label::kAMove) {
      out.cursor = a_.neighbors(v.cursor).at(label.arg);
      return out;
    }
    const BV value = value_at(v, v.cursor);
    const BV next = b_.neighbors(value).at(label.arg);
    if (next == b_.basepoint()) {
      out.support.erase(v.cursor);
    } else {
      out.support[v.cursor] = next;
    }
    return out;
  }

  std::vector<Step<vertex_type>> neighbors(const vertex_type& v) const {
    std::vector<Step<vertex_type>> out;
    out.reserve(degree_bound());
    const auto bnb = b_.neighbors(value_at(v, v.cursor));
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(bnb.size()); ++i) {
      Label l{gw_label::kBMove, i};
      out.push_back({l, apply(v, l)});
    }
    const auto anb = a_.neighbors(v.cursor);
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(anb.size()); ++i) {
      Label l{gw_label::kAMove, i};
      out.push_back({l, apply(v, l)});
    }
    return out;
  }

  std::string canonical_key(const vertex_type& v) const {
    std::string key = "@" + a_.key(v.cursor);
    for (const auto& [a, b] : v.support) key += "|" + a_.key(a) + "=" + b_.key(b);
    return key;
  }

  std::string label_text(const Label& label) const {
    return (label.kind == gw_label::kAMove ? "A" : "B") + std::to_string(label.arg);
  }

  Label parse_token(const std::string& token) const {
    if (token.size() >= 2 && token[0] == 'A') return {gw_label::kAMove, std::stoi(token.substr(1))};
    if (token.size() >= 2 && token[0] == 'B') return {gw_label::kBMove, std::stoi(token.substr(1))};
    throw ParseError("graph-wreath: unknown token '" + token + "'");
  }

  std::int64_t support_lower_bound(const vertex_type& v) const {
    std::int64_t best = 0;
    for (const auto& [a, b] : v.support) best = std::max(best, a_.norm(a));
    return best;
  }

  std::int64_t norm_lower_bound(const vertex_type& v) const {
    return std::max(support_lower_bound(v), a_.norm(v.cursor));
  }

  std::int64_t exact_norm(const vertex_type& v) const
    requires(std::same_as<A, ZLineGraph> && std::same_as<B, ZLineGraph>)
  {
    std::int64_t fiber_cost = 0;
    std::int64_t lo = std::min<std::int64_t>(0, v.cursor);
    std::int64_t hi = std::max<std::int64_t>(0, v.cursor);
    for (const auto& [a, b] : v.support) {
      fiber_cost += iabs(b);
      lo = std::min(lo, a);
      hi = std::max(hi, a);
    }
    const std::int64_t f = v.cursor;
    const std::int64_t walk = (hi - lo) + std::min((0 - lo) + (hi - f), (hi - 0) + (f - lo));
    return fiber_cost + walk;
  }

  std::int64_t pair_distance(const vertex_type& u, const vertex_type& v) const
    requires(std::same_as<A, ZLineGraph> && std::same_as<B, ZLineGraph>)
  {
    vertex_type diff;
    diff.cursor = v.cursor - u.cursor;
    for (const auto& [a, b] : v.support) diff.support[a - u.cursor] = b;
    for (const auto& [a, b] : u.support) {
      const std::int64_t key = a - u.cursor;
      const std::int64_t merged = (diff.support.count(key) ? diff.support[key] : 0) - b;
      if (merged == 0) {
        diff.support.erase(key);
      } else {
        diff.support[key] = merged;
      }
    }
    return exact_norm(diff);
  }

  // --- helpers used by the witness construction ---

  Label a_step_label(const AV& from, const AV& to) const {
    const auto nb = a_.neighbors(from);
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(nb.size()); ++i) {
      if (nb[i] == to) return {gw_label::kAMove, i};
    }
    throw InvalidInput("graph-wreath: not an A-edge");
  }

  Label b_step_label(const BV& from, const BV& to) const {
    const auto nb = b_.neighbors(from);
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(nb.size()); ++i) {
      if (nb[i] == to) return {gw_label::kBMove, i};
    }
    throw InvalidInput("graph-wreath: not a B-edge");
  }

 private:
  A a_;
  B b_;
};

using ZZGWSpace = GWSpace<ZLineGraph, ZLineGraph>;

// ---------------------------------------------------------------------------
// Witness construction. The caller supplies the base-graph itinerary of a
// geodesic word for g (cursor positions, starting at a0); for the Z-line
// instance a closed-form itinerary is available below, generic drivers
// recover one from a BFS word.
// ---------------------------------------------------------------------------

template <GraphDriver A, GraphDriver B>
struct GWTarget {
  std::int64_t n = 0;
  GWVertex<typename A::vertex_type, typename B::vertex_type> gstar;
  std::vector<typename A::vertex_type> astar_ray;  // a0 .. a*
  typename B::vertex_type bstar{};
};

template <GraphDriver A, GraphDriver B>
GWTarget<A, B> make_gw_target(const GWSpace<A, B>& space, std::int64_t n) {
  check(n >= 1, "graph-wreath target needs n >= 1");
  GWTarget<A, B> t;
  t.n = n;
  t.astar_ray = space.base_graph().ray(n - 1);
  t.bstar = space.fiber_graph().neighbors(space.fiber_graph().basepoint()).at(0);
  t.gstar.cursor = t.astar_ray.back();
  t.gstar.support[t.gstar.cursor] = t.bstar;
  return t;
}

struct GWWitnessInfo {
  int case_id = 0;
};

template <GraphDriver A, GraphDriver B>
Path<GWVertex<typename A::vertex_type, typename B::vertex_type>> witness_path_graph(
    const GWSpace<A, B>& space, const GWVertex<typename A::vertex_type, typename B::vertex_type>& g,
    std::int64_t n, const std::vector<typename A::vertex_type>& itinerary,
    const GWTarget<A, B>& target, GWWitnessInfo* info = nullptr) {
  using AV = typename A::vertex_type;
  using V = GWVertex<AV, typename B::vertex_type>;
  const A& ga = space.base_graph();
  const B& gb = space.fiber_graph();

  check(target.n == n, "graph-wreath target built for a different n");
  check(!itinerary.empty() && itinerary.front() == ga.basepoint() && itinerary.back() == g.cursor,
        "itinerary must run from a0 to the cursor");

  auto set_case = [&](int c) {
    if (info) info->case_id = c;
  };

  Path<V> path(g);
  auto push = [&](const Label& l) { path.push(l, space.apply(path.end(), l)); };
  auto move_along = [&](const std::vector<AV>& vertices, bool reversed) {
    if (vertices.size() < 2) return;
    if (!reversed) {
      for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
        push(space.a_step_label(vertices[i], vertices[i + 1]));
    } else {
      for (std::size_t i = vertices.size(); i-- > 1;)
        push(space.a_step_label(vertices[i], vertices[i - 1]));
    }
  };
  auto fiber_to = [&](const typename B::vertex_type& to) {
    const auto from = space.value_at(path.end(), path.end().cursor);
    const auto steps = gb.geodesic(from, to);
    for (std::size_t i = 0; i + 1 < steps.size(); ++i)
      push(space.b_step_label(steps[i], steps[i + 1]));
  };
  // Walk the itinerary forward from a0, clearing each support at first visit.
  auto clearing_tour = [&]() {
    std::map<AV, bool> cleared;
    auto clear_here = [&]() {
      const AV& here = path.end().cursor;
      if (g.support.count(here) && !cleared[here] && path.end().support.count(here)) {
        cleared[here] = true;
        fiber_to(gb.basepoint());
      }
    };
    clear_here();
    for (std::size_t i = 0; i + 1 < itinerary.size(); ++i) {
      push(space.a_step_label(itinerary[i], itinerary[i + 1]));
      clear_here();
    }
  };

  if (g == target.gstar) {
    set_case(0);
    return path;
  }

  const auto bval_at_astar = space.value_at(g, target.gstar.cursor);
  if (!(bval_at_astar == gb.basepoint())) {
    // The support already reaches a*; two fiber edges finish the job.
    check(g.cursor == target.gstar.cursor, "case 1 cursor forced to a*");
    check(gb.distance(bval_at_astar, target.bstar) <= 2, "case 1 fiber distance forced <= 2");
    set_case(1);
    fiber_to(target.bstar);
  } else {
    int case_id;
    if (6 * space.support_lower_bound(g) >= n) {
      case_id = 2;
    } else if (6 * ga.norm(g.cursor) >= n) {
      case_id = 3;
      fiber_to(target.bstar);  // light the cursor: a far support from here on
      if (g.cursor == target.gstar.cursor) {
        // Already sitting on a*: clear the remaining support and come back.
        // The fresh lamp at a* is not in g.support, so the tour keeps it.
        set_case(3);
        move_along(itinerary, true);
        clearing_tour();
        check(path.end() == target.gstar, "graph-wreath case 3 missed g*");
        return path;
      }
    } else {
      case_id = 4;
    }
    set_case(case_id);
    // Common core: travel to a*, place b*, then clear the support of g along
    // its own geodesic itinerary and return to a*.
    const bool prelit = case_id == 3;
    move_along(itinerary, true);             // cursor -> a0
    move_along(target.astar_ray, false);     // a0 -> a*
    fiber_to(target.bstar);
    move_along(target.astar_ray, true);      // a* -> a0
    clearing_tour();                         // a0 -> cursor, clearing support
    if (prelit) {
      fiber_to(gb.basepoint());              // retire the cursor lamp lit above
    }
    move_along(itinerary, true);             // cursor -> a0
    move_along(target.astar_ray, false);     // a0 -> a*
  }

  check(path.end() == target.gstar, "graph-wreath witness missed g*");
  check(static_cast<std::int64_t>(path.length()) <= 6 * n, "graph-wreath witness longer than 6n");
  return path;
}

// Closed-form geodesic itinerary for the Z-line instance: one of the two
// covering sweeps, ties sweeping left first.
inline std::vector<std::int64_t> zline_gw_itinerary(const ZZGWSpace& space,
                                                    const GWVertex<std::int64_t, std::int64_t>& g) {
  std::int64_t lo = std::min<std::int64_t>(0, g.cursor);
  std::int64_t hi = std::max<std::int64_t>(0, g.cursor);
  for (const auto& [a, b] : g.support) {
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  const std::int64_t f = g.cursor;
  const std::int64_t cost_left = (0 - lo) + (hi - lo) + (hi - f);
  const std::int64_t cost_right = (hi - 0) + (hi - lo) + (f - lo);
  std::vector<std::int64_t> itinerary{0};
  auto run = [&](std::int64_t from, std::int64_t to) {
    const int dir = to >= from ? +1 : -1;
    for (std::int64_t p = from; p != to; p += dir) itinerary.push_back(p + dir);
  };
  if (cost_left <= cost_right) {
    run(0, lo);
    run(lo, hi);
    run(hi, f);
  } else {
    run(0, hi);
    run(hi, lo);
    run(lo, f);
  }
  return itinerary;
}

// Itinerary of an arbitrary word (for BFS-recovered geodesics).
template <GraphDriver A, GraphDriver B>
std::vector<typename A::vertex_type> gw_itinerary_from_word(const GWSpace<A, B>& space,
                                                            const std::vector<Label>& word) {
  std::vector<typename A::vertex_type> itinerary{space.base_graph().basepoint()};
  GWVertex<typename A::vertex_type, typename B::vertex_type> v = space.basepoint();
  for (const auto& label : word) {
    v = space.apply(v, label);
    if (label.kind == gw_label::kAMove) itinerary.push_back(v.cursor);
  }
  return itinerary;
}

}  // namespace lindiv
