#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lindiv/rational.hpp"
#include "lindiv/space.hpp"

namespace lindiv {

// Horocyclic coordinates on a homogeneous tree with a fixed end: a height
// (the Busemann value) plus the digits chosen on the edges entering each
// level along the ray from the end. Zero digits are not stored; the root has
// height 0 and no digits.
struct TreeCoord {
  std::int64_t height = 0;
  std::map<std::int64_t, std::int32_t> digits;  // level -> nonzero digit, level <= height

  friend bool operator==(const TreeCoord&, const TreeCoord&) = default;
};

inline TreeCoord tree_parent(const TreeCoord& x) {
  TreeCoord out = x;
  out.digits.erase(out.height);
  out.height -= 1;
  return out;
}

inline TreeCoord tree_child(const TreeCoord& x, std::int32_t digit) {
  TreeCoord out = x;
  out.height += 1;
  if (digit != 0) out.digits[out.height] = digit;
  return out;
}

// Height of the confluent x curlywedge y with respect to the fixed end: the
// deepest common level, i.e. min height capped below the first disagreement.
inline std::int64_t confluent_height(const TreeCoord& x, const TreeCoord& y) {
  std::int64_t c = std::min(x.height, y.height);
  for (const auto& [level, digit] : x.digits) {
    if (level > c) continue;
    auto it = y.digits.find(level);
    if (it == y.digits.end() || it->second != digit) c = std::min(c, level - 1);
  }
  for (const auto& [level, digit] : y.digits) {
    if (level > c) continue;
    if (!x.digits.count(level)) c = std::min(c, level - 1);
  }
  return c;
}

inline std::int64_t tree_dist(const TreeCoord& x, const TreeCoord& y) {
  const std::int64_t c = confluent_height(x, y);
  return (x.height - c) + (y.height - c);
}

// Busemann value from the definition dist(x, x^o) - dist(o, x^o); the
// coordinate system makes this the stored height, and the identity guards
// the parent/child bookkeeping.
inline std::int64_t busemann_from_confluent(const TreeCoord& x) {
  TreeCoord root;
  const std::int64_t c = confluent_height(x, root);
  return (x.height - c) - (0 - c);
}

struct DLVertex {
  TreeCoord t1;  // branching p
  TreeCoord t2;  // branching q

  friend bool operator==(const DLVertex&, const DLVertex&) = default;
};

inline std::int64_t dl_level(const DLVertex& v) { return v.t2.height; }

namespace dl_label {
inline constexpr std::int16_t kUp = 0;    // arg: digit of the T2 child
inline constexpr std::int16_t kDown = 1;  // arg: digit of the T1 child
}  // namespace dl_label

class DLSpace {
 public:
  using vertex_type = DLVertex;

  DLSpace(std::int32_t p, std::int32_t q) : p_(p), q_(q) {
    check(p >= 2 && q >= 2, "DL(p, q) needs p, q >= 2");
  }

  std::int32_t p() const { return p_; }
  std::int32_t q() const { return q_; }

  DLVertex basepoint() const { return {}; }

  int degree_bound() const { return p_ + q_; }

  DLVertex apply(const DLVertex& v, const Label& label) const {
    DLVertex out = v;
    if (label.kind == dl_label::kUp) {
      out.t1 = tree_parent(v.t1);
      out.t2 = tree_child(v.t2, label.arg);
    } else {
      out.t1 = tree_child(v.t1, label.arg);
      out.t2 = tree_parent(v.t2);
    }
    check(out.t1.height + out.t2.height == 0, "DL height sum must stay zero");
    return out;
  }

  std::vector<Step<DLVertex>> neighbors(const DLVertex& v) const {
    std::vector<Step<DLVertex>> out;
    out.reserve(p_ + q_);
    for (std::int32_t d = 0; d < q_; ++d) {
      Label l{dl_label::kUp, d};
      out.push_back({l, apply(v, l)});
    }
    for (std::int32_t d = 0; d < p_; ++d) {
      Label l{dl_label::kDown, d};
      out.push_back({l, apply(v, l)});
    }
    return out;
  }

  std::string canonical_key(const DLVertex& v) const {
    std::string key = "h" + std::to_string(v.t1.height) + "[";
    for (const auto& [level, digit] : v.t1.digits)
      key += std::to_string(level) + ":" + std::to_string(digit) + ",";
    key += "][";
    for (const auto& [level, digit] : v.t2.digits)
      key += std::to_string(level) + ":" + std::to_string(digit) + ",";
    key += "]";
    return key;
  }

  std::string label_text(const Label& label) const {
    return (label.kind == dl_label::kUp ? "up" : "down") + std::to_string(label.arg);
  }

  Label parse_token(const std::string& token) const {
    if (token.rfind("up", 0) == 0) return {dl_label::kUp, std::stoi(token.substr(2))};
    if (token.rfind("down", 0) == 0) return {dl_label::kDown, std::stoi(token.substr(4))};
    throw ParseError("dl: unknown token '" + token + "'");
  }

  // The closed-form metric: dist = dist_1 + dist_2 - |height difference|.
  std::int64_t pair_distance(const DLVertex& u, const DLVertex& v) const {
    return tree_dist(u.t1, v.t1) + tree_dist(u.t2, v.t2) -
           iabs(v.t1.height - u.t1.height);
  }

  std::int64_t exact_norm(const DLVertex& v) const { return pair_distance(basepoint(), v); }

  // The metric is closed-form, so the exact norm doubles as the certificate.
  std::int64_t norm_lower_bound(const DLVertex& v) const { return exact_norm(v); }

  // Heights plus pairwise confluent heights of {u, v, o} in both trees pin
  // the spanning-tree shape, and the automorphisms fixing o and both ends
  // (vertex-wise digit relabelings, with labels along the o-rays pinned) act
  // transitively on configurations of equal shape. Distances in the graph
  // minus any o-centered ball are therefore functions of this key.
  std::string pair_orbit_key(const DLVertex& u, const DLVertex& v) const {
    const TreeCoord root;
    auto encode = [&](const DLVertex& x, const DLVertex& y) {
      const std::int64_t t[10] = {x.t1.height,
                                  y.t1.height,
                                  confluent_height(x.t1, y.t1),
                                  confluent_height(x.t1, root),
                                  confluent_height(y.t1, root),
                                  x.t2.height,
                                  y.t2.height,
                                  confluent_height(x.t2, y.t2),
                                  confluent_height(x.t2, root),
                                  confluent_height(y.t2, root)};
      std::string out;
      for (auto z : t) out += std::to_string(z) + ";";
      return out;
    };
    std::string uv = encode(u, v), vu = encode(v, u);
    return uv <= vu ? uv : vu;
  }

 private:
  std::int32_t p_, q_;
};

// ---------------------------------------------------------------------------
// Witness path: ascend to level n choosing norm-increasing T2 children, then
// route through w1 o2 to the fixed endpoint a1 a2.
// ---------------------------------------------------------------------------

inline DLVertex make_dl_target(std::int64_t n) {
  DLVertex t;
  t.t1.height = -n;
  t.t2.height = n;  // the all-zero-digit ascent from o2
  return t;
}

inline Path<DLVertex> witness_path_dl(const DLSpace& space, const DLVertex& v, std::int64_t n) {
  if (space.exact_norm(v) != n) throw InvalidInput("witness_path_dl: ||v|| != n");
  const DLVertex target = make_dl_target(n);
  Path<DLVertex> path(v);
  if (n == 0) return path;

  // Ascent: the T2 projection must gain norm each step, which fails only for
  // the digit continuing toward o2; take the smallest valid digit.
  while (dl_level(path.end()) < n) {
    const TreeCoord& x2 = path.end().t2;
    const std::int32_t d = (x2.digits.empty() && x2.height < 0) ? 1 : 0;
    Label l{dl_label::kUp, d};
    path.push(l, space.apply(path.end(), l));
  }
  check(path.end().t1 == target.t1, "ascent must land on the a1 ray");
  if (path.end() == target) return path;

  // Connector, forward from a1 z2: T2 descends to the confluent with o2 and
  // climbs back to o2, while T1 descends from a1 through the digit-1 child to
  // w1 (bouncing below w1 exactly when the confluent is below height 0).
  const std::int64_t c = confluent_height(path.end().t2, TreeCoord{});
  for (std::int64_t i = 0; i < n - c; ++i) {
    Label l{dl_label::kDown, i == 0 ? 1 : 0};
    path.push(l, space.apply(path.end(), l));
  }
  for (std::int64_t i = 0; i < -c; ++i) {
    Label l{dl_label::kUp, 0};
    path.push(l, space.apply(path.end(), l));
  }
  check(path.end().t2 == TreeCoord{}, "connector must end on o2");
  check(space.exact_norm(path.end()) == 2 * n, "w1 o2 sits at norm 2n");

  // Reverse of the paper's first connector: straight up from w1 o2 to a1 a2.
  for (std::int64_t i = 0; i < n; ++i) {
    Label l{dl_label::kUp, 0};
    path.push(l, space.apply(path.end(), l));
  }
  check(path.end() == target, "dl witness missed a1 a2");
  return path;
}

// ---------------------------------------------------------------------------
// Closed-form sphere enumeration. A vertex at tree heights (h, -h) with
// descents (D1, D2) below the confluents has norm 2 D1 + 2 D2 - |h|; digits
// below the confluent are forced, digits above are free.
// ---------------------------------------------------------------------------

namespace detail {

inline void enumerate_tree_coords(std::int32_t branching, std::int64_t height, std::int64_t descent,
                                  const std::function<void(const TreeCoord&)>& visit) {
  // Digits live on levels height - descent + 1 .. height; the lowest one is
  // nonzero unless the confluent equals min(0, height).
  TreeCoord coord;
  coord.height = height;
  if (descent == 0) {
    visit(coord);
    return;
  }
  const std::int64_t lo = height - descent + 1;
  const bool lowest_forced_nonzero = lo <= 0;  // otherwise the confluent would rise
  std::function<void(std::int64_t)> rec = [&](std::int64_t level) {
    if (level > height) {
      visit(coord);
      return;
    }
    const std::int32_t first = (level == lo && lowest_forced_nonzero) ? 1 : 0;
    for (std::int32_t d = first; d < branching; ++d) {
      if (d != 0) coord.digits[level] = d;
      rec(level + 1);
      coord.digits.erase(level);
    }
  };
  rec(lo);
}

}  // namespace detail

// Visits every vertex at distance exactly n from o1 o2, without BFS.
inline void enumerate_dl_sphere(const DLSpace& space, std::int64_t n,
                                const std::function<void(const DLVertex&)>& visit) {
  if (n == 0) {
    visit(space.basepoint());
    return;
  }
  for (std::int64_t h1 = -(n); h1 <= n; ++h1) {
    const std::int64_t H = iabs(h1);
    if ((n + H) % 2 != 0) continue;
    const std::int64_t total = (n + H) / 2;  // D1 + D2
    for (std::int64_t d1 = 0; d1 <= total; ++d1) {
      const std::int64_t d2 = total - d1;
      if (d1 < std::max<std::int64_t>(0, h1)) continue;
      if (d2 < std::max<std::int64_t>(0, -h1)) continue;
      detail::enumerate_tree_coords(space.p(), h1, d1, [&](const TreeCoord& x1) {
        detail::enumerate_tree_coords(space.q(), -h1, d2, [&](const TreeCoord& x2) {
          DLVertex v{x1, x2};
          visit(v);
        });
      });
    }
  }
}

}  // namespace lindiv
