#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "lindiv/families/base_action.hpp"
#include "lindiv/families/lamp_driver.hpp"
#include "lindiv/rational.hpp"
#include "lindiv/space.hpp"

namespace lindiv {

// Finitely supported lamp configuration plus cursor. Stored lamp values are
// never the lamp identity; the sorted map doubles as the canonical order.
struct WreathElement {
  std::map<XPoint, std::int64_t> lamps;
  std::int64_t cursor = 0;

  friend bool operator==(const WreathElement&, const WreathElement&) = default;
};

namespace wreath_label {
inline constexpr std::int16_t kBase = 0;      // arg: +1 / -1 cursor move
inline constexpr std::int16_t kLampUp = 1;    // arg: orbit index
inline constexpr std::int16_t kLampDown = 2;  // arg: orbit index
}  // namespace wreath_label

// An optimal generator expression e_1 h_1 e_2 ... e_m h_m e_{m+1}: the base
// walk is a minimal-length walk through the lit positions ending at the
// cursor, with lamp words spliced in at first visits.
struct WreathTraversal {
  std::vector<std::vector<Label>> segments;        // m + 1 base-walk segments
  std::vector<XPoint> stops;                       // x_1 .. x_m in walk order
  std::vector<std::int64_t> stop_values;           // lamp value at each stop
  std::vector<std::vector<Label>> lamp_words;      // identity -> value
  std::vector<std::vector<Label>> lamp_words_inv;  // value -> identity
  std::int64_t walk_cost = 0;
  std::int64_t lamp_cost = 0;

  std::size_t stop_count() const { return stops.size(); }
  std::int64_t total_cost() const { return walk_cost + lamp_cost; }
};

struct WreathWitnessTarget {
  std::int64_t n = 0;
  WreathElement gstar;
  std::vector<Label> fstar_word;
  XPoint xstar;
  std::vector<Label> xss_word;  // word to x** (Schreier case 4)
  XPoint xss;
  std::int64_t M = 0;  // finite-X constant max ||c_i||_F
};

template <ActionKind K>
class WreathSpace {
 public:
  using vertex_type = WreathElement;

  explicit WreathSpace(LampDriver lamps, std::int64_t k_mod = 0)
      : lamps_(lamps),
        action_(K == ActionKind::ModK ? BaseAction::mod_k(k_mod) : BaseAction{K, 0}) {
    if constexpr (K == ActionKind::ModK) {
      check(lamps_.modulus == 0, "finite-X wreath products are built with Z lamps here");
    }
  }

  const LampDriver& lamp_driver() const { return lamps_; }
  const BaseAction& action() const { return action_; }

  WreathElement basepoint() const { return {}; }

  int degree_bound() const {
    return 2 + action_.orbit_count() * (lamps_.involutive() ? 1 : 2);
  }

  WreathElement apply(const WreathElement& v, const Label& label) const {
    WreathElement out = v;
    if (label.kind == wreath_label::kBase) {
      out.cursor += label.arg;
      return out;
    }
    const int step = label.kind == wreath_label::kLampUp ? +1 : -1;
    const XPoint pos = action_.position(v.cursor, label.arg);
    std::int64_t value = lamps_.add(out.lamps.count(pos) ? out.lamps[pos] : 0, step);
    if (value == 0) {
      out.lamps.erase(pos);
    } else {
      out.lamps[pos] = value;
    }
    return out;
  }

  std::vector<Step<WreathElement>> neighbors(const WreathElement& v) const {
    std::vector<Step<WreathElement>> out;
    out.reserve(degree_bound());
    for (int dir : {+1, -1}) {
      Label l{wreath_label::kBase, dir};
      out.push_back({l, apply(v, l)});
    }
    for (std::int32_t orbit = 0; orbit < action_.orbit_count(); ++orbit) {
      Label up{wreath_label::kLampUp, orbit};
      out.push_back({up, apply(v, up)});
      if (!lamps_.involutive()) {
        Label down{wreath_label::kLampDown, orbit};
        out.push_back({down, apply(v, down)});
      }
    }
    return out;
  }

  std::string canonical_key(const WreathElement& v) const {
    std::string key = "c" + std::to_string(v.cursor);
    for (const auto& [pos, value] : v.lamps) {
      key += "|" + std::to_string(pos.orbit) + ":" + std::to_string(pos.coord) + "=" +
             std::to_string(value);
    }
    return key;
  }

  std::string label_text(const Label& label) const {
    if (label.kind == wreath_label::kBase) return label.arg > 0 ? "t" : "t^-1";
    std::string base = label.arg == 0 ? "h0" : ("h0@" + std::to_string(label.arg));
    if (label.kind == wreath_label::kLampDown && !lamps_.involutive()) base += "^-1";
    return base;
  }

  Label parse_token(const std::string& token) const {
    if (token == "t") return {wreath_label::kBase, +1};
    if (token == "t^-1") return {wreath_label::kBase, -1};
    std::string body = token;
    std::int16_t kind = wreath_label::kLampUp;
    if (body.size() > 3 && body.substr(body.size() - 3) == "^-1") {
      body = body.substr(0, body.size() - 3);
      kind = lamps_.involutive() ? wreath_label::kLampUp : wreath_label::kLampDown;
    }
    if (body == "h0") return {kind, 0};
    if (body.rfind("h0@", 0) == 0) {
      std::int32_t orbit = std::stoi(body.substr(3));
      if (orbit < 0 || orbit >= action_.orbit_count()) {
        throw ParseError("wreath: no orbit representative " + token);
      }
      return {kind, orbit};
    }
    throw ParseError("wreath: unknown token '" + token + "'");
  }

  Label label_inverse(const Label& label) const {
    if (label.kind == wreath_label::kBase) return {wreath_label::kBase, -label.arg};
    if (lamps_.involutive()) return label;
    return {label.kind == wreath_label::kLampUp ? wreath_label::kLampDown : wreath_label::kLampUp,
            label.arg};
  }

  // ||g||_G = sum of lamp norms plus the minimal covering walk on Z through
  // the lit positions ending at the cursor.
  std::int64_t exact_norm(const WreathElement& v) const
    requires(K == ActionKind::RegularZ || K == ActionKind::TranslationZ)
  {
    std::int64_t lamp_cost = 0;
    std::int64_t lo = std::min<std::int64_t>(0, v.cursor);
    std::int64_t hi = std::max<std::int64_t>(0, v.cursor);
    for (const auto& [pos, value] : v.lamps) {
      lamp_cost += lamps_.norm(value);
      lo = std::min(lo, pos.coord);
      hi = std::max(hi, pos.coord);
    }
    const std::int64_t f = v.cursor;
    const std::int64_t walk = (hi - lo) + std::min((0 - lo) + (hi - f), (hi - 0) + (f - lo));
    return lamp_cost + walk;
  }

  // d(u, v) = ||u^{-1} v||, computed through the semidirect product law.
  std::int64_t pair_distance(const WreathElement& u, const WreathElement& v) const
    requires(K == ActionKind::RegularZ || K == ActionKind::TranslationZ)
  {
    WreathElement diff;
    diff.cursor = v.cursor - u.cursor;
    for (const auto& [pos, value] : v.lamps) {
      diff.lamps[XPoint{pos.orbit, pos.coord - u.cursor}] = value;
    }
    for (const auto& [pos, value] : u.lamps) {
      XPoint p{pos.orbit, pos.coord - u.cursor};
      std::int64_t merged = lamps_.normalize((diff.lamps.count(p) ? diff.lamps[p] : 0) - value);
      if (merged == 0) {
        diff.lamps.erase(p);
      } else {
        diff.lamps[p] = merged;
      }
    }
    return exact_norm(diff);
  }

  // Max X-norm over lit lamps (the Lemma-style certificate).
  std::int64_t lamp_lower_bound(const WreathElement& v) const {
    std::int64_t best = 0;
    for (const auto& [pos, value] : v.lamps) best = std::max(best, action_.xnorm(pos));
    return best;
  }

  // Registered certificate: lamp bound joined with the cursor projection,
  // which is 1-Lipschitz under every generator.
  std::int64_t norm_lower_bound(const WreathElement& v) const {
    return std::max(lamp_lower_bound(v), action_.xnorm(action_.position(v.cursor, 0)));
  }

  WreathTraversal optimal_traversal(const WreathElement& v) const {
    if constexpr (K == ActionKind::ModK) {
      return traversal_mod_k(v);
    } else {
      return traversal_line(v);
    }
  }

  Path<WreathElement> walk_path(const WreathElement& start, const std::vector<Label>& labels) const {
    Path<WreathElement> path(start);
    for (const auto& label : labels) path.push(label, apply(path.end(), label));
    return path;
  }

 private:
  LampDriver lamps_;
  BaseAction action_;

  std::vector<Label> base_run(std::int64_t from, std::int64_t to) const {
    std::vector<Label> out;
    const int dir = to >= from ? +1 : -1;
    for (std::int64_t i = 0; i < iabs(to - from); ++i)
      out.push_back({wreath_label::kBase, dir});
    return out;
  }

  std::vector<Label> lamp_run(const std::vector<int>& steps, std::int32_t orbit) const {
    std::vector<Label> out;
    for (int s : steps) {
      const bool up = s > 0 || lamps_.involutive();
      out.push_back({up ? wreath_label::kLampUp : wreath_label::kLampDown, orbit});
    }
    return out;
  }

  // Builds segments/stops from an explicit cursor itinerary. Lamps are
  // handled at the first visit of their position.
  WreathTraversal traversal_from_positions(const WreathElement& v,
                                           const std::vector<std::int64_t>& itinerary) const {
    WreathTraversal t;
    std::vector<Label> pending;
    std::map<XPoint, bool> done;
    auto visit = [&](std::int64_t pos_coord) {
      for (std::int32_t orbit = 0; orbit < action_.orbit_count(); ++orbit) {
        XPoint pos = action_.position(pos_coord, orbit);
        auto it = v.lamps.find(pos);
        if (it == v.lamps.end() || done[pos]) continue;
        done[pos] = true;
        t.segments.push_back(pending);
        pending.clear();
        t.stops.push_back(pos);
        t.stop_values.push_back(it->second);
        t.lamp_words.push_back(lamp_run(lamps_.geodesic_between(0, it->second), orbit));
        t.lamp_words_inv.push_back(lamp_run(lamps_.geodesic_to_identity(it->second), orbit));
        t.lamp_cost += lamps_.norm(it->second);
      }
    };
    visit(itinerary.front());
    for (std::size_t i = 1; i < itinerary.size(); ++i) {
      const int dir = itinerary[i] > itinerary[i - 1] ? +1 : -1;
      pending.push_back({wreath_label::kBase, dir});
      t.walk_cost += 1;
      visit(itinerary[i]);
    }
    t.segments.push_back(pending);
    check(t.stops.size() == v.lamps.size(), "traversal missed a lamp");
    return t;
  }

  WreathTraversal traversal_line(const WreathElement& v) const {
    std::int64_t lo = std::min<std::int64_t>(0, v.cursor);
    std::int64_t hi = std::max<std::int64_t>(0, v.cursor);
    for (const auto& [pos, value] : v.lamps) {
      lo = std::min(lo, pos.coord);
      hi = std::max(hi, pos.coord);
    }
    const std::int64_t f = v.cursor;
    const std::int64_t cost_left = (0 - lo) + (hi - lo) + (hi - f);
    const std::int64_t cost_right = (hi - 0) + (hi - lo) + (f - lo);
    std::vector<std::int64_t> itinerary;
    auto run = [&](std::int64_t from, std::int64_t to) {
      const int dir = to >= from ? +1 : -1;
      for (std::int64_t p = from; p != to; p += dir) itinerary.push_back(p + dir);
    };
    itinerary.push_back(0);
    if (cost_left <= cost_right) {  // ties sweep left first
      run(0, lo);
      run(lo, hi);
      run(hi, f);
    } else {
      run(0, hi);
      run(hi, lo);
      run(lo, f);
    }
    return traversal_from_positions(v, itinerary);
  }

  // Finite X: minimal covering walk found by breadth-first search over
  // (cursor, set of lit residues already visited).
  WreathTraversal traversal_mod_k(const WreathElement& v) const {
    const std::int64_t k = action_.k_mod;
    std::vector<int> lit(k, 0);
    int full = 0;
    for (const auto& [pos, value] : v.lamps) {
      lit[pos.coord] = 1;
      full |= 1 << pos.coord;
    }
    const std::int64_t span = iabs(v.cursor) + 2 * k + 1;
    auto residue = [&](std::int64_t c) { return ((c % k) + k) % k; };
    auto mask_at = [&](std::int64_t c, int mask) {
      const std::int64_t r = residue(c);
      return lit[r] ? (mask | (1 << r)) : mask;
    };
    struct State {
      std::int64_t pos;
      int mask;
    };
    auto encode = [&](std::int64_t pos, int mask) {
      return (pos + span) * (1 << k) + mask;
    };
    std::map<std::int64_t, std::pair<std::int64_t, int>> parent;  // state -> previous state + dir
    std::deque<State> queue;
    State start{0, mask_at(0, 0)};
    parent[encode(start.pos, start.mask)] = {-1, 0};
    queue.push_back(start);
    std::int64_t goal = -1;
    while (!queue.empty()) {
      State s = queue.front();
      queue.pop_front();
      if (s.pos == v.cursor && s.mask == full) {
        goal = encode(s.pos, s.mask);
        break;
      }
      for (int dir : {+1, -1}) {
        std::int64_t np = s.pos + dir;
        if (iabs(np) > span) continue;
        int nm = mask_at(np, s.mask);
        std::int64_t code = encode(np, nm);
        if (parent.count(code)) continue;
        parent[code] = {encode(s.pos, s.mask), dir};
        queue.push_back({np, nm});
      }
    }
    check(goal >= 0, "mod-k traversal found no covering walk");
    std::vector<std::int64_t> itinerary;
    std::int64_t cur = goal;
    while (cur >= 0) {
      itinerary.push_back(cur / (1 << k) - span);
      cur = parent.at(cur).first;
    }
    std::reverse(itinerary.begin(), itinerary.end());
    return traversal_from_positions(v, itinerary);
  }
};

using LamplighterSpace = WreathSpace<ActionKind::RegularZ>;

// ---------------------------------------------------------------------------
// Witness construction (the explicit detour to g*).
// ---------------------------------------------------------------------------

inline std::vector<Label> concat_labels(const std::vector<std::vector<Label>>& runs) {
  std::vector<Label> out;
  for (const auto& run : runs) out.insert(out.end(), run.begin(), run.end());
  return out;
}

template <ActionKind K>
std::vector<Label> reversed_inverted(const WreathSpace<K>& space, const std::vector<Label>& labels) {
  std::vector<Label> out;
  out.reserve(labels.size());
  for (auto it = labels.rbegin(); it != labels.rend(); ++it) out.push_back(space.label_inverse(*it));
  return out;
}

template <ActionKind K>
WreathWitnessTarget make_wreath_target(const WreathSpace<K>& space, std::int64_t n) {
  check(n >= 1, "witness target needs n >= 1");
  WreathWitnessTarget t;
  t.n = n;
  if constexpr (K == ActionKind::ModK) {
    t.M = space.action().k_mod / 2;
    t.gstar.lamps[XPoint{0, 0}] = n;
    t.gstar.cursor = 0;
    return t;
  }
  for (std::int64_t i = 0; i < n - 1; ++i) t.fstar_word.push_back({wreath_label::kBase, +1});
  t.xstar = space.action().position(n - 1, 0);
  const std::int64_t p = (n + 5) / 6;  // ceil(n/6)
  for (std::int64_t i = 0; i < p; ++i) t.xss_word.push_back({wreath_label::kBase, +1});
  t.xss = space.action().position(p, 0);
  WreathElement g;
  g.cursor = n - 1;
  g.lamps[t.xstar] = 1;
  t.gstar = g;
  return t;
}

// Radius of the ball the witness avoids: n/6 in the infinite-X branches,
// n/2 - 2M for finite X.
template <ActionKind K>
Rational wreath_witness_radius(const WreathSpace<K>& space, std::int64_t n) {
  if constexpr (K == ActionKind::ModK) {
    return Rational(n, 2) - Rational(2 * (space.action().k_mod / 2));
  } else {
    (void)space;
    return Rational(n, 6);
  }
}

struct WreathWitness {
  Path<WreathElement> path;
  int case_id = 0;  // 0: trivial, 1..4 per the proof, 5: finite-X branch
};

namespace detail {

template <ActionKind K>
std::vector<Label> wreath_case2_labels(const WreathSpace<K>& space, const WreathTraversal& t,
                                       const WreathWitnessTarget& target) {
  std::vector<Label> labels = reversed_inverted(space, concat_labels(t.segments));
  labels.insert(labels.end(), target.fstar_word.begin(), target.fstar_word.end());
  labels.push_back({wreath_label::kLampUp, 0});
  auto back = reversed_inverted(space, target.fstar_word);
  labels.insert(labels.end(), back.begin(), back.end());
  for (std::size_t i = 0; i < t.stop_count(); ++i) {
    labels.insert(labels.end(), t.segments[i].begin(), t.segments[i].end());
  }
  for (std::size_t i = t.stop_count(); i-- > 0;) {
    labels.insert(labels.end(), t.lamp_words_inv[i].begin(), t.lamp_words_inv[i].end());
    auto seg = reversed_inverted(space, t.segments[i]);
    labels.insert(labels.end(), seg.begin(), seg.end());
  }
  labels.insert(labels.end(), target.fstar_word.begin(), target.fstar_word.end());
  return labels;
}

template <ActionKind K>
std::vector<Label> wreath_case4_regular_labels(const WreathSpace<K>& space,
                                               const WreathTraversal& t,
                                               const WreathWitnessTarget& target) {
  std::vector<Label> labels = reversed_inverted(space, concat_labels(t.segments));
  labels.insert(labels.end(), target.fstar_word.begin(), target.fstar_word.end());
  labels.push_back({wreath_label::kLampUp, 0});
  auto back = reversed_inverted(space, target.fstar_word);
  labels.insert(labels.end(), back.begin(), back.end());
  std::vector<Label> inward;
  for (std::size_t i = 0; i < t.stop_count(); ++i) {
    labels.insert(labels.end(), t.segments[i].begin(), t.segments[i].end());
    labels.insert(labels.end(), t.lamp_words_inv[i].begin(), t.lamp_words_inv[i].end());
    inward.insert(inward.end(), t.segments[i].begin(), t.segments[i].end());
  }
  auto out = reversed_inverted(space, inward);
  labels.insert(labels.end(), out.begin(), out.end());
  labels.insert(labels.end(), target.fstar_word.begin(), target.fstar_word.end());
  return labels;
}

template <ActionKind K>
std::vector<Label> wreath_case4_schreier_labels(const WreathSpace<K>& space,
                                                const WreathTraversal& t,
                                                const WreathElement& g,
                                                const WreathWitnessTarget& target) {
  // t-word: minimal F-word moving y0 to the cursor position; for the built-in
  // translation actions that is t^cursor.
  std::vector<Label> tword;
  const int dir = g.cursor >= 0 ? +1 : -1;
  for (std::int64_t i = 0; i < iabs(g.cursor); ++i) tword.push_back({wreath_label::kBase, dir});

  std::vector<Label> labels = reversed_inverted(space, tword);
  labels.insert(labels.end(), target.xss_word.begin(), target.xss_word.end());
  labels.push_back({wreath_label::kLampUp, 0});
  auto xss_back = reversed_inverted(space, target.xss_word);
  labels.insert(labels.end(), xss_back.begin(), xss_back.end());
  labels.insert(labels.end(), tword.begin(), tword.end());
  // e_{m+1}^{-1}, h_m^{-1}, e_m^{-1}, ..., h_1^{-1}, e_1^{-1}
  auto last = reversed_inverted(space, t.segments[t.stop_count()]);
  labels.insert(labels.end(), last.begin(), last.end());
  for (std::size_t i = t.stop_count(); i-- > 0;) {
    labels.insert(labels.end(), t.lamp_words_inv[i].begin(), t.lamp_words_inv[i].end());
    auto seg = reversed_inverted(space, t.segments[i]);
    labels.insert(labels.end(), seg.begin(), seg.end());
  }
  labels.insert(labels.end(), target.fstar_word.begin(), target.fstar_word.end());
  labels.push_back({wreath_label::kLampUp, 0});
  auto fstar_back = reversed_inverted(space, target.fstar_word);
  labels.insert(labels.end(), fstar_back.begin(), fstar_back.end());
  labels.insert(labels.end(), target.xss_word.begin(), target.xss_word.end());
  labels.push_back(space.label_inverse(Label{wreath_label::kLampUp, 0}));
  labels.insert(labels.end(), xss_back.begin(), xss_back.end());
  labels.insert(labels.end(), target.fstar_word.begin(), target.fstar_word.end());
  return labels;
}

// Finite X with infinite lamps: connect g to the element with lamp value n at
// y0, staying outside B(1, n/2 - 2M).
template <ActionKind K>
std::vector<Label> wreath_finite_x_labels(const WreathSpace<K>& space, const WreathElement& g,
                                          std::int64_t n) {
  const std::int64_t k = space.action().k_mod;
  const LampDriver& driver = space.lamp_driver();
  std::vector<std::int64_t> value(k, 0);
  for (const auto& [pos, val] : g.lamps) value[pos.coord] = val;

  // Choose the residue whose lamp gets rebuilt into the target value: y0 when
  // its lamp is small enough, otherwise a residue of minimal lamp norm.
  std::int64_t j = 0;
  if (2 * driver.norm(value[0]) > n) {
    for (std::int64_t r = 1; r < k; ++r) {
      if (driver.norm(value[r]) < driver.norm(value[j])) j = r;
    }
  }

  auto base_run = [&](std::int64_t from, std::int64_t to) {
    std::vector<Label> out;
    const int dir = to >= from ? +1 : -1;
    for (std::int64_t i = 0; i < iabs(to - from); ++i)
      out.push_back({wreath_label::kBase, dir});
    return out;
  };
  auto lamp_word = [&](const std::vector<int>& steps) {
    std::vector<Label> out;
    for (int s : steps)
      out.push_back({s > 0 ? wreath_label::kLampUp : wreath_label::kLampDown, 0});
    return out;
  };
  auto residue = [&](std::int64_t c) { return ((c % k) + k) % k; };

  // Nearest integer congruent to j, ties toward the positive side.
  std::int64_t delta = ((j - g.cursor) % k + k) % k;
  if (delta > k - delta) delta -= k;
  const std::int64_t f2 = g.cursor + delta;

  std::vector<Label> labels = base_run(g.cursor, f2);
  auto build = lamp_word(driver.geodesic_between(value[j], n));
  labels.insert(labels.end(), build.begin(), build.end());

  // Tour the remaining lit residues, ending at the integer 0.
  std::vector<std::int64_t> todo;
  for (std::int64_t r = 0; r < k; ++r) {
    if (r != j && value[r] != 0) todo.push_back(r);
  }
  std::int64_t at = f2;
  // Greedy nearest-first tour; the residues sit within distance k of any
  // position, so the total stays linear with constant depending on k.
  std::vector<bool> done(k, false);
  for (std::size_t count = 0; count < todo.size(); ++count) {
    std::int64_t best_r = -1, best_pos = 0, best_d = 0;
    for (std::int64_t r : todo) {
      if (done[r]) continue;
      std::int64_t d = ((r - at) % k + k) % k;
      if (d > k - d) d -= k;
      std::int64_t pos = at + d;
      if (best_r < 0 || iabs(d) < best_d) {
        best_r = r;
        best_pos = pos;
        best_d = iabs(d);
      }
    }
    auto run = base_run(at, best_pos);
    labels.insert(labels.end(), run.begin(), run.end());
    auto off = lamp_word(driver.geodesic_to_identity(value[best_r]));
    labels.insert(labels.end(), off.begin(), off.end());
    at = best_pos;
    done[best_r] = true;
  }
  auto home = base_run(at, 0);
  labels.insert(labels.end(), home.begin(), home.end());

  if (j != residue(0)) {
    // Light y0 up to the target value while the lamp at j keeps the norm
    // high, then retire the lamp at j.
    auto light = lamp_word(driver.geodesic_between(0, n));
    labels.insert(labels.end(), light.begin(), light.end());
    std::int64_t jr = j <= k - j ? j : j - k;
    auto go = base_run(0, jr);
    labels.insert(labels.end(), go.begin(), go.end());
    auto off = lamp_word(driver.geodesic_to_identity(n));
    labels.insert(labels.end(), off.begin(), off.end());
    auto back = base_run(jr, 0);
    labels.insert(labels.end(), back.begin(), back.end());
  }
  return labels;
}

}  // namespace detail

template <ActionKind K>
WreathWitness build_wreath_witness(const WreathSpace<K>& space, const WreathElement& g,
                                   std::int64_t n, const WreathWitnessTarget& target) {
  if constexpr (K == ActionKind::RegularZ || K == ActionKind::TranslationZ) {
    if (space.exact_norm(g) != n) {
      throw InvalidInput("witness_path: ||g|| != n");
    }
  }
  check(target.n == n, "witness target built for a different n");

  if (g == target.gstar) {
    return {Path<WreathElement>(g), 0};
  }
  if constexpr (K == ActionKind::ModK) {
    auto labels = detail::wreath_finite_x_labels(space, g, n);
    auto path = space.walk_path(g, labels);
    check(path.end() == target.gstar, "finite-X witness missed its target");
    return {std::move(path), 5};
  } else {
    const WreathTraversal t = space.optimal_traversal(g);
    const XPoint cursor_pos = space.action().position(g.cursor, 0);

    std::vector<Label> labels;
    int case_id;
    if (g.lamps.count(target.xstar)) {
      // Only this lamp can be lit, the cursor sits on it, and its value is a
      // generator: anything else would exceed norm n.
      check(g.lamps.size() == 1 && cursor_pos == target.xstar &&
                space.lamp_driver().norm(g.lamps.at(target.xstar)) == 1,
            "case 1 shape forced by the metric");
      // The path g = f* h, f*, f* h0: brightness off, then to h0.
      for (int s : space.lamp_driver().geodesic_to_identity(g.lamps.at(target.xstar))) {
        const bool up = s > 0 || space.lamp_driver().involutive();
        labels.push_back({up ? wreath_label::kLampUp : wreath_label::kLampDown, 0});
      }
      labels.push_back({wreath_label::kLampUp, 0});
      case_id = 1;
    } else if (space.lamp_lower_bound(g) * 6 >= n) {
      labels = detail::wreath_case2_labels(space, t, target);
      case_id = 2;
    } else if (space.action().xnorm(cursor_pos) * 6 >= n) {
      if (cursor_pos == target.xstar) {
        check(t.stop_count() == 1, "case 3 with cursor at x* admits one lamp only");
        labels.push_back({wreath_label::kLampUp, 0});
        auto seg = reversed_inverted(space, t.segments[1]);
        labels.insert(labels.end(), seg.begin(), seg.end());
        labels.insert(labels.end(), t.lamp_words_inv[0].begin(), t.lamp_words_inv[0].end());
        labels.insert(labels.end(), t.segments[1].begin(), t.segments[1].end());
      } else {
        labels.push_back({wreath_label::kLampUp, 0});
        WreathElement lit = space.apply(g, Label{wreath_label::kLampUp, 0});
        auto rest = detail::wreath_case2_labels(space, space.optimal_traversal(lit), target);
        labels.insert(labels.end(), rest.begin(), rest.end());
      }
      case_id = 3;
    } else {
      if constexpr (K == ActionKind::RegularZ) {
        labels = detail::wreath_case4_regular_labels(space, t, target);
      } else {
        labels = detail::wreath_case4_schreier_labels(space, t, g, target);
      }
      case_id = 4;
    }
    auto path = space.walk_path(g, labels);
    check(path.end() == target.gstar, "wreath witness missed g*");
    return {std::move(path), case_id};
  }
}

template <ActionKind K>
Path<WreathElement> witness_path(const WreathSpace<K>& space, const WreathElement& g,
                                 std::int64_t n, const WreathWitnessTarget& target) {
  return build_wreath_witness(space, g, n, target).path;
}

// Seeded sampling of a sphere element: a random walk padded by norm-raising
// moves, restarted on the rare norm-local-maximum (an all-lamps-lit island).
template <ActionKind K>
  requires(K == ActionKind::RegularZ || K == ActionKind::TranslationZ)
WreathElement sample_wreath_sphere_element(const WreathSpace<K>& space, std::int64_t n,
                                           std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, space.degree_bound() - 1);
  while (true) {
    WreathElement g;
    for (std::int64_t i = 0; i < n; ++i) {
      auto nb = space.neighbors(g);
      g = nb[coin(rng) % nb.size()].to;
    }
    while (space.exact_norm(g) < n) {
      auto nb = space.neighbors(g);
      std::vector<WreathElement> raising;
      for (auto& step : nb) {
        if (space.exact_norm(step.to) == space.exact_norm(g) + 1) raising.push_back(step.to);
      }
      if (raising.empty()) break;
      g = raising[coin(rng) % raising.size()];
    }
    if (space.exact_norm(g) == n) return g;
  }
}

}  // namespace lindiv
