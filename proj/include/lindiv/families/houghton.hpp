#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lindiv/bfs.hpp"
#include "lindiv/rational.hpp"
#include "lindiv/ray.hpp"
#include "lindiv/space.hpp"

namespace lindiv {

// ---------------------------------------------------------------------------
// H_2 = FSym(Z) x| Z, acting on Z \ {0} relabeled to Z (x > 0 -> x - 1).
// An element is the arrangement it produces (slot -> ball, fixed points not
// stored) together with the cursor shift. Words act left to right: t moves
// the cursor, a swaps the slots on both sides of it.
// ---------------------------------------------------------------------------

struct H2Element {
  std::map<std::int64_t, std::int64_t> sigma;  // slot -> ball, non-fixed only
  std::int64_t shift = 0;

  friend bool operator==(const H2Element&, const H2Element&) = default;
};

namespace houghton_label {
inline constexpr std::int16_t kShift = 0;  // arg +1 / -1
inline constexpr std::int16_t kSwap = 1;   // the transposition a
inline constexpr std::int16_t kGen = 2;    // H_m: arg = +i / -i for g_i^{+-1}
}  // namespace houghton_label

class H2Space {
 public:
  using vertex_type = H2Element;

  H2Element basepoint() const { return {}; }

  int degree_bound() const { return 3; }

  H2Element apply(const H2Element& v, const Label& label) const {
    H2Element out = v;
    if (label.kind == houghton_label::kShift) {
      out.shift += label.arg;
      return out;
    }
    const std::int64_t left = v.shift - 1, right = v.shift;
    auto value = [&](std::int64_t slot) {
      auto it = out.sigma.find(slot);
      return it == out.sigma.end() ? slot : it->second;
    };
    const std::int64_t vl = value(left), vr = value(right);
    auto set = [&](std::int64_t slot, std::int64_t ball) {
      if (slot == ball) {
        out.sigma.erase(slot);
      } else {
        out.sigma[slot] = ball;
      }
    };
    set(left, vr);
    set(right, vl);
    return out;
  }

  std::vector<Step<H2Element>> neighbors(const H2Element& v) const {
    std::vector<Step<H2Element>> out;
    out.reserve(3);
    for (int dir : {+1, -1}) {
      Label l{houghton_label::kShift, dir};
      out.push_back({l, apply(v, l)});
    }
    Label a{houghton_label::kSwap, 0};
    out.push_back({a, apply(v, a)});
    return out;
  }

  std::string canonical_key(const H2Element& v) const {
    std::string key = "l" + std::to_string(v.shift);
    for (const auto& [slot, ball] : v.sigma)
      key += "|" + std::to_string(slot) + ">" + std::to_string(ball);
    return key;
  }

  std::string label_text(const Label& label) const {
    if (label.kind == houghton_label::kSwap) return "a";
    return label.arg > 0 ? "t" : "t^-1";
  }

  Label parse_token(const std::string& token) const {
    if (token == "t") return {houghton_label::kShift, +1};
    if (token == "t^-1") return {houghton_label::kShift, -1};
    if (token == "a" || token == "a^-1") return {houghton_label::kSwap, 0};
    throw ParseError("H2: unknown token '" + token + "'");
  }

  Label label_inverse(const Label& label) const {
    if (label.kind == houghton_label::kShift) return {houghton_label::kShift, -label.arg};
    return label;
  }

  std::int64_t t_level(const H2Element& v) const { return v.shift; }

  // External position of the farthest moved point: a transposition at q costs
  // at least |q| (positions x > 0 sit at external x + 1).
  std::int64_t disorder_lower_bound(const H2Element& v) const {
    std::int64_t best = 0;
    for (const auto& [slot, ball] : v.sigma) {
      best = std::max(best, iabs(slot >= 0 ? slot + 1 : slot));
    }
    return best;
  }

  // Certificate: the transposition bound joined with |t-level|, which every
  // generator changes by at most one.
  std::int64_t norm_lower_bound(const H2Element& v) const {
    return std::max(disorder_lower_bound(v), iabs(v.shift));
  }
};

inline H2Element h2_from_word(const H2Space& space, const std::vector<Label>& word) {
  H2Element e;
  for (const auto& label : word) e = space.apply(e, label);
  return e;
}

// The fixed endpoint t^{n-1} a of length n.
inline H2Element h2_target(const H2Space& space, std::int64_t n) {
  std::vector<Label> word(n - 1, Label{houghton_label::kShift, +1});
  word.push_back({houghton_label::kSwap, 0});
  return h2_from_word(space, word);
}

struct H2Witness {
  Path<H2Element> path;
  int chosen_direction = 0;  // +1 or -1 (the t^k ray)
};

// Path from g to t^{n-1} a: escape along the t-ray by 3n, place a far
// transposition, undo g, build the target transposition and dissolve the far
// one. Every off-ray vertex carries a transposition beyond n/2 or a t-level
// beyond n/2, so the certificate covers it.
inline H2Witness build_h2_witness(const H2Space& space, const H2Element& g, std::int64_t n,
                                  const std::vector<Label>& word_for_g,
                                  BallMap<H2Element>& center_ball,
                                  std::size_t cap = kDefaultBfsCap) {
  check(static_cast<std::int64_t>(word_for_g.size()) == n, "need a length-n word for g");
  const std::int64_t ell = g.shift;

  auto ray = [&](int dir) {
    return std::function<H2Element(int)>([&space, g, dir](int m) {
      H2Element e = g;
      e.shift += dir * m;
      return e;
    });
  };
  const int dir = select_escaping_ray(space, ray(+1), ray(-1), center_ball, Rational(n, 2),
                                      static_cast<int>(4 * n + 8), cap);
  const std::int64_t k = dir * 3 * n;

  auto t_run = [&](std::int64_t count) {
    std::vector<Label> out;
    const int sign = count >= 0 ? +1 : -1;
    for (std::int64_t i = 0; i < iabs(count); ++i)
      out.push_back({houghton_label::kShift, sign});
    return out;
  };
  const Label a{houghton_label::kSwap, 0};

  std::vector<Label> labels = t_run(k);
  labels.push_back(a);
  auto tk_back = t_run(-k);
  labels.insert(labels.end(), tk_back.begin(), tk_back.end());
  for (auto it = word_for_g.rbegin(); it != word_for_g.rend(); ++it) {
    labels.push_back(space.label_inverse(*it));
  }
  auto tn = t_run(n - 1);
  labels.insert(labels.end(), tn.begin(), tn.end());
  labels.push_back(a);
  auto mid = t_run(-(n - 1) + k + ell);
  labels.insert(labels.end(), mid.begin(), mid.end());
  labels.push_back(a);
  auto tail = t_run(-k - ell);
  labels.insert(labels.end(), tail.begin(), tail.end());
  labels.insert(labels.end(), tn.begin(), tn.end());

  Path<H2Element> path(g);
  for (const auto& label : labels) path.push(label, space.apply(path.end(), label));
  check(path.end() == h2_target(space, n), "H2 witness missed t^{n-1} a");
  check(static_cast<std::int64_t>(path.length()) <= 18 * n, "H2 witness longer than 18n");
  return {std::move(path), dir};
}

// ---------------------------------------------------------------------------
// H_m, m >= 3: eventually-translation permutations of m rays, stored as the
// per-ray translation amounts plus the finite exception table.
// ---------------------------------------------------------------------------

struct RayPoint {
  std::int32_t ray = 1;    // 1..m
  std::int64_t depth = 1;  // >= 1

  friend bool operator==(const RayPoint&, const RayPoint&) = default;
  friend auto operator<=>(const RayPoint&, const RayPoint&) = default;
};

struct HmElement {
  std::vector<std::int64_t> offsets;        // size m, sums to zero
  std::map<RayPoint, RayPoint> exceptions;  // overrides of (i,k) -> (i, k + e_i)

  friend bool operator==(const HmElement&, const HmElement&) = default;
};

class HmSpace {
 public:
  using vertex_type = HmElement;

  explicit HmSpace(std::int32_t m, std::int64_t cert_constant = 4) : m_(m), cm_(cert_constant) {
    check(m >= 3, "HmSpace needs m >= 3");
  }

  std::int32_t ray_count() const { return m_; }

  HmElement basepoint() const {
    HmElement e;
    e.offsets.assign(m_, 0);
    return e;
  }

  int degree_bound() const { return 2 * (m_ - 1); }

  RayPoint image(const HmElement& v, const RayPoint& pt) const {
    auto it = v.exceptions.find(pt);
    if (it != v.exceptions.end()) return it->second;
    return RayPoint{pt.ray, pt.depth + v.offsets[pt.ray - 1]};
  }

  // v . g_i^{dir}: the generator translates ray i down and ray i+1 up (dir
  // +1), with the single seam exception at depth one.
  HmElement apply(const HmElement& v, const Label& label) const {
    check(label.kind == houghton_label::kGen, "HmSpace: bad label kind");
    const std::int32_t i = std::abs(label.arg);
    const int dir = label.arg > 0 ? +1 : -1;
    check(i >= 1 && i < m_, "HmSpace: no such generator");

    auto gen_image = [&](const RayPoint& pt) -> RayPoint {
      if (dir > 0) {
        if (pt.ray == i) return pt.depth >= 2 ? RayPoint{i, pt.depth - 1} : RayPoint{i + 1, 1};
        if (pt.ray == i + 1) return RayPoint{i + 1, pt.depth + 1};
      } else {
        if (pt.ray == i + 1) return pt.depth >= 2 ? RayPoint{i + 1, pt.depth - 1} : RayPoint{i, 1};
        if (pt.ray == i) return RayPoint{i, pt.depth + 1};
      }
      return pt;
    };

    HmElement out;
    out.offsets = v.offsets;
    out.offsets[i - 1] -= dir;
    out.offsets[i] += dir;

    // Candidates for exceptions of the product: existing exception inputs and
    // the preimages under v of the generator's seam point.
    std::set<RayPoint> candidates;
    for (const auto& [in, to] : v.exceptions) candidates.insert(in);
    const RayPoint seam = dir > 0 ? RayPoint{i, 1} : RayPoint{i + 1, 1};
    bool seam_covered = false;
    for (const auto& [in, to] : v.exceptions) {
      if (to == seam) {
        candidates.insert(in);
        seam_covered = true;
      }
    }
    if (!seam_covered) {
      const std::int64_t d = seam.depth - v.offsets[seam.ray - 1];
      if (d >= 1) {
        RayPoint pre{seam.ray, d};
        if (!v.exceptions.count(pre)) candidates.insert(pre);
      }
    }

    for (const RayPoint& pt : candidates) {
      RayPoint img = gen_image(image(v, pt));
      check(img.depth >= 1, "Hm composition produced an invalid point");
      if (img != RayPoint{pt.ray, pt.depth + out.offsets[pt.ray - 1]}) {
        out.exceptions[pt] = img;
      }
    }
    return out;
  }

  std::vector<Step<HmElement>> neighbors(const HmElement& v) const {
    std::vector<Step<HmElement>> out;
    out.reserve(degree_bound());
    for (std::int32_t i = 1; i < m_; ++i) {
      for (int dir : {+1, -1}) {
        Label l{houghton_label::kGen, dir * i};
        out.push_back({l, apply(v, l)});
      }
    }
    return out;
  }

  std::string canonical_key(const HmElement& v) const {
    std::string key = "o";
    for (std::int64_t e : v.offsets) key += std::to_string(e) + ",";
    for (const auto& [in, to] : v.exceptions) {
      key += "|" + std::to_string(in.ray) + ":" + std::to_string(in.depth) + ">" +
             std::to_string(to.ray) + ":" + std::to_string(to.depth);
    }
    return key;
  }

  std::string label_text(const Label& label) const {
    std::string base = "g" + std::to_string(std::abs(label.arg));
    return label.arg > 0 ? base : base + "^-1";
  }

  Label parse_token(const std::string& token) const {
    std::string body = token;
    int sign = +1;
    if (body.size() > 3 && body.substr(body.size() - 3) == "^-1") {
      sign = -1;
      body = body.substr(0, body.size() - 3);
    }
    if (body.size() >= 2 && body[0] == 'g') {
      const int i = std::stoi(body.substr(1));
      if (i >= 1 && i < m_) return {houghton_label::kGen, sign * i};
    }
    throw ParseError("Hm: unknown token '" + token + "'");
  }

  Label label_inverse(const Label& label) const { return {houghton_label::kGen, -label.arg}; }

  // Verifies that the stored data is a bijection of the window of points with
  // depth up to the stated bound.
  bool window_bijective(const HmElement& v) const {
    std::int64_t depth = 1;
    for (const auto& [in, to] : v.exceptions) depth = std::max({depth, in.depth, to.depth});
    std::int64_t off = 0;
    for (std::int64_t e : v.offsets) off += iabs(e);
    depth += off + 2;
    std::set<RayPoint> images;
    for (std::int32_t r = 1; r <= m_; ++r) {
      for (std::int64_t d = 1; d <= depth; ++d) {
        RayPoint img = image(v, RayPoint{r, d});
        if (img.depth < 1) return false;
        if (!images.insert(img).second) return false;
      }
    }
    return true;
  }

  std::vector<std::int64_t> exponent_sums(const HmElement& v) const {
    // l_i = -(e_1 + ... + e_i): the amount g_i appears in any word for v.
    std::vector<std::int64_t> ell(m_ - 1, 0);
    std::int64_t acc = 0;
    for (std::int32_t i = 0; i + 1 < m_; ++i) {
      acc += v.offsets[i];
      ell[i] = -acc;
    }
    return ell;
  }

  // Deepest point the permutation disturbs (an exception on either side),
  // discounted by the calibration constant.
  std::int64_t disorder_lower_bound(const HmElement& v) const {
    std::int64_t depth = 0;
    for (const auto& [in, to] : v.exceptions) depth = std::max({depth, in.depth, to.depth});
    return std::max<std::int64_t>(0, depth - cm_);
  }

  std::int64_t norm_lower_bound(const HmElement& v) const {
    std::int64_t off = 0;
    for (std::int64_t e : v.offsets) off = std::max(off, iabs(e));
    return std::max(disorder_lower_bound(v), off);
  }

 private:
  std::int32_t m_;
  std::int64_t cm_;
};

inline HmElement hm_from_word(const HmSpace& space, const std::vector<Label>& word) {
  HmElement e = space.basepoint();
  for (const auto& label : word) e = space.apply(e, label);
  return e;
}

inline std::vector<Label> hm_commutator_word() {
  return {Label{houghton_label::kGen, +1}, Label{houghton_label::kGen, +2},
          Label{houghton_label::kGen, -1}, Label{houghton_label::kGen, -2}};
}

// The fixed endpoint g_1^{n-4} [g_1, g_2] of length n.
inline HmElement hm_target(const HmSpace& space, std::int64_t n) {
  std::vector<Label> word(n - 4, Label{houghton_label::kGen, +1});
  auto c = hm_commutator_word();
  word.insert(word.end(), c.begin(), c.end());
  return hm_from_word(space, word);
}

struct HmWitness {
  Path<HmElement> path;
  int chosen_direction = 0;
};

inline HmWitness build_hm_witness(const HmSpace& space, const HmElement& g, std::int64_t n,
                                  const std::vector<Label>& word_for_g,
                                  BallMap<HmElement>& center_ball,
                                  std::size_t cap = kDefaultBfsCap) {
  check(n >= 5, "Hm witness needs n >= 5");
  check(static_cast<std::int64_t>(word_for_g.size()) == n, "need a length-n word for g");
  const HmElement target = hm_target(space, n);
  if (g == target) {
    return {Path<HmElement>(g), 0};
  }

  auto ray = [&](int dir) {
    return std::function<HmElement(int)>([&space, g, dir](int m) {
      HmElement e = g;
      Label step{houghton_label::kGen, dir};
      for (int i = 0; i < m; ++i) e = space.apply(e, step);
      return e;
    });
  };
  const int dir = select_escaping_ray(space, ray(+1), ray(-1), center_ball, Rational(n, 2),
                                      static_cast<int>(4 * n + 8), cap);
  const std::int64_t k = dir * 3 * n;

  // g g1^k [g1,g2] g1^{-k} g^{-1} is an adjacent transposition on ray 1 or 2
  // beyond depth 2n; read off which, to cancel it with g1^s [g1,g2] g1^{-s}.
  std::int64_t s = 0;
  {
    std::vector<Label> conj = word_for_g;
    for (std::int64_t i = 0; i < 3 * n; ++i) conj.push_back({houghton_label::kGen, dir});
    auto c = hm_commutator_word();
    conj.insert(conj.end(), c.begin(), c.end());
    for (std::int64_t i = 0; i < 3 * n; ++i) conj.push_back({houghton_label::kGen, -dir});
    for (auto it = word_for_g.rbegin(); it != word_for_g.rend(); ++it) {
      conj.push_back(space.label_inverse(*it));
    }
    const HmElement far = hm_from_word(space, conj);
    bool offsets_zero = true;
    for (std::int64_t e : far.offsets) offsets_zero = offsets_zero && e == 0;
    check(offsets_zero && far.exceptions.size() == 2, "far conjugate must be a transposition");
    const auto& [in, to] = *far.exceptions.begin();
    check(in.ray == to.ray && (in.ray == 1 || in.ray == 2) && iabs(in.depth - to.depth) == 1,
          "far conjugate must swap adjacent ray points");
    const std::int64_t y = std::min(in.depth, to.depth);
    check(y >= 2 * n, "far transposition must sit beyond depth 2n");
    s = in.ray == 1 ? y : -y;
    check(iabs(s) <= 4 * n, "conjugator exponent exceeds its 4n budget");
    std::vector<Label> probe;
    const int ssign = s >= 0 ? +1 : -1;
    for (std::int64_t i = 0; i < iabs(s); ++i) probe.push_back({houghton_label::kGen, ssign});
    probe.insert(probe.end(), c.begin(), c.end());
    for (std::int64_t i = 0; i < iabs(s); ++i) probe.push_back({houghton_label::kGen, -ssign});
    check(hm_from_word(space, probe) == far, "g1^s [g1,g2] g1^{-s} must equal the far conjugate");
  }

  auto g1_run = [&](std::int64_t count) {
    std::vector<Label> out;
    const int sign = count >= 0 ? +1 : -1;
    for (std::int64_t i = 0; i < iabs(count); ++i)
      out.push_back({houghton_label::kGen, sign});
    return out;
  };
  auto append = [](std::vector<Label>& into, const std::vector<Label>& run) {
    into.insert(into.end(), run.begin(), run.end());
  };

  std::vector<Label> labels = g1_run(k);
  append(labels, hm_commutator_word());
  append(labels, g1_run(-k));
  for (auto it = word_for_g.rbegin(); it != word_for_g.rend(); ++it) {
    labels.push_back(space.label_inverse(*it));
  }
  append(labels, g1_run(n - 4));
  append(labels, hm_commutator_word());
  append(labels, g1_run(-(n - 4)));
  append(labels, g1_run(s));
  append(labels, hm_commutator_word());
  append(labels, g1_run(-s));
  append(labels, g1_run(n - 4));

  Path<HmElement> path(g);
  for (const auto& label : labels) path.push(label, space.apply(path.end(), label));
  check(path.end() == target, "Hm witness missed g1^{n-4} [g1, g2]");
  check(static_cast<std::int64_t>(path.length()) <= 18 * n, "Hm witness longer than 18n");
  return {std::move(path), dir};
}

}  // namespace lindiv
