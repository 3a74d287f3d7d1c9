#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "lindiv/bfs.hpp"
#include "lindiv/rational.hpp"
#include "lindiv/ray.hpp"
#include "lindiv/space.hpp"

namespace lindiv {

// Exact dyadic rational num / 2^exp2 with num odd or zero.
struct Dyadic {
  std::int64_t num = 0;
  std::int32_t exp2 = 0;

  void normalize() {
    if (num == 0) {
      exp2 = 0;
      return;
    }
    while (num % 2 == 0 && exp2 > 0) {
      num /= 2;
      exp2 -= 1;
    }
  }

  static Dyadic from_int(std::int64_t v) { return Dyadic{v, 0}; }

  Dyadic plus_scaled(std::int64_t delta, std::int64_t pow) const {
    // this + delta * 2^pow
    Dyadic out;
    const std::int64_t e = std::max<std::int64_t>(exp2, pow < 0 ? -pow : 0);
    check(e <= 62, "dyadic exponent overflow");
    const std::int64_t scaled_self = num << (e - exp2);
    const std::int64_t shift = pow + e;
    check(shift >= 0 && shift <= 62, "dyadic term overflow");
    out.num = scaled_self + delta * (std::int64_t(1) << shift);
    out.exp2 = static_cast<std::int32_t>(e);
    out.normalize();
    return out;
  }

  bool zero() const { return num == 0; }
  bool negative() const { return num < 0; }

  // Smallest m with |value| <= 2^{m-1}; zero gives zero.
  std::int64_t log2_lower_bound() const {
    if (num == 0) return 0;
    std::int64_t a = iabs(num);
    std::int32_t bits = 0;
    while (a > 1) {
      a >>= 1;
      ++bits;
    }
    // |value| in [2^{bits - exp2}, 2^{bits - exp2 + 1}); need 2^{m-1} >= |value|
    const std::int64_t floor_log = bits - exp2;
    return std::max<std::int64_t>(0, floor_log + 1);
  }

  std::string str() const {
    if (exp2 == 0) return std::to_string(num);
    return std::to_string(num) + "/2^" + std::to_string(exp2);
  }

  friend bool operator==(const Dyadic&, const Dyadic&) = default;
};

// Britton normal form a^{r0} t^{e1} a^{r1} ... t^{el} a^{rl} for
// BS(p, q) = <a, t | t a^p t^-1 = a^q>. Every exponent following a t^{+1} is
// reduced mod p, following a t^{-1} mod q; excess migrates leftward into r0
// and pinches collapse, so equal elements have identical forms.
struct BSNormalForm {
  std::int64_t r0 = 0;
  std::vector<std::pair<int, std::int64_t>> tail;  // (epsilon, exponent)

  friend bool operator==(const BSNormalForm&, const BSNormalForm&) = default;
};

struct BSLevels {
  std::int64_t t_level = 0;
  Dyadic a_level;  // BS(2,4) only
};

namespace bs_label {
inline constexpr std::int16_t kA = 0;  // arg +1 / -1
inline constexpr std::int16_t kT = 1;  // arg +1 / -1
}  // namespace bs_label

class BSSpace {
 public:
  using vertex_type = BSNormalForm;

  BSSpace(std::int64_t p, std::int64_t q) : p_(p), q_(q) {
    check(p >= 1 && q >= 1, "BS(p, q) needs p, q >= 1");
  }

  std::int64_t p() const { return p_; }
  std::int64_t q() const { return q_; }
  bool is_2_4() const { return p_ == 2 && q_ == 4; }

  BSNormalForm basepoint() const { return {}; }

  int degree_bound() const { return 4; }

  BSNormalForm apply(const BSNormalForm& v, const Label& label) const {
    BSNormalForm out = v;
    if (label.kind == bs_label::kA) {
      if (out.tail.empty()) {
        out.r0 += label.arg;
      } else {
        out.tail.back().second += label.arg;
        renormalize(out, out.tail.size() - 1);
      }
      return out;
    }
    const int eps = label.arg;
    if (!out.tail.empty() && out.tail.back().first == -eps && out.tail.back().second == 0) {
      out.tail.pop_back();  // t^{-eps} a^0 t^{eps} collapses
      return out;
    }
    out.tail.emplace_back(eps, 0);
    return out;
  }

  std::vector<Step<BSNormalForm>> neighbors(const BSNormalForm& v) const {
    std::vector<Step<BSNormalForm>> out;
    out.reserve(4);
    for (int dir : {+1, -1}) {
      Label a{bs_label::kA, dir};
      out.push_back({a, apply(v, a)});
      Label t{bs_label::kT, dir};
      out.push_back({t, apply(v, t)});
    }
    return out;
  }

  std::string canonical_key(const BSNormalForm& v) const {
    std::string key = "a" + std::to_string(v.r0);
    for (const auto& [eps, r] : v.tail) {
      key += (eps > 0 ? "|t|a" : "|T|a") + std::to_string(r);
    }
    return key;
  }

  std::string label_text(const Label& label) const {
    if (label.kind == bs_label::kA) return label.arg > 0 ? "a" : "a^-1";
    return label.arg > 0 ? "t" : "t^-1";
  }

  Label parse_token(const std::string& token) const {
    if (token == "a") return {bs_label::kA, +1};
    if (token == "a^-1") return {bs_label::kA, -1};
    if (token == "t") return {bs_label::kT, +1};
    if (token == "t^-1") return {bs_label::kT, -1};
    throw ParseError("BS: unknown token '" + token + "'");
  }

  Label label_inverse(const Label& label) const { return {label.kind, -label.arg}; }

  BSNormalForm reduce(const std::vector<Label>& word) const {
    BSNormalForm e;
    for (const auto& label : word) e = apply(e, label);
    return e;
  }

  // Word of the normal form itself (for level computations and round trips).
  std::vector<Label> to_word(const BSNormalForm& v) const {
    std::vector<Label> out;
    auto a_run = [&](std::int64_t r) {
      const int sign = r >= 0 ? +1 : -1;
      for (std::int64_t i = 0; i < iabs(r); ++i) out.push_back({bs_label::kA, sign});
    };
    a_run(v.r0);
    for (const auto& [eps, r] : v.tail) {
      out.push_back({bs_label::kT, eps});
      a_run(r);
    }
    return out;
  }

  std::int64_t word_t_level(const std::vector<Label>& word) const {
    std::int64_t ell = 0;
    for (const auto& label : word) {
      if (label.kind == bs_label::kT) ell += label.arg;
    }
    return ell;
  }

  // a-level of a word: sum of a-exponents weighted by 2^{t-level so far}.
  Dyadic word_a_level(const std::vector<Label>& word) const {
    if (!is_2_4()) throw UnsupportedParams("a-level is defined here for BS(2,4) only");
    Dyadic k;
    std::int64_t ell = 0;
    for (const auto& label : word) {
      if (label.kind == bs_label::kT) {
        ell += label.arg;
      } else {
        k = k.plus_scaled(label.arg, ell);
      }
    }
    return k;
  }

  BSLevels levels(const std::vector<Label>& word) const {
    BSLevels out;
    out.t_level = word_t_level(word);
    if (is_2_4()) out.a_level = word_a_level(word);
    return out;
  }

  BSLevels levels_of(const BSNormalForm& v) const { return levels(to_word(v)); }

  std::int64_t t_level(const BSNormalForm& v) const {
    std::int64_t ell = 0;
    for (const auto& [eps, r] : v.tail) ell += eps;
    return ell;
  }

  // Elements of norm <= m have |a-level| <= 2^{m-1} and |t-level| <= m.
  std::int64_t norm_lower_bound(const BSNormalForm& v) const {
    std::int64_t bound = iabs(t_level(v));
    if (is_2_4()) bound = std::max(bound, levels_of(v).a_level.log2_lower_bound());
    return bound;
  }

 private:
  std::int64_t p_, q_;

  static std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t d = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? d - 1 : d;
  }

  // Restores the coset-representative ranges from position i leftward,
  // collapsing any pinches it uncovers.
  void renormalize(BSNormalForm& v, std::size_t i) const {
    while (true) {
      auto& [eps, r] = v.tail[i];
      const std::int64_t base = eps > 0 ? p_ : q_;
      const std::int64_t carry_unit = eps > 0 ? q_ : p_;
      const std::int64_t k = floor_div(r, base);
      if (k != 0) {
        r -= k * base;
        if (i == 0) {
          v.r0 += k * carry_unit;
          check(iabs(v.r0) < (std::int64_t(1) << 62), "BS exponent overflow");
        } else {
          v.tail[i - 1].second += k * carry_unit;
          check(iabs(v.tail[i - 1].second) < (std::int64_t(1) << 62),
                "BS exponent overflow");
        }
      }
      // A zero exponent between opposite stable letters is a pinch.
      if (r == 0 && i + 1 < v.tail.size() && v.tail[i + 1].first == -eps) {
        const std::int64_t merged = v.tail[i + 1].second;
        v.tail.erase(v.tail.begin() + i, v.tail.begin() + i + 2);
        if (i == 0) {
          v.r0 += merged;
          if (v.tail.empty()) return;
          continue;  // re-examine the new occupant of position 0
        }
        v.tail[i - 1].second += merged;
        i -= 1;
        continue;
      }
      if (k != 0 && i > 0) {
        i -= 1;
        continue;
      }
      return;
    }
  }
};

// ---------------------------------------------------------------------------
// Witness path for BS(2,4) (Proposition-style): escape along the
// {g a^{+-1} t^m} ray, plant a^2 at t-height, descend, cancel the escape
// letter and undo g, landing on t^{2n} a^2 t^{-2n} = a^{2^{2n+1}}.
// ---------------------------------------------------------------------------

struct BSWitness {
  Path<BSNormalForm> path{BSNormalForm{}};
  int chosen_sign = 0;       // the a^{+-1} of the escape ray
  bool mirrored = false;     // routed via a^{-2^{2n+1}} plus the bridge
  std::int64_t n = 0;        // ceil(||g|| / 2)
  std::int64_t t_level = 0;  // ell of g
};

inline BSNormalForm bs24_endpoint(const BSSpace& space, std::int64_t n) {
  std::vector<Label> word;
  for (std::int64_t i = 0; i < 2 * n; ++i) word.push_back({bs_label::kT, +1});
  word.push_back({bs_label::kA, +1});
  word.push_back({bs_label::kA, +1});
  for (std::int64_t i = 0; i < 2 * n; ++i) word.push_back({bs_label::kT, -1});
  return space.reduce(word);
}

inline BSWitness build_bs24_witness(const BSSpace& space, const BSNormalForm& g,
                                    const std::vector<Label>& shortest_word,
                                    BallMap<BSNormalForm>& center_ball,
                                    std::size_t cap = kDefaultBfsCap,
                                    std::int64_t explicit_n = -1) {
  check(space.is_2_4(), "witness construction is for BS(2,4)");
  const std::int64_t N = static_cast<std::int64_t>(shortest_word.size());
  const std::int64_t n = explicit_n >= 0 ? explicit_n : (N + 1) / 2;

  BSWitness w;
  w.n = n;
  w.t_level = space.t_level(g);

  const BSNormalForm endpoint = bs24_endpoint(space, n);
  if (g == endpoint) {
    w.path = Path<BSNormalForm>(g);
    return w;
  }
  check(explicit_n < 0 || n == (N + 1) / 2, "explicit n must match the word length");

  const std::int64_t radius = N / 2;
  const std::int64_t ell = w.t_level;
  const Dyadic k = space.levels_of(g).a_level;

  // Mirror only when it keeps the total within 10n + 8; a negative t-level
  // already pays 2|ell| in the main body, and the direct route stays valid at
  // radius n because the mid-path a-level still clears 2^{2n-1}.
  const bool mirror = k.negative() && ell >= 0;
  w.mirrored = mirror;
  const int flip = mirror ? -1 : +1;

  auto ray = [&](int s) {
    return std::function<BSNormalForm(int)>([&space, g, s](int m) {
      if (m == 0) return g;
      BSNormalForm e = space.apply(g, Label{bs_label::kA, s});
      for (int i = 1; i < m; ++i) e = space.apply(e, Label{bs_label::kT, +1});
      return e;
    });
  };
  const int sign = select_escaping_ray(space, ray(+1), ray(-1), center_ball, Rational(radius),
                                       static_cast<int>(4 * N + 8), cap);
  w.chosen_sign = sign;

  auto run = [](std::vector<Label>& into, Label l, std::int64_t count) {
    for (std::int64_t i = 0; i < count; ++i) into.push_back(l);
  };

  std::vector<Label> labels;
  labels.push_back({bs_label::kA, sign});
  run(labels, {bs_label::kT, +1}, 2 * n - ell);
  labels.push_back({bs_label::kA, flip});
  labels.push_back({bs_label::kA, flip});
  run(labels, {bs_label::kT, -1}, 2 * n - ell);
  labels.push_back({bs_label::kA, -sign});
  for (auto it = shortest_word.rbegin(); it != shortest_word.rend(); ++it) {
    labels.push_back(space.label_inverse(*it));
  }
  if (mirror) {
    run(labels, {bs_label::kT, +1}, 2 * n);
    for (int i = 0; i < 4; ++i) labels.push_back({bs_label::kA, +1});
    run(labels, {bs_label::kT, -1}, 2 * n);
  }

  Path<BSNormalForm> path(g);
  for (const auto& label : labels) path.push(label, space.apply(path.end(), label));

  // The descending leg keeps |a-level| >= 2^{2n} except on the direct route
  // for negative a-level, which still clears 2^{2n-1} and hence the radius.
  const std::int64_t leg_floor = (k.negative() && !mirror) ? 2 * n : 2 * n + 1;
  const std::size_t p3_start = 1 + (2 * n - ell) + 2;
  const std::size_t p3_end = p3_start + (2 * n - ell);
  for (std::size_t i = p3_start; i <= p3_end && i < path.vertices.size(); ++i) {
    check(space.levels_of(path.vertices[i]).a_level.log2_lower_bound() >= leg_floor,
          "descending leg dipped below its a-level floor");
  }
  check(path.end() == endpoint, "BS witness missed t^{2n} a^2 t^{-2n}");
  w.path = std::move(path);
  return w;
}

}  // namespace lindiv
