#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "lindiv/families/houghton.hpp"
#include "lindiv/space.hpp"

// Seeded generator of H2 elements whose norm is known exactly without BFS:
// each sample comes with a word whose length matches an independent lower
// bound (inversions of the arrangement plus the covering-walk cost), so the
// word is geodesic by sandwiching.

namespace lindiv::testing {

inline std::int64_t h2_inversions(const H2Element& g) {
  if (g.sigma.empty()) return 0;
  std::int64_t lo = g.sigma.begin()->first, hi = g.sigma.rbegin()->first;
  for (const auto& [slot, ball] : g.sigma) {
    lo = std::min(lo, ball);
    hi = std::max(hi, ball);
  }
  auto value = [&](std::int64_t s) {
    auto it = g.sigma.find(s);
    return it == g.sigma.end() ? s : it->second;
  };
  std::int64_t inv = 0;
  for (std::int64_t x = lo; x <= hi; ++x) {
    for (std::int64_t y = x + 1; y <= hi; ++y) {
      if (value(x) > value(y)) ++inv;
    }
  }
  return inv;
}

inline std::int64_t h2_walk_lower_bound(const H2Element& g) {
  std::int64_t a = std::min<std::int64_t>(0, g.shift);
  std::int64_t b = std::max<std::int64_t>(0, g.shift);
  if (!g.sigma.empty()) {
    a = std::min(a, g.sigma.begin()->first + 1);  // touching slot p needs cursor <= p + 1
    b = std::max(b, g.sigma.rbegin()->first);     // and some cursor >= p
  }
  const std::int64_t f = g.shift;
  return (b - a) + std::min((0 - a) + (b - f), (b - 0) + (f - a));
}

// Sound: a-letters realize at least inv(sigma) adjacent swaps and t-letters
// form a covering walk.
inline std::int64_t h2_norm_lower_bound_strong(const H2Element& g) {
  return h2_inversions(g) + h2_walk_lower_bound(g);
}

struct H2Sample {
  H2Element element;
  std::vector<Label> word;  // geodesic, length == norm
};

// Draws an element of norm exactly n. Patterns: a one-sided sweep with swaps
// dropped at increasing positions, its mirror, or a two-sided sweep; a sample
// is only emitted when the lower bound meets the word length.
inline H2Sample sample_h2_sphere_element(const H2Space& space, std::int64_t n,
                                         std::mt19937_64& rng) {
  while (true) {
    std::vector<Label> word;
    std::uniform_int_distribution<int> pattern(0, 2);
    const int kind = pattern(rng);
    auto t_run = [&](std::int64_t count, int dir) {
      for (std::int64_t i = 0; i < count; ++i) word.push_back({houghton_label::kShift, dir});
    };
    const Label a{houghton_label::kSwap, 0};
    if (kind == 0 || kind == 1) {
      const int dir = kind == 0 ? +1 : -1;
      std::uniform_int_distribution<std::int64_t> swaps(0, std::min<std::int64_t>(n / 3, 6));
      const std::int64_t k = swaps(rng);
      const std::int64_t ell = n - k;
      if (ell < k) continue;
      std::vector<std::int64_t> stops;
      std::uniform_int_distribution<std::int64_t> pos(1, ell);
      while (static_cast<std::int64_t>(stops.size()) < k) {
        std::int64_t c = pos(rng);
        if (std::find(stops.begin(), stops.end(), c) == stops.end()) stops.push_back(c);
      }
      std::sort(stops.begin(), stops.end());
      std::int64_t at = 0;
      for (std::int64_t c : stops) {
        t_run(c - at, dir);
        word.push_back(a);
        at = c;
      }
      t_run(ell - at, dir);
    } else {
      // Left excursion, then sweep right.
      std::uniform_int_distribution<std::int64_t> left(1, std::max<std::int64_t>(1, n / 4));
      const std::int64_t L = left(rng);
      std::uniform_int_distribution<std::int64_t> swaps(0, 2);
      const std::int64_t k = swaps(rng);
      const std::int64_t rest = n - 2 * L - k;
      if (rest < 0) continue;
      t_run(L, -1);
      for (std::int64_t i = 0; i < k; ++i) word.push_back(a);  // may cancel; rejection filters
      t_run(L + rest, +1);
    }
    if (static_cast<std::int64_t>(word.size()) != n) continue;
    H2Element g = h2_from_word(space, word);
    if (h2_norm_lower_bound_strong(g) == n) return {std::move(g), std::move(word)};
  }
}

}  // namespace lindiv::testing
