#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "lindiv/space.hpp"

namespace lindiv {

// Lamp group H with its generator h0 = +1. modulus == 0 is infinite cyclic,
// modulus k >= 2 is Z_k with values stored in [0, k).
struct LampDriver {
  std::int64_t modulus = 2;

  static LampDriver cyclic(std::int64_t k) {
    check(k >= 2, "cyclic lamp driver needs modulus >= 2");
    return LampDriver{k};
  }
  static LampDriver integers() { return LampDriver{0}; }

  bool involutive() const { return modulus == 2; }  // h0 == h0^-1

  std::int64_t normalize(std::int64_t v) const {
    if (modulus == 0) return v;
    v %= modulus;
    return v < 0 ? v + modulus : v;
  }

  std::int64_t add(std::int64_t v, int step) const { return normalize(v + step); }

  std::int64_t negate(std::int64_t v) const { return normalize(-v); }

  std::int64_t norm(std::int64_t v) const {
    if (modulus == 0) return iabs(v);
    v = normalize(v);
    return std::min(v, modulus - v);
  }

  // Generator steps (+1 / -1) taking v to the identity along a geodesic;
  // ties in Z_k break toward -1 steps.
  std::vector<int> geodesic_to_identity(std::int64_t v) const {
    std::vector<int> steps;
    if (modulus == 0) {
      for (std::int64_t i = 0; i < iabs(v); ++i) steps.push_back(v > 0 ? -1 : +1);
      return steps;
    }
    v = normalize(v);
    if (v <= modulus - v) {
      for (std::int64_t i = 0; i < v; ++i) steps.push_back(-1);
    } else {
      for (std::int64_t i = 0; i < modulus - v; ++i) steps.push_back(+1);
    }
    return steps;
  }

  // Generator steps from `from` to `to` along a geodesic in H.
  std::vector<int> geodesic_between(std::int64_t from, std::int64_t to) const {
    std::vector<int> steps;
    if (modulus == 0) {
      std::int64_t d = to - from;
      for (std::int64_t i = 0; i < iabs(d); ++i) steps.push_back(d > 0 ? +1 : -1);
      return steps;
    }
    std::int64_t up = normalize(to - from);          // +1 steps
    std::int64_t down = normalize(from - to);        // -1 steps
    if (down <= up) {
      for (std::int64_t i = 0; i < down; ++i) steps.push_back(-1);
    } else {
      for (std::int64_t i = 0; i < up; ++i) steps.push_back(+1);
    }
    return steps;
  }

  std::string name() const {
    return modulus == 0 ? "Z" : ("Z" + std::to_string(modulus));
  }
};

}  // namespace lindiv
