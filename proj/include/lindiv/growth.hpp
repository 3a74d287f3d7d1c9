#pragma once

#include <algorithm>
#include <vector>

#include "lindiv/rational.hpp"
#include "lindiv/space.hpp"

namespace lindiv {

// Comparison data for one side of the f <= A g(Ax+A) + Ax + A inequality.
// Sampled values are authoritative; the closed-form extension covers the
// arguments Ax + A that fall outside the samples.
struct GrowthCurve {
  enum class Extension { None, Identity, Linear };

  std::vector<std::pair<Rational, Rational>> samples;  // (x, value), x strictly increasing
  Extension extension = Extension::None;
  Rational linear_slope = Rational(1);
  Rational linear_offset = Rational(0);

  static GrowthCurve identity() {
    GrowthCurve g;
    g.extension = Extension::Identity;
    return g;
  }

  Rational eval(const Rational& x) const {
    for (const auto& [sx, sy] : samples) {
      if (sx == x) return sy;
    }
    switch (extension) {
      case Extension::Identity:
        return x;
      case Extension::Linear:
        return linear_slope * x + linear_offset;
      case Extension::None:
        break;
    }
    throw DomainGap("compare_growth: g is not evaluable at x = " + x.str());
  }
};

struct EquivalenceParams {
  Rational A = Rational(1);
  std::vector<Rational> domain;  // sample points of f to test at

  EquivalenceParams() = default;
  EquivalenceParams(Rational a, std::vector<Rational> dom) : A(a), domain(std::move(dom)) {
    check(Rational(1) <= A, "EquivalenceParams requires A >= 1");
  }
};

// The Def-2.2 preorder f <=_A g: true iff f(x) <= A g(Ax + A) + Ax + A holds
// at every sampled point of f.
inline bool compare_growth(const std::vector<std::pair<Rational, Rational>>& f,
                           const GrowthCurve& g, const Rational& A) {
  check(Rational(1) <= A, "compare_growth requires A >= 1");
  for (const auto& [x, fx] : f) {
    Rational arg = A * x + A;
    Rational rhs = A * g.eval(arg) + A * x + A;
    if (!(fx <= rhs)) return false;
  }
  return true;
}

}  // namespace lindiv
