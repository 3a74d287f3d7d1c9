#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lindiv {

// Exact rational with a positive denominator. Radii and the Def-2.2
// comparator must never go through floating point.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n) : num(n), den(1) {}
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num * b.num, a.den * b.den);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num * b.den < b.num * a.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return a.num * b.den <= b.num * a.den;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

  bool positive() const { return num > 0; }

  // Largest integer strictly below the rational; the open ball of radius r
  // around a vertex contains exactly the vertices at integer distance <= this.
  std::int64_t open_ball_max_dist() const {
    if (num <= 0) return -1;
    if (num % den == 0) return num / den - 1;
    return num / den;  // floor for positive non-integer
  }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  // Parses "a/b" or "a".
  static Rational parse(const std::string& s) {
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(std::stoll(s));
      return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
      throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    }
  }
};

}  // namespace lindiv
