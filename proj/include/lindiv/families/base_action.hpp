#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

#include "lindiv/space.hpp"

namespace lindiv {

// Point of the F-set X a lamp can sit on. Orbits are indexed; the coordinate
// is the position inside the orbit's copy of Z (reduced mod k for finite X).
struct XPoint {
  std::int32_t orbit = 0;
  std::int64_t coord = 0;

  friend bool operator==(const XPoint&, const XPoint&) = default;
  friend auto operator<=>(const XPoint&, const XPoint&) = default;
};

enum class ActionKind {
  RegularZ,      // F = Z acting on itself
  TranslationZ,  // F = Z acting on X = Z by translation (a Schreier picture of the same action)
  TwoOrbitZ,     // F = Z acting on two disjoint copies of Z
  ModK,          // F = Z acting on X = Z_k (finite X)
};

// The base group is Z with generator t throughout; the variants differ in the
// set the lamps live on and hence in the Schreier metric used by Lemma-style
// certificates.
struct BaseAction {
  ActionKind kind = ActionKind::RegularZ;
  std::int64_t k_mod = 0;  // ModK only

  static BaseAction regular() { return {ActionKind::RegularZ, 0}; }
  static BaseAction translation() { return {ActionKind::TranslationZ, 0}; }
  static BaseAction two_orbit() { return {ActionKind::TwoOrbitZ, 0}; }
  static BaseAction mod_k(std::int64_t k) {
    check(k >= 2, "ModK action needs k >= 2");
    return {ActionKind::ModK, k};
  }

  int orbit_count() const { return kind == ActionKind::TwoOrbitZ ? 2 : 1; }

  bool finite_x() const { return kind == ActionKind::ModK; }

  // Position touched by a lamp generator for orbit representative y_i when the
  // cursor is at f: the point f . y_i.
  XPoint position(std::int64_t cursor, std::int32_t orbit) const {
    switch (kind) {
      case ActionKind::RegularZ:
      case ActionKind::TranslationZ:
        return XPoint{0, cursor};
      case ActionKind::TwoOrbitZ:
        return XPoint{orbit, cursor};
      case ActionKind::ModK: {
        std::int64_t c = cursor % k_mod;
        if (c < 0) c += k_mod;
        return XPoint{0, c};
      }
    }
    return {};
  }

  // Schreier-graph distance from the point to its orbit's basepoint. Closed
  // forms for the built-in actions; cross-checked against an explicit
  // Schreier BFS in the test suite.
  std::int64_t xnorm(const XPoint& x) const {
    switch (kind) {
      case ActionKind::RegularZ:
      case ActionKind::TranslationZ:
      case ActionKind::TwoOrbitZ:
        return iabs(x.coord);
      case ActionKind::ModK:
        return std::min(x.coord, k_mod - x.coord);
    }
    return 0;
  }

  bool exact_norm_supported() const {
    return kind == ActionKind::RegularZ || kind == ActionKind::TranslationZ;
  }

  std::string name() const {
    switch (kind) {
      case ActionKind::RegularZ: return "regular-Z";
      case ActionKind::TranslationZ: return "translation-Z";
      case ActionKind::TwoOrbitZ: return "two-orbit-Z";
      case ActionKind::ModK: return "mod-" + std::to_string(k_mod);
    }
    return "?";
  }
};

}  // namespace lindiv
