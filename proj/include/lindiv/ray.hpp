#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "lindiv/bfs.hpp"
#include "lindiv/rational.hpp"
#include "lindiv/space.hpp"

namespace lindiv {

// Picks the ray of a bi-infinite geodesic through g that stays outside the
// open ball B(center, radius). The caller asserts geodesicity; the two
// closures enumerate the candidate rays (m >= 0). Points up to `horizon` are
// tested exactly against the center ball; the tail beyond the horizon must be
// covered by the family certificate at horizon + 1, which families arrange by
// exposing a projection bound that grows along the ray.
//
// Returns +1 or -1; prefers +1 when both rays verify.
template <MarkedSpace S>
int select_escaping_ray(const S& space,
                        const std::function<typename S::vertex_type(int)>& ray_plus,
                        const std::function<typename S::vertex_type(int)>& ray_minus,
                        BallMap<typename S::vertex_type>& center_ball, const Rational& radius,
                        int horizon, std::size_t cap = kDefaultBfsCap) {
  const std::int64_t inside_max = radius.open_ball_max_dist();
  if (inside_max < 0) return +1;  // empty ball
  extend_ball(space, center_ball, inside_max, cap);

  auto ray_escapes = [&](const std::function<typename S::vertex_type(int)>& ray) {
    for (int m = 0; m <= horizon; ++m) {
      auto d = center_ball.lookup(space.canonical_key(ray(m)));
      if (d && *d <= inside_max) return false;  // the shared ball may be larger than needed
    }
    return Rational(certificate_or_zero(space, ray(horizon + 1))) >= radius;
  };

  if (ray_escapes(ray_plus)) return +1;
  if (ray_escapes(ray_minus)) return -1;
  throw NoEscapingRay("select_escaping_ray: neither ray verified within horizon " +
                      std::to_string(horizon));
}

}  // namespace lindiv
