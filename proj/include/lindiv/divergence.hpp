#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <mutex>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include "lindiv/bfs.hpp"
#include "lindiv/detour.hpp"
#include "lindiv/rational.hpp"
#include "lindiv/space.hpp"

namespace lindiv {

// One evaluated point of a divergence profile. `value` empty means some pair
// was unreachable within the search bound; that is reported as a bound, never
// as a number.
struct GrowthSample {
  std::int64_t n = 0;
  std::optional<std::int64_t> value;
  std::uint64_t pairs_examined = 0;
  bool exhaustive = false;
  std::int64_t search_bound = 0;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
};

struct ProfileStrategy {
  enum class Kind { Exhaustive, Sample } kind = Kind::Exhaustive;
  std::uint64_t sample_count = 0;
  std::uint64_t seed = 0;

  static ProfileStrategy exhaustive() { return {}; }
  static ProfileStrategy sample(std::uint64_t k, std::uint64_t seed) {
    return {Kind::Sample, k, seed};
  }
};

namespace detail {

// Tries to realize d(a, b) by a geodesic that stays clear of the excluded
// ball, stepping greedily along the exact metric and preferring far-from-base
// vertices. Success proves the detour equals the plain distance; failure
// proves nothing.
template <MarkedSpace S>
  requires HasPairOracle<S>
bool greedy_avoiding_geodesic(const S& space, const typename S::vertex_type& a,
                              const typename S::vertex_type& b, const Exclusion<S>& excl) {
  using V = typename S::vertex_type;
  V cur = a;
  std::int64_t remaining = space.pair_distance(a, b);
  while (remaining > 0) {
    bool moved = false;
    V best{};
    std::int64_t best_margin = -1;  // distance from the excluded center
    for (auto& step : space.neighbors(cur)) {
      if (space.pair_distance(step.to, b) != remaining - 1) continue;
      const std::int64_t margin = space.pair_distance(excl.center(), step.to);
      if (margin <= excl.inside_max()) continue;
      if (margin > best_margin) {  // ties resolved by neighbor order
        best = std::move(step.to);
        best_margin = margin;
        moved = true;
      }
    }
    if (!moved) return false;
    cur = std::move(best);
    remaining -= 1;
  }
  return true;
}

// Div_gamma(a, b, center; delta) for endpoints whose r is already known and
// whose exclusion ball is prepared.
template <MarkedSpace S>
std::optional<std::int64_t> detour_value(const S& space, const typename S::vertex_type& a,
                                         const typename S::vertex_type& b,
                                         const Exclusion<S>& excl, std::int64_t search_bound,
                                         std::size_t cap) {
  if constexpr (HasPairOracle<S>) {
    const std::int64_t d = space.pair_distance(a, b);
    const std::int64_t inside_max = excl.radius().open_ball_max_dist();
    if (inside_max < 0) return d;
    // No geodesic meets the ball unless some excluded z has
    // d(a,z) + d(z,b) = d(a,b); testing the handful of z is exact.
    bool touched = false;
    for (const auto& [key, entry] : excl.ball().dist) {
      if (space.pair_distance(a, entry.first) + space.pair_distance(entry.first, b) == d) {
        touched = true;
        break;
      }
    }
    if (!touched) return d;
    if (greedy_avoiding_geodesic(space, a, b, excl)) return d;
    auto res = min_detour_with(space, a, b, excl, search_bound, cap);
    if (res.path) return res.length();
    return std::nullopt;
  } else {
    auto res = min_detour_with(space, a, b, excl, search_bound, cap);
    if (res.path) return res.length();
    return std::nullopt;
  }
}

}  // namespace detail

// Div_gamma(a, b, c; delta): r = min(d(c,a), d(c,b)), then the minimal detour
// outside B(c, delta*r - gamma). Empty optional = unreachable within bound.
template <MarkedSpace S>
std::optional<std::int64_t> div_triple(const S& space, const typename S::vertex_type& a,
                                       const typename S::vertex_type& b,
                                       const typename S::vertex_type& c, const Rational& delta,
                                       const Rational& gamma, std::int64_t search_bound = 0,
                                       std::size_t cap = kDefaultBfsCap) {
  std::int64_t da, db;
  if constexpr (HasPairOracle<S>) {
    da = space.pair_distance(c, a);
    db = space.pair_distance(c, b);
  } else {
    BallMap<typename S::vertex_type> cball(c);
    const std::string ka = space.canonical_key(a), kb = space.canonical_key(b);
    std::optional<std::int64_t> fa, fb;
    while (!(fa && fb)) {
      if (cball.radius >= 0 && cball.frontier.empty() && cball.radius > 0) break;
      extend_ball(space, cball, cball.radius + 1, cap);
      fa = cball.lookup(ka);
      fb = cball.lookup(kb);
    }
    if (!fa || !fb) throw BudgetExceeded("div_triple: endpoint unreachable from center");
    da = *fa;
    db = *fb;
  }
  const std::int64_t r = std::min(da, db);
  const Rational radius = delta * Rational(r) - gamma;
  if (search_bound <= 0) search_bound = 8 * std::max<std::int64_t>({da, db, 1});
  Exclusion<S> excl(space, c, radius, cap);
  return detail::detour_value(space, a, b, excl, search_bound, cap);
}

// DIV'_gamma(n, delta): sup of Div over pairs on the sphere of radius n,
// exhaustive or seeded-sampled. Pair evaluations run in parallel and reduce
// by max.
template <MarkedSpace S>
GrowthSample div_profile(const S& space, std::int64_t n, const Rational& delta,
                         const Rational& gamma, const ProfileStrategy& strategy,
                         std::int64_t search_bound = 0, std::size_t cap = kDefaultBfsCap,
                         unsigned threads = 0) {
  using V = typename S::vertex_type;
  const auto t0 = std::chrono::steady_clock::now();

  GrowthSample out;
  out.n = n;
  out.exhaustive = strategy.kind == ProfileStrategy::Kind::Exhaustive;
  out.seed = strategy.seed;
  if (search_bound <= 0) search_bound = 12 * std::max<std::int64_t>(n, 1) + 8;
  out.search_bound = search_bound;

  if (n == 0) {
    out.value = 0;
    out.pairs_examined = 0;
    return out;
  }

  const std::vector<V> sph = sphere(space, n, cap);
  const Rational radius = delta * Rational(n) - gamma;
  const Exclusion<S> excl(space, space.basepoint(), radius, cap);

  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  if (strategy.kind == ProfileStrategy::Kind::Exhaustive) {
    if constexpr (HasPairOrbitKey<S>) {
      // One evaluation per basepoint-stabilizer orbit decides every pair in
      // that orbit; the supremum still ranges over all of them.
      std::unordered_map<std::string, std::pair<std::uint32_t, std::uint32_t>> orbits;
      std::uint64_t total = 0;
      for (std::uint32_t i = 0; i < sph.size(); ++i) {
        for (std::uint32_t j = i + 1; j < sph.size(); ++j) {
          ++total;
          orbits.try_emplace(space.pair_orbit_key(sph[i], sph[j]), i, j);
        }
      }
      pairs.reserve(orbits.size());
      for (const auto& [key, rep] : orbits) pairs.push_back(rep);
      out.pairs_examined = total;
    } else {
      for (std::uint32_t i = 0; i < sph.size(); ++i)
        for (std::uint32_t j = i + 1; j < sph.size(); ++j) pairs.emplace_back(i, j);
      out.pairs_examined = pairs.size();
    }
  } else {
    std::mt19937_64 rng(strategy.seed);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(sph.size()) - 1);
    for (std::uint64_t k = 0; k < strategy.sample_count; ++k) {
      std::uint32_t i = pick(rng), j = pick(rng);
      if (i == j) continue;
      pairs.emplace_back(std::min(i, j), std::max(i, j));
    }
    out.pairs_examined = pairs.size();
  }

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::uint64_t> cursor{0};
  std::mutex merge_mutex;
  std::int64_t best = 0;
  bool unreachable = false;
  std::exception_ptr first_error;

  auto worker = [&]() {
    std::int64_t local_best = 0;
    bool local_unreachable = false;
    try {
      while (true) {
        std::uint64_t idx = cursor.fetch_add(1);
        if (idx >= pairs.size()) break;
        auto [i, j] = pairs[idx];
        auto value = detail::detour_value(space, sph[i], sph[j], excl, search_bound, cap);
        if (!value) {
          local_unreachable = true;
        } else if (*value > local_best) {
          local_best = *value;
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(merge_mutex);
      if (!first_error) first_error = std::current_exception();
    }
    std::lock_guard<std::mutex> lock(merge_mutex);
    best = std::max(best, local_best);
    unreachable = unreachable || local_unreachable;
  };

  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);

  if (!unreachable) out.value = best;
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

struct CrosscheckBudget {
  std::int64_t endpoint_radius = 0;  // a, b range over this ball (0: use n)
  std::int64_t center_radius = 0;    // c ranges over this ball (0: use 2n)
  std::int64_t search_bound = 0;
  std::size_t cap = kDefaultBfsCap;
};

// The (*) form of the definition at desk scale: sup over triples (a, b, c)
// with d(a,b) <= n, a and b from a truncated ball and c from a larger one.
// Used only to compare the profiles empirically at tiny n.
template <MarkedSpace S>
GrowthSample div_general_crosscheck(const S& space, std::int64_t n, const Rational& delta,
                                    const Rational& gamma, CrosscheckBudget budget = {}) {
  using V = typename S::vertex_type;
  const auto t0 = std::chrono::steady_clock::now();
  if (budget.endpoint_radius <= 0) budget.endpoint_radius = n;
  if (budget.center_radius <= 0) budget.center_radius = 2 * n;
  if (budget.search_bound <= 0) budget.search_bound = 12 * std::max<std::int64_t>(n, 1) + 8;

  GrowthSample out;
  out.n = n;
  out.exhaustive = false;  // domain-truncated by construction
  out.search_bound = budget.search_bound;
  if (n == 0) {
    out.value = 0;
    return out;
  }

  auto endpoint_ball = ball(space, budget.endpoint_radius, budget.cap);
  auto center_ball = ball(space, budget.center_radius, budget.cap);
  std::vector<V> points, centers;
  for (const auto& [key, entry] : endpoint_ball.dist) points.push_back(entry.first);
  for (const auto& [key, entry] : center_ball.dist) centers.push_back(entry.first);

  std::int64_t best = 0;
  bool unreachable = false;
  std::uint64_t examined = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    BallMap<V> from_a(points[i]);
    extend_ball(space, from_a, n, budget.cap);
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (!from_a.lookup(space.canonical_key(points[j]))) continue;  // d(a,b) > n
      for (const V& c : centers) {
        auto value =
            div_triple(space, points[i], points[j], c, delta, gamma, budget.search_bound, budget.cap);
        ++examined;
        if (!value) {
          unreachable = true;
        } else {
          best = std::max(best, *value);
        }
      }
    }
  }
  out.pairs_examined = examined;
  if (!unreachable) out.value = best;
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace lindiv
