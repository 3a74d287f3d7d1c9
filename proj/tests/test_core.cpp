#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "lindiv/bfs.hpp"
#include "lindiv/rational.hpp"
#include "lindiv/ray.hpp"
#include "lindiv/words.hpp"
#include "lindiv/families/baumslag_solitar.hpp"
#include "lindiv/families/diestel_leader.hpp"
#include "lindiv/families/graph_wreath.hpp"
#include "lindiv/families/houghton.hpp"
#include "lindiv/families/wreath.hpp"

using namespace lindiv;
using namespace lindiv::testing;

TEST_CASE("rational arithmetic and open-ball cutoffs") {
  CHECK(Rational::parse("1/6").num == 1);
  CHECK(Rational::parse("1/6").den == 6);
  CHECK(Rational(3, 6) == Rational(1, 2));
  CHECK(Rational(1, 2) < Rational(2, 3));
  // open ball of radius r contains the integer distances <= cutoff
  CHECK(Rational(0).open_ball_max_dist() == -1);
  CHECK(Rational(-1, 2).open_ball_max_dist() == -1);
  CHECK(Rational(1).open_ball_max_dist() == 0);
  CHECK(Rational(7, 6).open_ball_max_dist() == 1);
  CHECK(Rational(3).open_ball_max_dist() == 2);
  CHECK((Rational(1, 2) * Rational(6) - Rational(0)).open_ball_max_dist() == 2);
  CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
}

TEST_CASE("ball: basepoint only at radius zero") {
  LamplighterSpace sp(LampDriver::cyclic(2));
  auto b = ball(sp, 0);
  CHECK(b.size() == 1);
  CHECK(b.lookup(sp.canonical_key(sp.basepoint())) == 0);
}

TEST_CASE("ball agrees with independent word enumeration") {
  LamplighterSpace sp(LampDriver::cyclic(2));
  auto oracle = word_enumeration_ball(sp, 2);
  CHECK(oracle.size() == 10);  // frozen from the enumeration oracle
  auto b = ball(sp, 2);
  CHECK(b.size() == oracle.size());
  for (const auto& [key, d] : oracle) {
    REQUIRE(b.lookup(key).has_value());
    CHECK(*b.lookup(key) == d);
  }
  // deeper cross-check
  auto oracle5 = word_enumeration_ball(sp, 5);
  auto b5 = ball(sp, 5);
  CHECK(b5.size() == oracle5.size());
}

TEST_CASE("ball: DL(2,3) radius one is the basepoint plus p+q neighbors") {
  DLSpace sp(2, 3);
  CHECK(ball(sp, 1).size() == 1 + 5);
}

TEST_CASE("ball: budget cap is a hard error") {
  LamplighterSpace sp(LampDriver::cyclic(2));
  CHECK_THROWS_AS(ball(sp, 6, 20), BudgetExceeded);
}

TEST_CASE("norm: basepoint, paper g*, and the frozen two-lamp example") {
  LamplighterSpace sp(LampDriver::cyclic(2));
  CHECK(norm(sp, sp.basepoint()) == 0);
  auto gstar = evaluate_word(sp, parse_word(sp, "t t t t h0"));
  CHECK(sp.exact_norm(gstar) == 5);
  PlainView<LamplighterSpace> plain(sp);
  NormCache<PlainView<LamplighterSpace>> cache(plain);
  CHECK(cache.norm(gstar) == 5);
  WreathElement two_lamps;
  two_lamps.lamps[XPoint{0, -1}] = 1;
  two_lamps.lamps[XPoint{0, 2}] = 1;
  CHECK(sp.exact_norm(two_lamps) == 8);
  CHECK(cache.norm(two_lamps) == 8);
}

TEST_CASE("sphere: trivial cases and the BFS characterization") {
  LamplighterSpace sp(LampDriver::cyclic(2));
  auto s0 = sphere(sp, 0);
  REQUIRE(s0.size() == 1);
  CHECK(sp.canonical_key(s0[0]) == sp.canonical_key(sp.basepoint()));

  H2Space h2;
  CHECK(sphere(h2, 1).size() == 3);  // a, t, t^-1

  BSSpace bs(2, 4);
  auto oracle = word_enumeration_ball(bs, 2);
  std::size_t expect = 0;
  for (const auto& [key, d] : oracle) {
    if (d == 2) ++expect;
  }
  CHECK(sphere(bs, 2).size() == expect);

  // sphere(n) is exactly the distance-n slice of ball(n)
  auto b3 = ball(sp, 3);
  std::size_t on3 = 0;
  for (const auto& [key, entry] : b3.dist) {
    if (entry.second == 3) ++on3;
  }
  CHECK(sphere(sp, 3).size() == on3);
}

TEST_CASE("metric symmetry and 1-Lipschitz norms along edges") {
  H2Space sp;
  auto b = ball(sp, 4);
  NormCache<H2Space> cache(sp);
  // d(a,b) = d(b,a) for sampled pairs, BFS run from both sides
  auto pts = sphere(sp, 3);
  for (std::size_t i = 0; i < pts.size(); i += 3) {
    BallMap<H2Element> from_a(pts[i]);
    extend_ball(sp, from_a, 6);
    BallMap<H2Element> from_b(pts[(i + 7) % pts.size()]);
    extend_ball(sp, from_b, 6);
    auto dab = from_a.lookup(sp.canonical_key(pts[(i + 7) % pts.size()]));
    auto dba = from_b.lookup(sp.canonical_key(pts[i]));
    REQUIRE(dab.has_value());
    CHECK(dab == dba);
  }
  for (const auto& [key, entry] : b.dist) {
    for (const auto& step : sp.neighbors(entry.first)) {
      auto dn = b.lookup(sp.canonical_key(step.to));
      if (dn) CHECK(iabs(*dn - entry.second) <= 1);
    }
  }
}

TEST_CASE("neighbor relation is symmetric across families") {
  auto symmetric = [](const auto& sp, std::int64_t radius) {
    auto b = ball(sp, radius);
    for (const auto& [key, entry] : b.dist) {
      for (const auto& step : sp.neighbors(entry.first)) {
        bool back = false;
        for (const auto& rev : sp.neighbors(step.to)) {
          if (sp.canonical_key(rev.to) == key) back = true;
        }
        CHECK(back);
      }
    }
  };
  symmetric(LamplighterSpace(LampDriver::cyclic(2)), 3);
  symmetric(DLSpace(2, 3), 2);
  symmetric(H2Space{}, 3);
  symmetric(HmSpace(3), 2);
  symmetric(BSSpace(2, 4), 3);
  symmetric(ZZGWSpace{ZLineGraph{}, ZLineGraph{}}, 3);
}

TEST_CASE("certificates never exceed BFS norms (balls up to 6, all families)") {
  CHECK(certificate_violations(LamplighterSpace(LampDriver::cyclic(2)), 6) == 0);
  CHECK(certificate_violations(LamplighterSpace(LampDriver::cyclic(3)), 6) == 0);
  CHECK(certificate_violations(WreathSpace<ActionKind::TranslationZ>(LampDriver::cyclic(2)), 6) == 0);
  CHECK(certificate_violations(WreathSpace<ActionKind::TwoOrbitZ>(LampDriver::cyclic(2)), 6) == 0);
  CHECK(certificate_violations(WreathSpace<ActionKind::ModK>(LampDriver::integers(), 3), 6) == 0);
  CHECK(certificate_violations(LamplighterSpace(LampDriver::integers()), 6) == 0);
  CHECK(certificate_violations(DLSpace(2, 3), 6) == 0);
  CHECK(certificate_violations(H2Space{}, 6) == 0);
  CHECK(certificate_violations(HmSpace(3), 5) == 0);
  CHECK(certificate_violations(BSSpace(2, 4), 6) == 0);
  CHECK(certificate_violations(ZZGWSpace{ZLineGraph{}, ZLineGraph{}}, 6) == 0);
}

TEST_CASE("select_escaping_ray: triangle-trivial range and the t^-3 example") {
  H2Space sp;
  // g = t^-3: the positive t-ray reaches the identity at m = 3, inside
  // B(1, 3/2); the negative ray stays clear and must be chosen.
  H2Element g;
  g.shift = -3;
  BallMap<H2Element> cb(sp.basepoint());
  auto ray = [&](int dir) {
    return std::function<H2Element(int)>([g, dir](int m) {
      H2Element e = g;
      e.shift += dir * m;
      return e;
    });
  };
  int dir = select_escaping_ray(sp, ray(+1), ray(-1), cb, Rational(3, 2), 4 * 3 + 8);
  CHECK(dir == -1);
  // positive-ray point at m = 3 is the identity, exactly inside the ball
  CHECK(sp.canonical_key(ray(+1)(3)) == sp.canonical_key(sp.basepoint()));
  // for m < n/2 both rays stay outside by the triangle inequality
  NormCache<H2Space> cache(sp);
  for (int m = 0; m < 1; ++m) {
    CHECK(cache.norm(ray(+1)(m)) >= 3 - m);
    CHECK(cache.norm(ray(-1)(m)) >= 3 - m);
  }
  // ties prefer +1: the transposition a is symmetric between the two rays
  H2Element sym = evaluate_word(sp, parse_word(sp, "a"));
  auto sray = [&](int dir2) {
    return std::function<H2Element(int)>([sym, dir2](int m) {
      H2Element e = sym;
      e.shift += dir2 * m;
      return e;
    });
  };
  CHECK(select_escaping_ray(sp, sray(+1), sray(-1), cb, Rational(1, 2), 8) == +1);
}

TEST_CASE("select_escaping_ray: loud failure when no ray verifies") {
  H2Space sp;
  H2Element g;  // the identity: every ray leaves the huge ball only beyond the horizon
  BallMap<H2Element> cb(sp.basepoint());
  auto ray = [&](int dir) {
    return std::function<H2Element(int)>([g, dir](int m) {
      H2Element e = g;
      e.shift += dir * m;
      return e;
    });
  };
  CHECK_THROWS_AS(select_escaping_ray(sp, ray(+1), ray(-1), cb, Rational(4), 2),
                  NoEscapingRay);
}

TEST_CASE("geodesic words from the BFS tree evaluate back to their vertex") {
  BSSpace sp(2, 4);
  auto tree = bfs_tree(sp, 4);
  auto sph = sphere(sp, 4);
  for (std::size_t i = 0; i < sph.size(); i += 7) {
    auto word = geodesic_word(tree, sp.canonical_key(sph[i]));
    CHECK(word.size() == 4);
    CHECK(sp.canonical_key(evaluate_word(sp, word)) == sp.canonical_key(sph[i]));
  }
}
