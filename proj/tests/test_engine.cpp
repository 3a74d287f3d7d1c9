#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "lindiv/detour.hpp"
#include "lindiv/divergence.hpp"
#include "lindiv/growth.hpp"
#include "lindiv/json_io.hpp"
#include "lindiv/witness.hpp"
#include "lindiv/words.hpp"
#include "lindiv/families/diestel_leader.hpp"
#include "lindiv/families/wreath.hpp"

using namespace lindiv;
using namespace lindiv::testing;

TEST_CASE("min_detour: trivial endpoints and the empty-ball regime") {
  LamplighterSpace sp(LampDriver::cyclic(2));
  auto a = evaluate_word(sp, parse_word(sp, "t t h0"));
  SUBCASE("a == b gives the empty path") {
    auto res = min_detour(sp, a, a, sp.basepoint(), Rational(1), 10);
    REQUIRE(res.path.has_value());
    CHECK(res.length() == 0);
  }
  SUBCASE("radius <= 0 reduces to the plain distance") {
    auto b = evaluate_word(sp, parse_word(sp, "t^-1 h0"));
    auto res = min_detour(sp, a, b, sp.basepoint(), Rational(0), 24);
    REQUIRE(res.path.has_value());
    CHECK(res.length() == sp.pair_distance(a, b));
    auto res_neg = min_detour(sp, a, b, sp.basepoint(), Rational(-3), 24);
    CHECK(res_neg.length() == sp.pair_distance(a, b));
  }
}

TEST_CASE("min_detour: frozen t^3 to t^-3 detour and oracle agreement") {
  LamplighterSpace sp(LampDriver::cyclic(2));
  auto a = evaluate_word(sp, parse_word(sp, "t t t"));
  auto b = evaluate_word(sp, parse_word(sp, "t^-1 t^-1 t^-1"));
  auto res = min_detour(sp, a, b, sp.basepoint(), Rational(2), 24);
  REQUIRE(res.path.has_value());
  CHECK(res.length() == 18);  // frozen from the complement-BFS oracle
  CHECK(brute_detour(sp, a, b, sp.basepoint(), Rational(2), 24) == 18);
  // the returned path is genuinely avoiding and genuinely a path
  auto rep = verify_witness(sp, *res.path, sp.basepoint(), Rational(2), b, 18);
  CHECK(rep.overall_pass);
}

TEST_CASE("min_detour: endpoint inside the ball is invalid input") {
  LamplighterSpace sp(LampDriver::cyclic(2));
  auto a = evaluate_word(sp, parse_word(sp, "t"));
  auto b = evaluate_word(sp, parse_word(sp, "t t t"));
  CHECK_THROWS_AS(min_detour(sp, a, b, sp.basepoint(), Rational(2), 24), InvalidInput);
}

TEST_CASE("min_detour properties: lower bound, radius monotonicity, route agreement") {
  LamplighterSpace sp(LampDriver::cyclic(2));
  PlainView<LamplighterSpace> plain(sp);
  auto sph = sphere(sp, 3);
  auto rng = seeded_rng(11);
  std::uniform_int_distribution<std::size_t> pick(0, sph.size() - 1);
  for (int trial = 0; trial < 12; ++trial) {
    const auto& a = sph[pick(rng)];
    const auto& b = sph[pick(rng)];
    std::int64_t prev = -1;
    for (int r = 0; r <= 2; ++r) {
      auto res = min_detour(sp, a, b, sp.basepoint(), Rational(r), 40);
      REQUIRE(res.path.has_value());
      CHECK(res.length() >= sp.pair_distance(a, b));
      if (prev >= 0) CHECK(res.length() >= prev);
      prev = res.length();
      // A* (oracle) agrees with bidirectional search (no oracle)
      auto res2 = min_detour(plain, a, b, plain.basepoint(), Rational(r), 40);
      REQUIRE(res2.path.has_value());
      CHECK(res2.length() == res.length());
      // and with the single-queue test oracle
      CHECK(brute_detour(sp, a, b, sp.basepoint(), Rational(r), 40) == res.length());
    }
  }
}

TEST_CASE("anchored detour equals per-pair search") {
  LamplighterSpace sp(LampDriver::cyclic(2));
  const int n = 4;
  auto target = make_wreath_target(sp, n);
  Exclusion<LamplighterSpace> excl(sp, sp.basepoint(), Rational(n, 6));
  AnchoredDetour<LamplighterSpace> anchored(sp, target.gstar, excl, n + 2);
  for (const auto& g : sphere(sp, n)) {
    auto via_anchor = anchored.distance_from(g, 12 * n);
    auto direct = min_detour_with(sp, g, target.gstar, excl, 12 * n);
    REQUIRE(via_anchor.has_value());
    REQUIRE(direct.path.has_value());
    CHECK(*via_anchor == direct.length());
  }
}

TEST_CASE("div_triple: empty-ball regime, equal endpoints, sphere-5 value") {
  LamplighterSpace sp(LampDriver::cyclic(2));
  auto a = evaluate_word(sp, parse_word(sp, "t t t t t"));
  auto b = evaluate_word(sp, parse_word(sp, "t t t t h0"));
  SUBCASE("far center empties the ball") {
    // gamma大 enough that delta r - gamma <= 0
    auto v = div_triple(sp, a, b, sp.basepoint(), Rational(1, 2), Rational(10));
    REQUIRE(v.has_value());
    CHECK(*v == sp.pair_distance(a, b));
  }
  SUBCASE("a == b") {
    auto v = div_triple(sp, a, a, sp.basepoint(), Rational(1, 2), Rational(0));
    REQUIRE(v.has_value());
    CHECK(*v == 0);
  }
  SUBCASE("sphere-5 pair against the complement oracle") {
    auto v = div_triple(sp, a, b, sp.basepoint(), Rational(1, 2), Rational(0));
    REQUIRE(v.has_value());
    CHECK(*v == brute_detour(sp, a, b, sp.basepoint(), Rational(5, 2), 100));
    CHECK(*v == 2);  // frozen
  }
}

TEST_CASE("div_profile: trivial n, generator pairs, sampling never beats exhaustive") {
  LamplighterSpace sp(LampDriver::cyclic(2));
  auto s0 = div_profile(sp, 0, Rational(1, 2), Rational(0), ProfileStrategy::exhaustive());
  REQUIRE(s0.value.has_value());
  CHECK(*s0.value == 0);

  auto s1 = div_profile(sp, 1, Rational(1, 2), Rational(0), ProfileStrategy::exhaustive());
  REQUIRE(s1.value.has_value());
  CHECK(*s1.value == 10);  // frozen: max over generator pairs avoiding x0
  CHECK(s1.exhaustive);
  CHECK(s1.pairs_examined == 3);
  // hand oracle over the three generator pairs
  std::int64_t oracle = 0;
  auto sph = sphere(sp, 1);
  for (std::size_t i = 0; i < sph.size(); ++i) {
    for (std::size_t j = i + 1; j < sph.size(); ++j) {
      oracle = std::max(oracle, brute_detour(sp, sph[i], sph[j], sp.basepoint(), Rational(1, 2), 100));
    }
  }
  CHECK(oracle == 10);

  for (int n = 3; n <= 5; ++n) {
    auto full = div_profile(sp, n, Rational(1, 6), Rational(0), ProfileStrategy::exhaustive());
    auto sampled = div_profile(sp, n, Rational(1, 6), Rational(0), ProfileStrategy::sample(40, 7));
    REQUIRE(full.value.has_value());
    REQUIRE(sampled.value.has_value());
    CHECK(*sampled.value <= *full.value);
    CHECK_FALSE(sampled.exhaustive);
    CHECK(sampled.seed == 7);
  }
}

TEST_CASE("div_profile: orbit-grouped evaluation matches the plain route") {
  DLSpace sp(2, 3);
  PlainView<DLSpace> plain(sp);
  for (int n = 3; n <= 4; ++n) {
    auto grouped = div_profile(sp, n, Rational(1, 6), Rational(0), ProfileStrategy::exhaustive());
    auto plain_run = div_profile(plain, n, Rational(1, 6), Rational(0), ProfileStrategy::exhaustive());
    REQUIRE(grouped.value.has_value());
    REQUIRE(plain_run.value.has_value());
    CHECK(*grouped.value == *plain_run.value);
    CHECK(grouped.pairs_examined == plain_run.pairs_examined);
  }
}

TEST_CASE("div_general_crosscheck at tiny n") {
  LamplighterSpace sp(LampDriver::cyclic(2));
  auto c0 = div_general_crosscheck(sp, 0, Rational(1, 2), Rational(0));
  REQUIRE(c0.value.has_value());
  CHECK(*c0.value == 0);
  auto c2 = div_general_crosscheck(sp, 2, Rational(1, 2), Rational(0),
                                   CrosscheckBudget{2, 4, 40, kDefaultBfsCap});
  REQUIRE(c2.value.has_value());
  CHECK(*c2.value == 10);  // frozen exhaustive small-scale evaluation
  CHECK(c2.pairs_examined == 924);
  CHECK_FALSE(c2.exhaustive);
}

TEST_CASE("compare_growth: Def 2.2 inequality") {
  SUBCASE("f = g with A = 1 on monotone samples") {
    std::vector<std::pair<Rational, Rational>> f;
    GrowthCurve g;
    for (int x = 0; x <= 20; ++x) {
      f.emplace_back(Rational(x), Rational(2 * x + 1));
      g.samples.emplace_back(Rational(x), Rational(2 * x + 1));
    }
    g.extension = GrowthCurve::Extension::Linear;
    g.linear_slope = Rational(2);
    g.linear_offset = Rational(1);
    CHECK(compare_growth(f, g, Rational(1)));
  }
  SUBCASE("x^2 against x fails at x = 200 even with A = 10") {
    std::vector<std::pair<Rational, Rational>> f;
    for (int x = 0; x <= 1000; x += 50) f.emplace_back(Rational(x), Rational(x) * Rational(x));
    CHECK_FALSE(compare_growth(f, GrowthCurve::identity(), Rational(10)));
    // the first failing sample the spec names: 40000 > 22120
    std::vector<std::pair<Rational, Rational>> f200{{Rational(200), Rational(40000)}};
    CHECK_FALSE(compare_growth(f200, GrowthCurve::identity(), Rational(10)));
    std::vector<std::pair<Rational, Rational>> f100{{Rational(100), Rational(10000)}};
    CHECK(compare_growth(f100, GrowthCurve::identity(), Rational(10)));  // 10000 <= 11110
  }
  SUBCASE("5x + 3 against x with A = 5") {
    std::vector<std::pair<Rational, Rational>> f;
    for (int x = 0; x <= 100; ++x) f.emplace_back(Rational(x), Rational(5 * x + 3));
    CHECK(compare_growth(f, GrowthCurve::identity(), Rational(5)));
  }
  SUBCASE("domain gaps are loud") {
    GrowthCurve g;  // no extension, no samples
    std::vector<std::pair<Rational, Rational>> f{{Rational(1), Rational(1)}};
    CHECK_THROWS_AS(compare_growth(f, g, Rational(1)), DomainGap);
  }
  SUBCASE("A below one is rejected") {
    std::vector<std::pair<Rational, Rational>> f;
    CHECK_THROWS(compare_growth(f, GrowthCurve::identity(), Rational(1, 2)));
  }
}

TEST_CASE("verify_witness: empty path, certificates, negative control") {
  LamplighterSpace sp(LampDriver::cyclic(2));
  auto a = evaluate_word(sp, parse_word(sp, "t t t"));
  SUBCASE("empty path with matching endpoint passes") {
    Path<WreathElement> p(a);
    auto rep = verify_witness(sp, p, sp.basepoint(), Rational(1), a, 0);
    CHECK(rep.overall_pass);
    CHECK(rep.length == 0);
  }
  SUBCASE("flipping one label fails edge validity") {
    const int n = 4;
    auto target = make_wreath_target(sp, n);
    auto g = sphere(sp, n)[2];
    auto w = build_wreath_witness(sp, g, n, target);
    REQUIRE(w.path.length() > 0);
    auto corrupted = w.path;
    corrupted.labels[corrupted.labels.size() / 2].arg *= -1;
    if (corrupted.labels[corrupted.labels.size() / 2] ==
        w.path.labels[w.path.labels.size() / 2]) {
      corrupted.labels[corrupted.labels.size() / 2] = Label{wreath_label::kBase, +1};
    }
    auto rep = verify_witness(sp, corrupted, sp.basepoint(), Rational(n, 6), target.gstar, 6 * n);
    CHECK_FALSE(rep.edges_valid);
    CHECK_FALSE(rep.overall_pass);
  }
  SUBCASE("certificate-first mode reports certified vertices") {
    const int n = 6;
    auto target = make_wreath_target(sp, n);
    auto g = sphere(sp, n).front();
    auto w = build_wreath_witness(sp, g, n, target);
    VerifyOptions opts;
    opts.certificate_first = true;
    auto rep = verify_witness(sp, w.path, sp.basepoint(), Rational(n, 6), target.gstar, 6 * n, opts);
    CHECK(rep.overall_pass);
    CHECK(rep.count(AvoidVerdict::Certified) > 0);
  }
  SUBCASE("length bound failures are verdicts, not errors") {
    Path<WreathElement> p(a);
    extend_path(sp, p, parse_word(sp, "t t"));
    auto rep = verify_witness(sp, p, sp.basepoint(), Rational(1), p.end(), 1);
    CHECK_FALSE(rep.overall_pass);
    CHECK(rep.edges_valid);
    CHECK(rep.endpoints_verified);
  }
}

TEST_CASE("witness length dominates the detour between its endpoints") {
  // the min_detour consistency invariant at unit-test scale
  LamplighterSpace sp(LampDriver::cyclic(2));
  const int n = 5;
  auto target = make_wreath_target(sp, n);
  for (const auto& g : sphere(sp, n)) {
    auto w = build_wreath_witness(sp, g, n, target);
    const std::int64_t len = static_cast<std::int64_t>(w.path.length());
    const std::int64_t bound = std::max<std::int64_t>(2 * len, sp.exact_norm(g) + len);
    auto det = min_detour(sp, g, target.gstar, sp.basepoint(), Rational(n, 6), bound);
    REQUIRE(det.path.has_value());
    CHECK(det.length() <= len);
  }
}

TEST_CASE("JSON serialization carries the documented fields") {
  GrowthSample s;
  s.n = 4;
  s.value = 16;
  s.pairs_examined = 10;
  s.exhaustive = true;
  s.search_bound = 56;
  auto js = to_json(s);
  CHECK(js["n"] == 4);
  CHECK(js["value"] == 16);
  CHECK(js["unreachable_within_bound"] == false);
  CHECK(js["pairs_examined"] == 10);
  CHECK(js["exhaustive"] == true);

  s.value.reset();
  auto js2 = to_json(s);
  CHECK(js2["value"].is_null());
  CHECK(js2["unreachable_within_bound"] == true);

  WitnessReport r;
  r.endpoints_verified = true;
  r.edges_valid = true;
  r.length = 2;
  r.length_bound = 12;
  r.radius = Rational(1, 2);
  r.avoidance = {AvoidVerdict::Exact, AvoidVerdict::Certified, AvoidVerdict::Exact};
  r.overall_pass = true;
  auto jr = to_json(r);
  CHECK(jr["radius"] == "1/2");
  CHECK(jr["avoidance_counts"]["certified"] == 1);
  CHECK(jr["overall_pass"] == true);
}
