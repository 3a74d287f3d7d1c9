#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "lindiv/bfs.hpp"
#include "lindiv/witness.hpp"
#include "lindiv/families/graph_wreath.hpp"
#include "lindiv/families/wreath.hpp"

using namespace lindiv;
using namespace lindiv::testing;

TEST_CASE("drivers: degrees, norms and geodesics") {
  ZLineGraph line;
  CHECK(line.distance(-3, 4) == 7);
  CHECK(line.geodesic(2, -1).size() == 4);

  GridGraph grid;
  CHECK(grid.norm({3, -2}) == 5);
  auto gpath = grid.geodesic({0, 0}, {2, 2});
  CHECK(gpath.size() == 5);
  for (std::size_t i = 0; i + 1 < gpath.size(); ++i) {
    CHECK(grid.distance(gpath[i], gpath[i + 1]) == 1);
  }

  RegularTreeGraph tree(3);
  auto root = tree.basepoint();
  CHECK(tree.neighbors(root).size() == 3);
  auto deep = tree.ray(4).back();
  CHECK(tree.norm(deep) == 4);
  CHECK(tree.neighbors(deep).size() == 3);
  auto tpath = tree.geodesic(deep, tree.ray(2).back());
  CHECK(static_cast<std::int64_t>(tpath.size()) - 1 == tree.distance(deep, tree.ray(2).back()));
}

TEST_CASE("neighbors of the marked vertex count deg_B + deg_A") {
  ZZGWSpace sp{ZLineGraph{}, ZLineGraph{}};
  CHECK(sp.neighbors(sp.basepoint()).size() == 4);

  GWSpace<RegularTreeGraph, ZLineGraph> mixed{RegularTreeGraph(4), ZLineGraph{}};
  CHECK(mixed.neighbors(mixed.basepoint()).size() == 4 + 2);
}

TEST_CASE("neighbor symmetry on several hundred vertices") {
  ZZGWSpace sp{ZLineGraph{}, ZLineGraph{}};
  auto b = ball(sp, 5);
  std::size_t checked = 0;
  for (const auto& [key, entry] : b.dist) {
    if (++checked > 500) break;
    for (const auto& step : sp.neighbors(entry.first)) {
      bool back = false;
      for (const auto& rev : sp.neighbors(step.to)) {
        if (sp.canonical_key(rev.to) == key) back = true;
      }
      CHECK(back);
    }
  }
}

TEST_CASE("support lower bound: quoted values and BFS domination") {
  ZZGWSpace sp{ZLineGraph{}, ZLineGraph{}};
  CHECK(sp.support_lower_bound(sp.basepoint()) == 0);
  GWVertex<std::int64_t, std::int64_t> v;
  v.support[4] = 1;
  CHECK(sp.support_lower_bound(v) == 4);
  auto b = ball(sp, 6);
  for (const auto& [key, entry] : b.dist) {
    CHECK(sp.support_lower_bound(entry.first) <= entry.second);
  }
}

TEST_CASE("Z-line graph wreath matches the Z-lamp wreath product on ball 7") {
  ZZGWSpace gw{ZLineGraph{}, ZLineGraph{}};
  LamplighterSpace wr(LampDriver::integers());
  auto bg = ball(gw, 7);
  auto bw = ball(wr, 7);
  REQUIRE(bg.size() == bw.size());
  for (const auto& [key, entry] : bg.dist) {
    WreathElement corresponding;
    corresponding.cursor = entry.first.cursor;
    for (const auto& [a, b] : entry.first.support) corresponding.lamps[XPoint{0, a}] = b;
    auto found = bw.lookup(wr.canonical_key(corresponding));
    REQUIRE(found.has_value());
    CHECK(*found == entry.second);
    CHECK(gw.exact_norm(entry.first) == entry.second);
  }
}

TEST_CASE("witness case 1: two fiber edges when the support reaches a*") {
  ZZGWSpace sp{ZLineGraph{}, ZLineGraph{}};
  const int n = 5;
  auto target = make_gw_target(sp, n);
  GWVertex<std::int64_t, std::int64_t> g;
  g.cursor = n - 1;
  g.support[n - 1] = -1;  // b at distance one on the other side of b0
  REQUIRE(sp.exact_norm(g) == n);
  GWWitnessInfo info;
  auto p = witness_path_graph(sp, g, n, zline_gw_itinerary(sp, g), target, &info);
  CHECK(info.case_id == 1);
  CHECK(p.length() <= 2);
  CHECK(verify_witness(sp, p, sp.basepoint(), Rational(n, 6), target.gstar, 6 * n).overall_pass);
}

TEST_CASE("witness: trivial at g*") {
  ZZGWSpace sp{ZLineGraph{}, ZLineGraph{}};
  auto target = make_gw_target(sp, 4);
  GWWitnessInfo info;
  auto p = witness_path_graph(sp, target.gstar, 4, zline_gw_itinerary(sp, target.gstar), target,
                              &info);
  CHECK(info.case_id == 0);
  CHECK(p.length() == 0);
}

TEST_CASE("witness: exhaustive spheres on the Z-line instance") {
  ZZGWSpace sp{ZLineGraph{}, ZLineGraph{}};
  for (int n = 3; n <= 5; ++n) {
    auto target = make_gw_target(sp, n);
    Exclusion<ZZGWSpace> excl(sp, sp.basepoint(), Rational(n, 6));
    bool saw_case4 = false;
    for (const auto& g : sphere(sp, n)) {
      GWWitnessInfo info;
      auto p = witness_path_graph(sp, g, n, zline_gw_itinerary(sp, g), target, &info);
      saw_case4 = saw_case4 || info.case_id == 4;
      auto rep = verify_witness_with(sp, p, excl, target.gstar, 6 * n);
      CHECK(rep.overall_pass);
    }
    CHECK(saw_case4);
  }
}

TEST_CASE("witness: generic drivers over BFS-recovered itineraries") {
  GWSpace<RegularTreeGraph, ZLineGraph> sp{RegularTreeGraph(3), ZLineGraph{}};
  const int n = 4;
  auto target = make_gw_target(sp, n);
  auto tree = bfs_tree(sp, n);
  Exclusion<GWSpace<RegularTreeGraph, ZLineGraph>> excl(sp, sp.basepoint(), Rational(n, 6));
  for (const auto& g : sphere(sp, n)) {
    auto word = geodesic_word(tree, sp.canonical_key(g));
    auto itinerary = gw_itinerary_from_word(sp, word);
    auto p = witness_path_graph(sp, g, n, itinerary, target);
    auto rep = verify_witness_with(sp, p, excl, target.gstar, 6 * n);
    CHECK(rep.overall_pass);
  }

  GWSpace<GridGraph, ZLineGraph> sp2{GridGraph{}, ZLineGraph{}};
  auto target2 = make_gw_target(sp2, 3);
  auto tree2 = bfs_tree(sp2, 3);
  Exclusion<GWSpace<GridGraph, ZLineGraph>> excl2(sp2, sp2.basepoint(), Rational(1, 2));
  for (const auto& g : sphere(sp2, 3)) {
    auto word = geodesic_word(tree2, sp2.canonical_key(g));
    auto p = witness_path_graph(sp2, g, 3, gw_itinerary_from_word(sp2, word), target2);
    CHECK(verify_witness_with(sp2, p, excl2, target2.gstar, 18).overall_pass);
  }
}
