#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "cyclespan/errors.hpp"
#include "cyclespan/hamilton.hpp"
#include "oracles.hpp"

using namespace cyclespan;

TEST_SUITE("hamilton") {

TEST_CASE("canonical cycle orders") {
  CHECK(canonical_cycle_order({3, 1, 0, 2}) == std::vector<Vertex>{0, 1, 3, 2});
  CHECK(canonical_cycle_order({2, 0, 4, 1, 3}) == std::vector<Vertex>{0, 2, 3, 1, 4});
  const Graph k4 = complete_graph(4);
  const HamiltonCycle h = HamiltonCycle::from_order(k4, {2, 3, 0, 1});
  CHECK(h.order() == std::vector<Vertex>{0, 1, 2, 3});
  CHECK(h.edges().weight() == 4);
  CHECK_THROWS_AS(HamiltonCycle::from_order(cycle_graph(5), {0, 2, 4, 1, 3}), InvalidInput);
  CHECK_THROWS_AS(HamiltonCycle::from_order(k4, {0, 1, 2}), InvalidInput);
}

TEST_CASE("validators") {
  const Graph p = path_graph(4);
  CHECK(is_hamilton_path(p, std::vector<Vertex>{0, 1, 2, 3}));
  CHECK_FALSE(is_hamilton_path(p, std::vector<Vertex>{0, 2, 1, 3}));
  CHECK_FALSE(is_hamilton_path(p, std::vector<Vertex>{0, 1, 2}));
  const std::vector<Vertex> sub{1, 2};
  CHECK(is_hamilton_path(p, std::vector<Vertex>{2, 1}, sub));
  CHECK(is_hamilton_cycle(cycle_graph(5), std::vector<Vertex>{0, 1, 2, 3, 4}));
  CHECK_FALSE(is_hamilton_cycle(path_graph(5), std::vector<Vertex>{0, 1, 2, 3, 4}));
}

TEST_CASE("enumeration counts") {
  CHECK(enumerate_hamilton_cycles(complete_graph(5)).cycles.size() == 12);
  CHECK(enumerate_hamilton_cycles(cycle_graph(7)).cycles.size() == 1);
  CHECK(enumerate_hamilton_cycles(petersen_graph()).cycles.empty());
  for (std::size_t n = 4; n <= 7; ++n) {
    std::size_t fact = 1;
    for (std::size_t i = 2; i < n; ++i) fact *= i;
    CHECK(enumerate_hamilton_cycles(complete_graph(n)).cycles.size() == fact / 2);
  }
}

TEST_CASE("enumeration is canonical, sorted and truncatable") {
  const auto all = enumerate_hamilton_cycles(complete_graph(6));
  for (std::size_t i = 0; i < all.cycles.size(); ++i) {
    const auto& o = all.cycles[i].order();
    CHECK(o.front() == 0);
    CHECK(o[1] < o.back());
    if (i > 0) CHECK(all.cycles[i - 1].order() < o);
  }
  const auto some = enumerate_hamilton_cycles(complete_graph(6), 5);
  CHECK(some.truncated);
  CHECK(some.cycles.size() == 5);
  CHECK_THROWS_AS(enumerate_hamilton_cycles(complete_graph(15)), LimitExceeded);
}

TEST_CASE("enumeration agrees with the permutation oracle") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    const Graph g = oracle::random_connected(rng, 8, 0.5);
    const auto ours = enumerate_hamilton_cycles(g);
    const auto theirs = oracle::hamilton_cycles(g);
    REQUIRE(ours.cycles.size() == theirs.size());
    for (std::size_t i = 0; i < theirs.size(); ++i) CHECK(ours.cycles[i].order() == theirs[i]);
  }
}

TEST_CASE("backtracking paths") {
  const PathSearch k5 = find_hamilton_path_backtracking(complete_graph(5), 0, 4, 1000);
  REQUIRE(k5.path);
  CHECK(oracle::is_path_through(complete_graph(5), k5.path->order, {0, 1, 2, 3, 4}, 0, 4));
  const PathSearch p3 = find_hamilton_path_backtracking(path_graph(3), 0, 2, 1000);
  REQUIRE(p3.path);
  CHECK(p3.path->order == std::vector<Vertex>{0, 1, 2});
  const PathSearch star = find_hamilton_path_backtracking(star_graph(3), 1, 2, 1000);
  CHECK_FALSE(star.path);
  CHECK(star.status == SearchStatus::proven_none);
}

TEST_CASE("backtracking reports budget exhaustion and components") {
  const PathSearch tiny = find_hamilton_path_backtracking(petersen_graph(), 0, 1, 3);
  CHECK(tiny.status == SearchStatus::budget_exhausted);
  const Graph split(4, {{0, 1}, {2, 3}});
  CHECK(find_hamilton_path_backtracking(split, 0, 3, 100).status == SearchStatus::different_components);
}

TEST_CASE("Posa paths") {
  const PathSearch k9 = find_hamilton_path_posa(complete_graph(9), 0, 8, 1, 1000);
  REQUIRE(k9.path);
  CHECK(is_hamilton_path(complete_graph(9), k9.path->order));
  CHECK(k9.path->order.front() == 0);
  CHECK(k9.path->order.back() == 8);

  const Graph split(4, {{0, 1}, {2, 3}});
  const PathSearch none = find_hamilton_path_posa(split, 0, 3, 1, 100);
  CHECK_FALSE(none.path);
  CHECK(std::string(to_string(none.status)) == "endpoints in different components");
}

TEST_CASE("Posa on G(101, 5 ln n / n)") {
  const std::size_t n = 101;
  const Graph g = gnp_generate({n, 5 * std::log(101.0) / 101, 6});
  std::mt19937_64 rng(6);
  for (int t = 0; t < 5; ++t) {
    const Vertex x = rng() % n;
    Vertex y = rng() % n;
    if (y == x) y = (x + 1) % n;
    const PathSearch s = find_hamilton_path_posa(g, x, y, t + 1, 200000);
    REQUIRE(s.path);
    std::vector<Vertex> all(n);
    for (Vertex v = 0; v < n; ++v) all[v] = v;
    CHECK(oracle::is_path_through(g, s.path->order, all, x, y));
  }
}

TEST_CASE("Hamilton cycles") {
  const CycleSearch k5 = find_hamilton_cycle(complete_graph(5), 1);
  REQUIRE(k5.cycle);
  CHECK(k5.cycle->edges().weight() == 5);
  const CycleSearch tree = find_hamilton_cycle(star_graph(4), 1);
  CHECK_FALSE(tree.cycle);
  CHECK(tree.status == SearchStatus::proven_none);
  const CycleSearch c9 = find_hamilton_cycle(cycle_graph(9), 1);
  REQUIRE(c9.cycle);
  CHECK(c9.cycle->edges() == cycle_graph(9).all_edges());
  const CycleSearch pet = find_hamilton_cycle(petersen_graph(), 1);
  CHECK(pet.status == SearchStatus::proven_none);

  HamiltonOptions posa;
  posa.strategy = HamiltonStrategy::posa;
  const CycleSearch k9 = find_hamilton_cycle(complete_graph(9), 2, posa);
  REQUIRE(k9.cycle);
  CHECK(is_hamilton_cycle(complete_graph(9), k9.cycle->order()));
}

TEST_CASE("vertex sequences round trip") {
  std::ostringstream out;
  format_vertex_sequence(std::vector<Vertex>{4, 0, 12}, out);
  CHECK(out.str() == "4 0 12\n");
  CHECK(parse_vertex_sequence("4 0 12") == std::vector<Vertex>{4, 0, 12});
  CHECK_THROWS_AS(parse_vertex_sequence("4 a", 3), ParseError);
}

}  // TEST_SUITE
