#include <doctest.h>

#include <random>

#include "cyclespan/edgespace.hpp"
#include "cyclespan/errors.hpp"
#include "oracles.hpp"

using namespace cyclespan;

namespace {

EdgeVector ev(std::size_t m, std::initializer_list<std::size_t> idx) {
  std::vector<std::size_t> v(idx);
  return EdgeVector::from_indices(m, v);
}

}  // namespace

TEST_SUITE("edgespace") {

TEST_CASE("xor and dot on small vectors") {
  CHECK((ev(6, {0, 1}) ^ ev(6, {1, 2})) == ev(6, {0, 2}));
  const EdgeVector v = ev(6, {0, 3, 5});
  CHECK((v ^ v).none());
  CHECK((v ^ EdgeVector(6)) == v);

  CHECK(dot(ev(6, {0, 1}), ev(6, {1, 2})));
  CHECK_FALSE(dot(v, EdgeVector(6)));
  CHECK_FALSE(dot(ev(6, {0, 1}), ev(6, {0, 1, 5})));
}

TEST_CASE("mismatched lengths are rejected") {
  EdgeVector a(5), b(6);
  CHECK_THROWS_AS(a ^= b, DimensionError);
  CHECK_THROWS_AS((void)dot(a, b), DimensionError);
  Gf2Basis basis(5);
  CHECK_THROWS_AS(basis.insert(b), DimensionError);
}

TEST_CASE("weight, bits past the end and hex round trip") {
  EdgeVector v(130);
  for (std::size_t i : {0, 63, 64, 129}) v.set(i);
  CHECK(v.weight() == 4);
  CHECK(v.lowest() == 0);
  CHECK((v.words().back() >> 2) == 0);
  CHECK(EdgeVector::from_hex(v.to_hex()) == v);
  CHECK(v.to_hex().rfind("130:", 0) == 0);
  CHECK_THROWS_AS(EdgeVector::from_hex("3:0000000000000008"), InvalidInput);
}

TEST_CASE("insert keeps reduced echelon form") {
  Gf2Basis basis(5);
  CHECK(basis.insert(ev(5, {0})));
  CHECK(basis.rank() == 1);
  CHECK_FALSE(basis.insert(ev(5, {0})));
  CHECK(basis.rank() == 1);

  Gf2Basis b3(5);
  CHECK(b3.insert(ev(5, {0, 1})));
  CHECK(b3.insert(ev(5, {1, 2, 4})));
  CHECK(b3.insert(ev(5, {0, 3})));
  CHECK(b3.rank() == 3);
  CHECK_FALSE(b3.insert(ev(5, {0, 1}) ^ ev(5, {0, 3})));
  for (std::size_t i = 0; i < b3.rank(); ++i) {
    CHECK(b3.vectors()[i].lowest() == b3.pivots()[i]);
    for (std::size_t j = 0; j < b3.rank(); ++j) {
      if (i != j) CHECK_FALSE(b3.vectors()[j].test(b3.pivots()[i]));
    }
    if (i > 0) CHECK(b3.pivots()[i - 1] < b3.pivots()[i]);
  }
}

TEST_CASE("reduce and in_span") {
  Gf2Basis empty(4);
  CHECK(empty.reduce(ev(4, {1, 3})) == ev(4, {1, 3}));

  Gf2Basis b(3);
  b.insert(ev(3, {0, 1}));
  CHECK(b.reduce(ev(3, {0, 2})) == ev(3, {1, 2}));
  CHECK(b.in_span(ev(3, {0, 1})));
  CHECK(b.reduce(ev(3, {0, 1})).none());
  CHECK_FALSE(b.in_span(ev(3, {2})));
}

TEST_CASE("solve_combination") {
  Gf2Basis b(6);
  b.insert(ev(6, {0, 1}));
  b.insert(ev(6, {2, 3}));
  b.insert(ev(6, {4, 5}));
  CHECK(b.solve_combination(b.vectors()[1]) == std::vector<std::size_t>{1});
  CHECK(b.solve_combination(b.vectors()[0] ^ b.vectors()[2]) == std::vector<std::size_t>{0, 2});
  CHECK_FALSE(b.solve_combination(ev(6, {0})).has_value());
}

TEST_CASE("solve_inserted refers to the original vectors") {
  Gf2Basis b(4);
  const EdgeVector x = ev(4, {0, 1}), y = ev(4, {0, 2}), z = ev(4, {1, 3});
  b.insert(x);
  b.insert(y);
  b.insert(z);
  CHECK(b.solve_inserted(y ^ z) == std::vector<std::size_t>{1, 2});
  CHECK(b.solve_inserted(x) == std::vector<std::size_t>{0});
}

TEST_CASE("cycle space basis ranks") {
  CHECK(cycle_space_basis(complete_graph(5)).rank() == 6);
  CHECK(cycle_space_basis(path_graph(7)).rank() == 0);
  const Graph c7 = cycle_graph(7);
  const Gf2Basis cb = cycle_space_basis(c7);
  REQUIRE(cb.rank() == 1);
  CHECK(cb.vectors()[0] == c7.all_edges());
}

TEST_CASE("cut space basis ranks and orthogonality") {
  const Graph k5 = complete_graph(5);
  CHECK(cut_space_basis(k5).rank() == 4);
  const Graph edge(2, {{0, 1}});
  const Gf2Basis eb = cut_space_basis(edge);
  REQUIRE(eb.rank() == 1);
  CHECK(eb.vectors()[0] == edge.all_edges());
  const Gf2Basis cuts = cut_space_basis(k5), cycles = cycle_space_basis(k5);
  for (const EdgeVector& c : cuts.vectors()) {
    for (const EdgeVector& z : cycles.vectors()) CHECK_FALSE(dot(c, z));
  }
}

TEST_CASE("disconnected graphs are handled per component") {
  const Graph g(7, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  CHECK(cycle_space_basis(g).rank() == 2);
  CHECK(cut_space_basis(g).rank() == 7 - 3);
}

TEST_CASE("is_cut and is_in_cycle_space") {
  const Graph k5 = complete_graph(5);
  CHECK(is_cut(k5, k5.star(2)));
  CHECK(is_cut(k5, EdgeVector(10)));
  CHECK_FALSE(is_cut(k5, k5.path_edges(std::vector<Vertex>{0, 1, 2}, true)));
  CHECK(is_in_cycle_space(k5, k5.path_edges(std::vector<Vertex>{0, 1, 2}, true)));
  CHECK_FALSE(is_in_cycle_space(k5, ev(10, {0})));
  const CutTester tester(k5);
  CHECK(tester(k5.star(0) ^ k5.star(3)));
}

TEST_CASE("coset maximum on the triangle") {
  // Coset of {01}: {01}, {02}, {12}, {01,02,12}; the heaviest is the whole
  // triangle.
  const Graph tri = complete_graph(3);
  const EdgeVector r0 = ev(3, {0});
  CHECK(oracle::coset_max(tri, r0) == 3);
  const EdgeVector r = coset_max_weight(tri, r0);
  CHECK(r.weight() == 3);
  CHECK(is_cut(tri, r ^ r0));
}

TEST_CASE("coset maximum on K5 from a 5-cycle") {
  const Graph k5 = complete_graph(5);
  const EdgeVector c5 = k5.path_edges(std::vector<Vertex>{0, 1, 2, 3, 4}, true);
  CHECK(oracle::coset_max(k5, c5) == 7);
  const EdgeVector r = coset_max_weight(k5, c5, {CosetStrategy::exhaustive});
  CHECK(r.weight() == 7);
  CHECK(is_cut(k5, r ^ c5));
}

TEST_CASE("coset maximum returns r0 when already maximal") {
  const Graph k5 = complete_graph(5);
  const EdgeVector c5 = k5.path_edges(std::vector<Vertex>{0, 1, 2, 3, 4}, true);
  const EdgeVector top = coset_max_weight(k5, c5);
  CHECK(coset_max_weight(k5, top) == top);
}

TEST_CASE("coset maximum rejects cuts") {
  const Graph k5 = complete_graph(5);
  CHECK_THROWS_AS(coset_max_weight(k5, k5.star(1)), InvalidInput);
  CHECK_THROWS_AS(coset_max_weight(k5, EdgeVector(10)), InvalidInput);
}

TEST_CASE("local search stays in the coset and never loses weight") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const Graph g = oracle::random_connected(rng, 14, 0.4);
    EdgeVector r0 = oracle::random_vector(rng, g.edge_count());
    if (is_cut(g, r0)) continue;
    CosetOptions opt;
    opt.strategy = CosetStrategy::local_search;
    opt.restarts = 4;
    opt.seed = static_cast<std::uint64_t>(t);
    const EdgeVector r = coset_max_weight(g, r0, opt);
    CHECK(r.weight() >= r0.weight());
    CHECK(oracle::is_cut(g, r ^ r0));
    CHECK(r.weight() <= oracle::coset_max(g, r0));
  }
}

TEST_CASE("orthogonal complement") {
  const Graph k5 = complete_graph(5);
  const Gf2Basis cycles = cycle_space_basis(k5);
  const Gf2Basis perp = cycles.orthogonal_complement();
  CHECK(perp.rank() == 4);
  for (const EdgeVector& x : perp.vectors()) CHECK(is_cut(k5, x));
  for (std::size_t f : cycles.free_columns()) {
    const EdgeVector x = cycles.complement_vector(f);
    for (const EdgeVector& b : cycles.vectors()) CHECK_FALSE(dot(x, b));
  }
}

}  // TEST_SUITE
