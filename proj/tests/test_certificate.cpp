#include <doctest.h>

#include <random>
#include <sstream>

#include "cyclespan/certificate.hpp"
#include "cyclespan/errors.hpp"
#include "oracles.hpp"

using namespace cyclespan;

TEST_SUITE("certificate") {

TEST_CASE("c1 fails on the whole edge set") {
  const Graph k5 = complete_graph(5);
  const Certificate c = verify_certificate(k5, k5.all_edges());
  CHECK_FALSE(c.c1_pass);
  CHECK_FALSE(c.valid());
}

TEST_CASE("a star cut fails the not-a-cut clause") {
  const Graph k5 = complete_graph(5);
  const Certificate c = verify_certificate(k5, k5.star(0));
  CHECK(c.c1_pass);
  CHECK_FALSE(c.c3_not_cut);
  CHECK_FALSE(c.c3_pass());
  CHECK(c.failure() == "r is a cut");
}

TEST_CASE("exhaustive c3 matches a slow scan") {
  const Graph g = gnp_generate({12, 0.5, 1});
  std::mt19937_64 rng(1);
  int violations = 0;
  for (int t = 0; t < 20; ++t) {
    const EdgeVector r = oracle::random_vector(rng, g.edge_count());
    const Certificate c = verify_certificate(g, r);
    CHECK(c.c3_mode == CheckMode::exhaustive);
    const auto slow = oracle::half_violation(g, r);
    CHECK(c.c3_half_pass == !slow.has_value());
    CHECK(c.c3_not_cut == !oracle::is_cut(g, r));
    if (!c.c3_half_pass) {
      ++violations;
      std::vector<std::uint8_t> side(g.vertex_count(), 0);
      for (Vertex v : c.c3_witness) side[v] = 1;
      const EdgeVector cut = g.cut(side);
      CHECK(2 * common_weight(cut, r) < cut.weight());
    }
  }
  CHECK(violations > 0);
}

TEST_CASE("c2 against all Hamilton cycles") {
  const Graph k5 = complete_graph(5);
  // The orthogonal complement of every Hamilton cycle is the cut space for
  // K5, so any cycle-space vector is met oddly by some Hamilton cycle.
  const EdgeVector tri = k5.path_edges(std::vector<Vertex>{0, 1, 2}, true);
  const Certificate c = verify_certificate(k5, tri);
  CHECK(c.c2_status == C2Status::verified_exhaustively);
  CHECK_FALSE(c.c2_pass);
  REQUIRE(c.c2_witness.size() == 5);
  CHECK(dot(k5.path_edges(c.c2_witness, true), tri));

  // Without enumeration c2 is not checked, or checked against a sample.
  VerifyOptions off;
  off.c2_enumeration_limit = 0;
  CHECK(verify_certificate(k5, tri, off).c2_status == C2Status::not_checked);
  const std::vector<HamiltonCycle> sample{HamiltonCycle::from_order(k5, {0, 1, 2, 3, 4})};
  const Certificate s = verify_certificate(k5, tri, off, sample);
  CHECK(s.c2_status == C2Status::verified_on_sample);
  CHECK(s.c2_pass == !dot(sample[0].edges(), tri));
}

TEST_CASE("c2 holds for r orthogonal to every Hamilton cycle") {
  // K4 is the even-order obstruction: its Hamilton cycles span rank 2 of 3.
  const Graph k4 = complete_graph(4);
  Gf2Basis spanned(k4.edge_count());
  for (const auto& h : enumerate_hamilton_cycles(k4).cycles) spanned.insert(h.edges());
  const auto r = next_candidate(k4, spanned);
  REQUIRE(r);
  const Certificate c = verify_certificate(k4, *r);
  CHECK(c.c2_status == C2Status::verified_exhaustively);
  CHECK(c.c2_pass);
}

TEST_CASE("sampled c3 checks every star and finds planted violations") {
  const Graph g = gnp_generate({40, 0.3, 3});
  VerifyOptions opt;
  opt.c3_mode = CheckMode::sampled;
  opt.c3_samples = 100;
  const EdgeVector all_but_star = g.all_edges() ^ g.star(7);
  const Certificate c = verify_certificate(g, all_but_star, opt);
  CHECK(c.c3_mode == CheckMode::sampled);
  CHECK_FALSE(c.c3_half_pass);
  CHECK(c.c3_witness == std::vector<Vertex>{7});
  const Certificate ok = verify_certificate(g, g.all_edges(), opt);
  CHECK(ok.c3_half_pass);
  CHECK(ok.c3_partitions_checked == 40 + 100);
}

TEST_CASE("next_candidate") {
  const Graph c7 = cycle_graph(7);
  Gf2Basis one(c7.edge_count());
  one.insert(c7.all_edges());
  CHECK_FALSE(next_candidate(c7, one).has_value());

  const Graph k5 = complete_graph(5);
  const Gf2Basis empty(k5.edge_count());
  const auto r = next_candidate(k5, empty);
  REQUIRE(r);
  CHECK_FALSE(cut_space_basis(k5).in_span(*r));
  CHECK_FALSE(next_candidate(k5, cycle_space_basis(k5)).has_value());

  Gf2Basis bad(k5.edge_count());
  bad.insert(k5.star(0));
  CHECK_THROWS_AS(next_candidate(k5, bad), InvalidInput);
}

TEST_CASE("next_candidate is orthogonal to spanned and not a cut") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    const Graph g = oracle::random_connected(rng, 9, 0.45);
    const Gf2Basis cycles = cycle_space_basis(g);
    Gf2Basis spanned(g.edge_count());
    const std::size_t take = rng() % (cycles.rank() + 1);
    for (std::size_t i = 0; i < take; ++i) {
      EdgeVector combo(g.edge_count());
      for (const EdgeVector& b : cycles.vectors()) {
        if (rng() & 1U) combo ^= b;
      }
      spanned.insert(combo);
    }
    CHECK(spanned.orthogonal_complement().rank() == g.edge_count() - spanned.rank());
    const auto r = next_candidate(g, spanned);
    if (spanned.rank() == cycles.rank()) {
      CHECK_FALSE(r);
      continue;
    }
    REQUIRE(r);
    for (const EdgeVector& b : spanned.vectors()) CHECK_FALSE(dot(*r, b));
    CHECK_FALSE(oracle::is_cut(g, *r));
  }
}

TEST_CASE("maximize on K5") {
  const Graph k5 = complete_graph(5);
  const EdgeVector r0 = cycle_space_basis(k5).vectors()[0];
  const Certificate c = maximize(k5, r0);
  CHECK(c.c1_pass);
  CHECK(c.c3_mode == CheckMode::exhaustive);
  CHECK(c.c3_partitions_checked == 16);
  CHECK(c.c3_pass());
  CHECK(c.r.weight() == oracle::coset_max(k5, r0));
  CHECK(c.provenance == "coset-maximized");
  CHECK_THROWS_AS(maximize(k5, k5.star(2)), InvalidInput);
}

TEST_CASE("maximize keeps the coset and never loses weight") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 25; ++t) {
    const Graph g = oracle::random_connected(rng, 11, 0.4);
    const EdgeVector r0 = oracle::random_vector(rng, g.edge_count());
    if (oracle::is_cut(g, r0)) continue;
    MaximizeOptions opt;
    if (t % 2) {
      opt.coset.strategy = CosetStrategy::local_search;
      opt.coset.restarts = 2;
    }
    const Certificate c = maximize(g, r0, opt);
    CHECK(c.r.weight() >= r0.weight());
    CHECK(oracle::is_cut(g, c.r ^ r0));
    CHECK(c.c3_not_cut);
  }
}

TEST_CASE("certificate text") {
  const Graph k5 = complete_graph(5);
  std::ostringstream out;
  format_certificate(k5, maximize(k5, cycle_space_basis(k5).vectors()[0]), out);
  const std::string text = out.str();
  CHECK(text.find("---\n") != std::string::npos);
  CHECK(text.find("c3_mode: exhaustive") != std::string::npos);
  CHECK(text.find("c2_status: verified-exhaustively") != std::string::npos);
}

}  // TEST_SUITE
