#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cyclespan/errors.hpp"
#include "cyclespan/graph.hpp"

using namespace cyclespan;

TEST_SUITE("graph") {

TEST_CASE("edges are canonical and indexed lexicographically") {
  const Graph g(4, {{2, 1}, {0, 3}, {1, 0}});
  REQUIRE(g.edge_count() == 3);
  CHECK(g.edge(0) == Edge{0, 1});
  CHECK(g.edge(1) == Edge{0, 3});
  CHECK(g.edge(2) == Edge{1, 2});
  CHECK(g.edge_id(2, 1) == 2);
  CHECK_FALSE(g.edge_id(2, 3).has_value());
  CHECK(g.degree(1) == 2);
}

TEST_CASE("bad edges are rejected") {
  CHECK_THROWS_AS(Graph(3, {{1, 1}}), InvalidInput);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), InvalidInput);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), InvalidInput);
}

TEST_CASE("gnp endpoints and determinism") {
  CHECK(gnp_generate({5, 1.0, 3}) == complete_graph(5));
  CHECK(gnp_generate({5, 0.0, 3}).edge_count() == 0);
  CHECK(gnp_generate({40, 0.3, 11}) == gnp_generate({40, 0.3, 11}));
  CHECK_FALSE(gnp_generate({40, 0.3, 11}) == gnp_generate({40, 0.3, 12}));
  CHECK_THROWS_AS(gnp_generate({5, 1.5, 1}), InvalidInput);
}

TEST_CASE("gnp edge count is near its mean") {
  const std::size_t n = 201;
  const double p = 5 * std::log(201.0) / 201;
  const double pairs = n * (n - 1) / 2.0;
  const double mean = p * pairs, sd = std::sqrt(pairs * p * (1 - p));
  const Graph g = gnp_generate({n, p, 1});
  CHECK(std::abs(static_cast<double>(g.edge_count()) - mean) <= 4 * sd);
}

TEST_CASE("circulants") {
  const std::vector<std::size_t> one{1}, two{1, 2};
  CHECK(circulant(7, one) == cycle_graph(7));
  CHECK(circulant(5, two) == complete_graph(5));
  const Graph c9 = circulant(9, two);
  CHECK(c9.edge_count() == 18);
  CHECK(c9.min_degree() == 4);
  CHECK(c9.max_degree() == 4);
  const std::vector<std::size_t> bad{5};
  CHECK_THROWS_AS(circulant(9, bad), InvalidInput);
}

TEST_CASE("named graphs") {
  const Graph pet = petersen_graph();
  CHECK(pet.vertex_count() == 10);
  CHECK(pet.edge_count() == 15);
  CHECK(pet.min_degree() == 3);
  CHECK(pet.max_degree() == 3);
  CHECK(star_graph(3).edge_count() == 3);
  CHECK(path_graph(7).edge_count() == 6);
}

TEST_CASE("densify and the random process reach their degree targets") {
  const Graph g = densify_min_degree(gnp_generate({21, 0.6, 2}), 13, 2);
  CHECK(g.min_degree() >= 13);
  const Graph h = random_process_until_min_degree(31, 2, 4);
  CHECK(h.min_degree() == 2);
  CHECK(h == random_process_until_min_degree(31, 2, 4));
}

TEST_CASE("components, bipartiteness and cuts") {
  const Graph g(6, {{0, 1}, {1, 2}, {3, 4}});
  CHECK(g.component_count() == 3);
  CHECK_FALSE(g.connected());
  CHECK(g.is_bipartite());
  CHECK_FALSE(complete_graph(3).is_bipartite());
  const std::vector<std::uint8_t> side{1, 0, 0, 0, 0, 0};
  CHECK(g.cut(side) == g.star(0));
}

TEST_CASE("induced and edge subgraphs") {
  const Graph k5 = complete_graph(5);
  const std::vector<Vertex> keep{1, 3, 4};
  const InducedSubgraph sub = induced_subgraph(k5, keep);
  CHECK(sub.graph == complete_graph(3));
  CHECK(sub.original == keep);
  CHECK(sub.local[3] == 1);
  CHECK(sub.local[0] == -1);
  const Graph e = edge_subgraph(k5, k5.star(0));
  CHECK(e.edge_count() == 4);
  CHECK(e.vertex_count() == 5);
}

TEST_CASE("reading a triangle") {
  std::istringstream in("# comment\n3 3\n0 1\n0 2\n1 2\n");
  CHECK(parse_graph(in) == complete_graph(3));
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      parse_graph(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("2 1\n1 1\n") == 2);
  CHECK(line_of("3 2\n0 1\n0 1\n") == 3);
  CHECK(line_of("3 1\n0 5\n") == 2);
  CHECK(line_of("3 1\n0 x\n") == 2);
  CHECK(line_of("3 2\n0 1\n") != 0);
}

TEST_CASE("write then read is the identity and writes are canonical") {
  const Graph g = gnp_generate({51, 0.2, 8});
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = dir / "cyclespan_graph_a.txt", b = dir / "cyclespan_graph_b.txt";
  write_graph(g, a);
  const Graph back = read_graph(a);
  CHECK(back == g);
  write_graph(back, b);
  std::ifstream fa(a), fb(b);
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  CHECK(sa.str() == sb.str());
  std::filesystem::remove(a);
  std::filesystem::remove(b);
  CHECK_THROWS_AS(read_graph(dir / "cyclespan_no_such_file.txt"), IoError);
}

TEST_CASE("edge lists") {
  const Graph k4 = complete_graph(4);
  std::istringstream in("2 1\n0 3\n");
  const EdgeVector r = parse_edge_list(k4, in);
  CHECK(r.weight() == 2);
  CHECK(r.test(*k4.edge_id(1, 2)));
  std::ostringstream out;
  format_edge_list(k4, r, out);
  CHECK(out.str() == "0 3\n1 2\n");
  std::istringstream missing("0 9\n");
  CHECK_THROWS_AS(parse_edge_list(k4, missing), ParseError);
}

}  // TEST_SUITE
