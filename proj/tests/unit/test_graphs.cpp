#include <set>

#include "doctest.h"
#include "softtabu/errors.hpp"
#include "softtabu/graph.hpp"
#include "softtabu/rng.hpp"

using namespace softtabu;

TEST_CASE("ER with p = 1 is complete") {
  GenSpec s;
  s.n = 3;
  s.param = 1.0;
  s.weights = WeightScheme::Unit;
  for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
    s.seed = seed;
    const Graph g = generate(s);
    CHECK(g.num_vertices() == 3);
    REQUIRE(g.num_edges() == 3);
    for (const auto& e : g.edges()) CHECK(e.w == 1.0);
  }
}

TEST_CASE("BA with m = n - 1 is complete") {
  GenSpec s;
  s.family = GraphFamily::BA;
  s.n = 5;
  s.param = 4;
  s.seed = 3;
  const Graph g = generate(s);
  CHECK(g.num_vertices() == 5);
  CHECK(g.num_edges() == 10);
}

TEST_CASE("BA attaches m edges per new vertex") {
  GenSpec s;
  s.family = GraphFamily::BA;
  s.n = 60;
  s.param = 3;
  s.weights = WeightScheme::Unit;
  s.seed = 11;
  const Graph g = generate(s);
  // Seed clique on m vertices, then m edges for each later vertex.
  CHECK(g.num_edges() == 3 + (60 - 3) * 3);
  for (Vertex v = 0; v < 60; ++v) CHECK(g.degree(v) >= 2);
}

TEST_CASE("generation is deterministic in the seed") {
  GenSpec s;
  s.n = 200;
  s.param = 0.15;
  s.seed = 7;
  const Graph a = generate(s);
  const Graph b = generate(s);
  CHECK(a.num_edges() == b.num_edges());
  CHECK(save_gset(a) == save_gset(b));
  s.seed = 8;
  CHECK(save_gset(generate(s)) != save_gset(a));
}

TEST_CASE("signed weights are +-1 with both signs present") {
  GenSpec s;
  s.n = 100;
  s.seed = 5;
  const Graph g = generate(s);
  std::set<double> seen;
  for (const auto& e : g.edges()) seen.insert(e.w);
  CHECK(seen == std::set<double>{-1.0, 1.0});
  // Edge density stays within a loose band around p.
  const double density = static_cast<double>(g.num_edges()) / (100.0 * 99.0 / 2.0);
  CHECK(density == doctest::Approx(0.15).epsilon(0.2));
}

TEST_CASE("generator parameter validation") {
  GenSpec s;
  s.param = 0.0;
  CHECK_THROWS_AS(generate(s), ValidationError);
  s.param = 1.5;
  CHECK_THROWS_AS(generate(s), ValidationError);
  s.family = GraphFamily::BA;
  s.n = 5;
  s.param = 5;
  CHECK_THROWS_AS(generate(s), ValidationError);
  s.param = 2.5;
  CHECK_THROWS_AS(generate(s), ValidationError);
  CHECK(parse_graph_family("er") == GraphFamily::ER);
  CHECK(parse_weight_scheme("signed_unit") == WeightScheme::SignedUnit);
  CHECK_THROWS_AS(parse_graph_family("ws"), ValidationError);
}

TEST_CASE("graph construction rejects bad edges") {
  CHECK_THROWS_AS(Graph(2, {{0, 2, 1.0}}), ValidationError);
  CHECK_THROWS_AS(Graph(2, {{1, 1, 1.0}}), ValidationError);
  CHECK_THROWS_AS(Graph(3, {{0, 1, 1.0}, {1, 0, 2.0}}), ValidationError);
}

TEST_CASE("adjacency mirrors the edge list") {
  const Graph g(4, {{0, 1, 2.0}, {1, 2, -1.0}, {0, 3, 0.5}});
  CHECK(g.degree(0) == 2);
  CHECK(g.degree(1) == 2);
  CHECK(g.degree(3) == 1);
  CHECK(g.total_abs_weight() == 3.5);
  double sum = 0.0;
  for (const auto& nb : g.neighbors(1)) sum += nb.weight;
  CHECK(sum == 1.0);
}

TEST_CASE("GSET parse") {
  const Graph g = load_gset(std::string_view("3 2\n1 2 1\n2 3 -1\n"));
  CHECK(g.num_vertices() == 3);
  REQUIRE(g.num_edges() == 2);
  CHECK(g.edges()[0].u == 0);
  CHECK(g.edges()[0].v == 1);
  CHECK(g.edges()[0].w == 1.0);
  CHECK(g.edges()[1].u == 1);
  CHECK(g.edges()[1].v == 2);
  CHECK(g.edges()[1].w == -1.0);
}

TEST_CASE("GSET parse errors") {
  CHECK_THROWS_AS(load_gset(std::string_view("2 1\n1 3 1\n")), ParseError);
  CHECK_THROWS_AS(load_gset(std::string_view("")), ParseError);
  CHECK_THROWS_AS(load_gset(std::string_view("x 1\n")), ParseError);
  CHECK_THROWS_AS(load_gset(std::string_view("3 2\n1 2 1\n")), ParseError);
  CHECK_THROWS_AS(load_gset(std::string_view("3 1\n1 2 1\n2 3 1\n")), ParseError);
  CHECK_THROWS_AS(load_gset(std::string_view("3 1\n2 2 1\n")), ParseError);
  CHECK_THROWS_AS(load_gset(std::string_view("3 2\n1 2 1\n2 1 1\n")), ParseError);
  try {
    load_gset(std::string_view("2 1\n1 3 1\n"));
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(load_gset_file("/nonexistent/graph.txt"), IoError);
}

TEST_CASE("GSET save") {
  CHECK(save_gset(Graph(0, {})) == "0 0\n");
  const std::string tri = save_gset(Graph(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}}));
  CHECK(tri.rfind("3 3\n", 0) == 0);
  CHECK(std::count(tri.begin(), tri.end(), '\n') == 4);
}

TEST_CASE("GSET round trip on random graphs") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GenSpec s;
    s.n = 50;
    s.seed = seed;
    const Graph g = generate(s);
    const Graph h = load_gset(save_gset(g));
    REQUIRE(h.num_vertices() == g.num_vertices());
    REQUIRE(h.num_edges() == g.num_edges());
    for (std::size_t i = 0; i < g.num_edges(); ++i) {
      CHECK(h.edges()[i].u == g.edges()[i].u);
      CHECK(h.edges()[i].v == g.edges()[i].v);
      CHECK(h.edges()[i].w == g.edges()[i].w);
    }
    CHECK(save_gset(h) == save_gset(g));
  }
}

TEST_CASE("derived seeds separate named streams") {
  CHECK(derive_seed(1, "a") == derive_seed(1, "a"));
  CHECK(derive_seed(1, "a") != derive_seed(1, "b"));
  CHECK(derive_seed(1, "a", 0) != derive_seed(1, "a", 1));
  CHECK(derive_seed(1, "a", 0, 1) != derive_seed(1, "a", 1, 0));
  CHECK(derive_seed(1, "a") != derive_seed(2, "a"));
}
