#include "doctest.h"
#include "oracles.hpp"
#include "softtabu/cut_state.hpp"
#include "softtabu/errors.hpp"
#include "softtabu/rng.hpp"

using namespace softtabu;

namespace {

Graph single_edge(double w) { return Graph(2, {{0, 1, w}}); }

Graph random_graph(std::size_t n, std::uint64_t seed, double p = 0.15) {
  GenSpec s;
  s.n = n;
  s.param = p;
  s.seed = seed;
  return generate(s);
}

}  // namespace

TEST_CASE("single edge, same side") {
  const Graph g = single_edge(5);
  CutState st(g, {0, 0});
  CHECK(st.cut_value() == 0);
  CHECK(st.gain(0) == 5);
  CHECK(st.gain(1) == 5);
}

TEST_CASE("single edge, opposite sides") {
  const Graph g = single_edge(5);
  CutState st(g, {0, 1});
  CHECK(st.cut_value() == 5);
  CHECK(st.gain(0) == -5);
  CHECK(st.gain(1) == -5);
}

TEST_CASE("single edge flip") {
  const Graph g = single_edge(5);
  CutState st(g, {0, 0});
  CHECK(st.flip(0) == 5);
  CHECK(st.cut_value() == 5);
  CHECK(st.gain(0) == -5);
  CHECK(st.gain(1) == -5);
  CHECK(st.last_flip(0) == 0);
  CHECK(st.last_flip(1) == CutState::kNeverFlipped);
  CHECK(st.step() == 1);
  CHECK(st.best_value() == 5);
}

TEST_CASE("state validation and side normalisation") {
  const Graph g = single_edge(1);
  CHECK_THROWS_AS(CutState(g, {0}), ValidationError);
  CHECK(CutState(g, {0, 2}).side() == Side{0, 1});
}

TEST_CASE("initial gains match the oracle") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = random_graph(50, seed);
    Rng rng(seed);
    const Side side = random_bits(50, rng);
    CutState st(g, side);
    CHECK(st.cut_value() == oracle::cut_value(g, side));
    for (Vertex v = 0; v < 50; ++v) CHECK(st.gain(v) == oracle::flip_gain(g, side, v));
  }
}

TEST_CASE("double flip restores the state") {
  const Graph g = random_graph(40, 3, 0.3);
  Rng rng(3);
  CutState st(g, random_bits(40, rng));
  for (int trial = 0; trial < 50; ++trial) {
    const auto v = static_cast<Vertex>(uniform_index(rng, 40));
    const double cut = st.cut_value();
    const auto gains = st.gains();
    const auto fp = st.fingerprint();
    st.flip(v);
    st.flip(v);
    CHECK(st.cut_value() == cut);
    CHECK(st.gains() == gains);
    CHECK(st.fingerprint() == fp);
  }
}

TEST_CASE("1000 random flips track the scratch recomputation") {
  const Graph g = random_graph(100, 17);
  Rng rng(17);
  CutState st(g, random_bits(100, rng));
  double best = st.cut_value();
  for (int step = 0; step < 1000; ++step) {
    const auto v = static_cast<Vertex>(uniform_index(rng, 100));
    const double before = st.cut_value();
    const double expected_gain = st.gain(v);
    CHECK(st.flip(v) == expected_gain);
    CHECK(st.cut_value() == before + expected_gain);
    CHECK(st.cut_value() == evaluate_cut(g, st.side()));
    CHECK(st.gains() == evaluate_gains(g, st.side()));
    best = std::max(best, st.cut_value());
    CHECK(st.best_value() == best);
    CHECK(evaluate_cut(g, st.best_side()) == best);
  }
}

TEST_CASE("scratch evaluators agree with the oracle") {
  const Graph g = random_graph(30, 2, 0.4);
  Rng rng(2);
  const Side side = random_bits(30, rng);
  CHECK(evaluate_cut(g, side) == oracle::cut_value(g, side));
  const auto gains = evaluate_gains(g, side);
  for (Vertex v = 0; v < 30; ++v) CHECK(gains[v] == oracle::flip_gain(g, side, v));
}

TEST_CASE("local optimum and fingerprints") {
  const Graph g(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
  CutState st(g, {0, 0, 0});
  CHECK_FALSE(st.is_local_optimum());
  CHECK(st.max_gain() == 2);
  st.flip(0);
  CHECK(st.is_local_optimum());
  CHECK(fingerprint_bits(Side{1, 0, 0}) == st.fingerprint());
  CHECK(fingerprint_bits(Side{1, 0, 0}) != fingerprint_bits(Side{0, 1, 0}));
  CHECK(fingerprint_bits(Side{0}) != fingerprint_bits(Side{0, 0}));
}

TEST_CASE("brute force on small hand cases") {
  CHECK(brute_force_optimum(Graph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}})).value == 2);
  std::vector<Edge> k4;
  for (Vertex u = 0; u < 4; ++u) {
    for (Vertex v = u + 1; v < 4; ++v) k4.push_back({u, v, 1});
  }
  CHECK(brute_force_optimum(Graph(4, k4)).value == 4);
  const auto path = brute_force_optimum(Graph(3, {{0, 1, 1}, {1, 2, -1}}));
  CHECK(path.value == 1);
  CHECK(brute_force_optimum(Graph(0, {})).value == 0);
  CHECK(brute_force_optimum(Graph(1, {})).value == 0);
}

TEST_CASE("brute force agrees with enumeration") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 2 + seed % 11;
    const Graph g = random_graph(n, seed, 0.5);
    const auto sol = brute_force_optimum(g);
    CHECK(sol.value == oracle::max_cut(g));
    CHECK(oracle::cut_value(g, sol.side) == sol.value);
  }
}

TEST_CASE("brute force refuses large graphs") {
  CHECK_THROWS_AS(brute_force_optimum(Graph(kBruteForceMaxVertices + 1, {})), ValidationError);
}
