#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "softtabu/errors.hpp"
#include "softtabu/maxcut_search.hpp"

using namespace softtabu;

namespace {

Graph triangle() { return Graph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}); }

Graph random_graph(std::size_t n, std::uint64_t seed) {
  GenSpec s;
  s.n = n;
  s.param = 0.3;
  s.seed = seed;
  return generate(s);
}

}  // namespace

TEST_CASE("MCA on a triangle from an all-same start") {
  const auto r = mca(triangle(), {0, 0, 0});
  CHECK(r.steps == 1);
  CHECK(r.value == 2);
}

TEST_CASE("MCA at a local optimum takes no step") {
  const auto r = mca(triangle(), {1, 0, 0});
  CHECK(r.steps == 0);
  CHECK(r.value == 2);
  CHECK(r.side == Side{1, 0, 0});
}

TEST_CASE("MCA ends at a local optimum and never decreases") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = random_graph(40, seed);
    Rng rng(seed);
    const Side start = random_bits(40, rng);
    const auto r = mca(g, start, TieBreak::Random, &rng);
    CHECK(r.value >= oracle::cut_value(g, start));
    CHECK(r.value == oracle::cut_value(g, r.side));
    for (Vertex v = 0; v < 40; ++v) CHECK(oracle::flip_gain(g, r.side, v) <= 0);
  }
}

TEST_CASE("random tie-break spreads over tied maxima") {
  std::set<std::size_t> picked;
  Rng rng(1);
  const std::vector<double> values{1.0, 3.0, 3.0, 3.0};
  for (int i = 0; i < 200; ++i) picked.insert(argmax_index(values, TieBreak::Random, &rng));
  CHECK(picked == std::set<std::size_t>{1, 2, 3});
  CHECK(argmax_index(values, TieBreak::LowestIndex, nullptr) == 1);
  CHECK(argmax_index(values, TieBreak::LowestIndex, nullptr, [](std::size_t) { return false; }) ==
        values.size());
}

TEST_CASE("tabu on a single edge alternates") {
  TabuConfig cfg;
  cfg.tenure = 1;
  cfg.max_steps = 4;
  const auto r = tabu_search(Graph(2, {{0, 1, 1}}), {0, 0}, cfg);
  REQUIRE(r.trajectory.size() == 4);
  CHECK(r.value == 1);
  for (std::size_t t = 1; t < 4; ++t) CHECK(r.trajectory[t].vertex != r.trajectory[t - 1].vertex);
}

TEST_CASE("tenure >= n without aspiration flips n distinct vertices first") {
  const Graph g = random_graph(15, 4);
  TabuConfig cfg;
  cfg.tenure = 15;
  cfg.max_steps = 15;
  cfg.aspiration = false;
  Rng rng(4);
  const auto r = tabu_search(g, random_bits(15, rng), cfg);
  std::set<Vertex> seen;
  for (const auto& s : r.trajectory) seen.insert(s.vertex);
  CHECK(seen.size() == 15);
}

TEST_CASE("tabu obeys its admissibility rule") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t n = 30;
    const Graph g = random_graph(n, seed);
    TabuConfig cfg;
    cfg.tenure = 7;
    cfg.max_steps = 120;
    cfg.aspiration = seed % 2 == 0;
    Rng rng(seed);
    Side side = random_bits(n, rng);
    const auto r = tabu_search(g, side, cfg);
    REQUIRE(r.trajectory.size() == 120);

    // Replay with the oracle and check every choice.
    std::vector<std::int64_t> last(n, -1000000);
    double best = oracle::cut_value(g, side);
    for (std::int64_t t = 0; t < 120; ++t) {
      std::vector<double> gains(n);
      for (std::size_t v = 0; v < n; ++v) gains[v] = oracle::flip_gain(g, side, v);
      const double current = oracle::cut_value(g, side);
      int expected = -1;
      for (std::size_t v = 0; v < n; ++v) {
        const bool tabu = t - last[v] <= cfg.tenure;
        const bool ok = !tabu || (cfg.aspiration && current + gains[v] > best);
        if (ok && (expected < 0 || gains[v] > gains[static_cast<std::size_t>(expected)])) {
          expected = static_cast<int>(v);
        }
      }
      if (expected < 0) {
        expected = 0;
        for (std::size_t v = 1; v < n; ++v) {
          if (gains[v] > gains[static_cast<std::size_t>(expected)]) expected = static_cast<int>(v);
        }
      }
      const auto& rec = r.trajectory[static_cast<std::size_t>(t)];
      REQUIRE(rec.vertex == static_cast<Vertex>(expected));
      CHECK(rec.gain == gains[rec.vertex]);
      side[rec.vertex] ^= 1U;
      last[rec.vertex] = t;
      CHECK(rec.cut_value == oracle::cut_value(g, side));
      CHECK(rec.positive_gain == (rec.gain > 0));
      best = std::max(best, rec.cut_value);
    }
    CHECK(r.value == best);
    CHECK(oracle::cut_value(g, r.side) == best);
  }
}

TEST_CASE("step records flag greedy choices") {
  const Graph g = triangle();
  CutState st(g, {0, 0, 0});
  CHECK(make_step_record(st, 0).is_greedy);
  st.flip(0);
  const auto rec = make_step_record(st, 0);
  CHECK_FALSE(rec.is_greedy);
  CHECK(rec.gain == -2);
  CHECK(rec.cut_value == 0);
}

TEST_CASE("tabu configuration validation") {
  TabuConfig cfg;
  cfg.tenure = 0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg.tenure = 1;
  cfg.max_steps = 0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  CHECK(parse_tie_break("random") == TieBreak::Random);
  CHECK(parse_tie_break("lowest_index") == TieBreak::LowestIndex);
  CHECK_THROWS_AS(parse_tie_break("highest"), ValidationError);
}

TEST_CASE("tabu matches brute force on small graphs") {
  int matched = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 6 + seed % 7;
    const Graph g = random_graph(n, seed + 100);
    TabuConfig cfg;
    cfg.max_steps = static_cast<std::int64_t>(2 * n);
    double best = 0.0;
    for (std::uint64_t e = 0; e < 50; ++e) {
      Rng rng(derive_seed(seed, "start", e));
      best = std::max(best, tabu_search(g, random_bits(n, rng), cfg, nullptr, false).value);
    }
    matched += best == oracle::max_cut(g) ? 1 : 0;
  }
  CHECK(matched >= 19);
}
