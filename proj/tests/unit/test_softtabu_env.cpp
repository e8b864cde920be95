#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "softtabu/errors.hpp"
#include "softtabu/maxcut_env.hpp"

using namespace softtabu;

namespace {

FeatureSpec unscaled() {
  FeatureSpec s;
  s.gain_scale = GainScale::None;
  s.time_scale = TimeScale::Raw;
  return s;
}

Graph random_graph(std::size_t n, std::uint64_t seed) {
  GenSpec s;
  s.n = n;
  s.param = 0.3;
  s.seed = seed;
  return generate(s);
}

bool oracle_local_optimum(const Graph& g, const Side& side) {
  for (std::size_t v = 0; v < side.size(); ++v) {
    if (oracle::flip_gain(g, side, v) > 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("observation of a fresh single-edge episode") {
  const Graph g(2, {{0, 1, 5}});
  FeatureSpec spec = unscaled();
  spec.never_flipped_value = 0.75;
  MaxcutEpisode ep(g, {0, 0}, 4, spec);
  const auto m = ep.observe();
  REQUIRE(m.rows() == 2);
  REQUIRE(m.cols() == 2);
  CHECK(m(0, 0) == 5);
  CHECK(m(0, 1) == 0.75);
  CHECK(m(1, 0) == 5);
  CHECK(m(1, 1) == 0.75);
}

TEST_CASE("raw time since flip") {
  const Graph g(2, {{0, 1, 5}});
  MaxcutEpisode ep(g, {0, 0}, 4, unscaled());
  ep.step(0);
  CHECK(ep.t() == 1);
  const auto m = ep.observe();
  CHECK(m(0, 1) == 1);
  CHECK(m(1, 1) == 1);  // never flipped
  CHECK(m(0, 0) == -5);
}

TEST_CASE("horizon-scaled time saturates at one") {
  const Graph g(3, {{0, 1, 1}, {1, 2, 1}});
  FeatureSpec spec;
  MaxcutEpisode ep(g, {0, 0, 0}, 4, spec);
  ep.step(0);
  ep.step(1);
  const auto m = ep.observe();
  CHECK(m(0, 1) == 0.5);   // 2 steps of a window of 4
  CHECK(m(1, 1) == 0.25);  // 1 step
  CHECK(m(2, 1) == 1.0);   // never flipped
  CHECK(time_feature(spec, 100, 0, 4) == 1.0);
}

TEST_CASE("gain scaling divides by the largest initial gain") {
  const Graph g(3, {{0, 1, 2}, {1, 2, -1}});
  MaxcutEpisode ep(g, {0, 0, 0}, 6);
  const auto m = ep.observe();
  // Initial gains: 2, 1, -1; divisor 2.
  CHECK(m(0, 0) == 1.0);
  CHECK(m(1, 0) == 0.5);
  CHECK(m(2, 0) == -0.5);
}

TEST_CASE("scaled and unscaled features pick the same greedy action") {
  const LinearQ q({1.0, 0.0}, 0.0);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Graph g = random_graph(25, seed);
    Rng rng(seed);
    const Side start = random_bits(25, rng);
    for (auto scale : {GainScale::MaxAbsGainAtInit, GainScale::GraphWeightSum}) {
      FeatureSpec scaled;
      scaled.gain_scale = scale;
      MaxcutEpisode a(g, start, 50, scaled);
      MaxcutEpisode b(g, start, 50, unscaled());
      CHECK(greedy_action(q, a.observe()) == greedy_action(q, b.observe()));
    }
  }
}

TEST_CASE("reward arithmetic") {
  CHECK(shaped_reward(10, 12, 4, false) == 0.0);
  CHECK(shaped_reward(13, 12, 4, false) == 0.25);
  CHECK(shaped_reward(12, 12, 4, true) == 0.25);
  CHECK(shaped_reward(13, 12, 4, true) == 0.5);
}

TEST_CASE("local-optimum bonus is paid once per state") {
  LocalOptimumMemory seen;
  CHECK(seen.remember(42));
  CHECK_FALSE(seen.remember(42));
  CHECK(seen.contains(42));
  CHECK(seen.size() == 1);
}

TEST_CASE("episode ends at the horizon") {
  const Graph g(2, {{0, 1, 1}});
  MaxcutEpisode ep(g, {0, 0}, 2);
  CHECK_FALSE(ep.step(0).done);
  CHECK(ep.step(1).done);
  CHECK(ep.done());
  CHECK_THROWS_AS(ep.step(0), ValidationError);
  MaxcutEpisode other(g, {0, 0}, 2);
  CHECK_THROWS_AS(other.step(2), ValidationError);
}

TEST_CASE("scripted single-edge reward stream") {
  const Graph g(2, {{0, 1, 1}});
  MaxcutEpisode ep(g, {0, 0}, 5);
  const std::size_t actions[] = {0, 0, 1, 1, 0};
  const double expected[] = {1.0, 0.0, 0.5, 0.0, 0.0};
  for (int i = 0; i < 5; ++i) {
    const auto s = ep.step(actions[i]);
    CHECK(s.reward == expected[i]);
    CHECK(s.done == (i == 4));
  }
  CHECK(ep.local_optima().size() == 2);
}

TEST_CASE("reward stream matches the definition on random trajectories") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 8;
    const Graph g = random_graph(n, seed);
    Rng rng(seed);
    Side side = random_bits(n, rng);
    MaxcutEpisode ep(g, side, 60);
    std::set<Side> seen;
    double best = oracle::cut_value(g, side);
    while (!ep.done()) {
      const auto v = uniform_index(rng, n);
      const double before_best = ep.f_best();
      const auto s = ep.step(v);
      CHECK(ep.f_best() >= before_best);
      side[v] ^= 1U;
      const double now = oracle::cut_value(g, side);
      double want = std::max((now - best) / n, 0.0);
      if (oracle_local_optimum(g, side) && seen.insert(side).second) want += 1.0 / n;
      best = std::max(best, now);
      CHECK(s.reward == doctest::Approx(want).epsilon(1e-15));
    }
    CHECK(ep.local_optima().size() == seen.size());
  }
}

TEST_CASE("zero training episodes return the zero model") {
  GenSpec dist;
  TrainConfig cfg;
  cfg.episodes = 0;
  CHECK(train_maxcut(dist, cfg) == LinearQ(2));
}

TEST_CASE("training is deterministic in the seed") {
  GenSpec dist;
  dist.n = 12;
  TrainConfig cfg;
  cfg.episodes = 40;
  cfg.batch_size = 8;
  cfg.seed = 9;
  const auto a = train_maxcut(dist, cfg);
  const auto b = train_maxcut(dist, cfg);
  CHECK(a == b);
  CHECK(a != LinearQ(2));
  std::int64_t calls = 0;
  train_maxcut(dist, cfg, {}, [&](const TrainingProgress& p) {
    CHECK(p.episode == calls++);
    CHECK(p.env_steps == 24 * calls);
  });
  CHECK(calls == 40);
}

TEST_CASE("single-edge evaluation finds the edge") {
  const Graph g(2, {{0, 1, 3}});
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto r = evaluate_maxcut(LinearQ({0.3, 0.9}, 0.1), g, 1, 2, seed);
    CHECK(r.best_value == 3);
    CHECK(r.trajectories.size() == 1);
  }
}

TEST_CASE("gain-only weights reproduce the argmax-gain agent") {
  const LinearQ greedy({1.0, 0.0}, 0.0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 16;
    const Graph g = random_graph(n, seed);
    const auto r = evaluate_maxcut(greedy, g, 3, 2, seed);
    REQUIRE(r.trajectories.size() == 3);
    double best = 0.0;
    for (std::int64_t e = 0; e < 3; ++e) {
      Side side = evaluation_start(n, seed, e);
      best = std::max(best, oracle::cut_value(g, side));
      const auto& traj = r.trajectories[static_cast<std::size_t>(e)];
      REQUIRE(traj.size() == 2 * n);
      for (const auto& rec : traj) {
        std::size_t pick = 0;
        double top = oracle::flip_gain(g, side, 0);
        for (std::size_t v = 1; v < n; ++v) {
          const double gv = oracle::flip_gain(g, side, v);
          if (gv > top) {
            top = gv;
            pick = v;
          }
        }
        CHECK(rec.vertex == pick);
        CHECK(rec.is_greedy);
        side[pick] ^= 1U;
        best = std::max(best, oracle::cut_value(g, side));
      }
    }
    CHECK(r.best_value == best);
  }
}
