#include "doctest.h"
#include "oracles.hpp"
#include "softtabu/cnf_generators.hpp"
#include "softtabu/errors.hpp"
#include "softtabu/sat_search.hpp"

using namespace softtabu;

namespace {

int scratch_score(const CnfFormula& f, const Assignment& a, std::size_t v) {
  auto unsat = [&](const Assignment& x) {
    int count = 0;
    for (const auto& c : f.clauses()) {
      bool ok = false;
      for (Literal l : c) ok = ok || literal_true(l, x);
      count += ok ? 0 : 1;
    }
    return count;
  };
  Assignment b = a;
  b[v] ^= 1U;
  return unsat(a) - unsat(b);
}

}  // namespace

TEST_CASE("walksat on a single clause needs at most one flip") {
  const CnfFormula f(2, {{1, 2}});
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto r = walksat(f, {}, seed);
    CHECK(r.solved);
    CHECK(r.steps <= 1);
    CHECK(satisfies(f, r.assignment));
  }
}

TEST_CASE("walksat on an already satisfied start takes no step") {
  const CnfFormula f(3, {{1, -1}, {2, -2, 3}});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto r = walksat(f, {}, seed);
    CHECK(r.solved);
    CHECK(r.steps == 0);
  }
}

TEST_CASE("walksat solves small satisfiable formulas and respects the cutoff") {
  const auto fs = gen_filtered(CnfDistribution::parse("rand3:20:85"), 20, 4);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    std::int64_t observed = 0;
    const auto r = walksat(fs[i], {0.5, 100000, true}, i,
                           [&](const SatState&, std::size_t) { ++observed; });
    CHECK(r.solved);
    CHECK(r.steps == observed);
    CHECK(satisfies(fs[i], r.assignment));
  }
  const CnfFormula unsat(1, {{1}, {-1}});
  const auto r = walksat(unsat, {0.5, 37, true}, 1);
  CHECK_FALSE(r.solved);
  CHECK(r.steps == 37);
}

TEST_CASE("walksat configuration validation") {
  WalksatConfig cfg;
  cfg.p = 1.5;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg.p = 0.5;
  cfg.max_steps = -1;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_CASE("SAT observation") {
  FeatureSpec spec;
  spec.gain_scale = GainScale::None;
  spec.time_scale = TimeScale::Raw;
  const CnfFormula f(2, {{1, 2}, {-1}});
  SatEpisode ep(f, {0, 0}, 10, spec);
  auto m = ep.observe();
  REQUIRE(m.rows() == 2);
  // x1 makes the first clause and breaks the second; x2 only makes.
  CHECK(m(0, 0) == 0);
  CHECK(m(1, 0) == 1);
  CHECK(m(0, 1) == 1.0);
  ep.step(1);
  CHECK(ep.done());
  m = ep.observe();
  CHECK(m(1, 1) == 1);
  CHECK(m(1, 0) == -1);
}

TEST_CASE("SAT episode rewards and termination") {
  const CnfFormula f(2, {{1, 2}});
  SatEpisode ep(f, {0, 0}, 5);
  CHECK_FALSE(ep.done());
  const auto s = ep.step(0);
  CHECK(s.done);
  CHECK(s.reward > 0);
  CHECK_THROWS_AS(ep.step(0), ValidationError);
}

TEST_CASE("scaled and unscaled SAT features pick the same greedy action") {
  const LinearQ q({1.0, 0.0}, 0.0);
  FeatureSpec raw;
  raw.gain_scale = GainScale::None;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto f = gen_rand3(30, 128, seed);
    const auto start = trial_start(30, seed, 0);
    SatEpisode a(f, start, 100);
    SatEpisode b(f, start, 100, raw);
    CHECK(greedy_action(q, a.observe()) == greedy_action(q, b.observe()));
  }
}

TEST_CASE("SoftTabu SAT trial records") {
  const auto f = gen_rand3(20, 85, 1);
  const LinearQ q({0.5, 1.0}, 0.0);
  const auto trials = softtabu_sat_solve(q, f, 25, 200, 7);
  CHECK(trials.size() == 25);
  for (const auto& t : trials) {
    CHECK(t.steps <= 200);
    CHECK((t.solved || t.steps == 200));
  }
  const auto tautology = softtabu_sat_solve(q, CnfFormula(2, {{1, -1}}), 3, 10, 1);
  for (const auto& t : tautology) {
    CHECK(t.solved);
    CHECK(t.steps == 0);
  }
  CHECK_THROWS_AS(softtabu_sat_solve(LinearQ(3), f, 1, 10, 1), ValidationError);
}

TEST_CASE("gain-only weights reproduce the argmax(make - break) agent") {
  const LinearQ greedy({1.0, 0.0}, 0.0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto f = gen_rand3(20, 85, seed);
    std::vector<std::size_t> chosen;
    const auto trials = softtabu_sat_solve(greedy, f, 2, 60, seed, {},
                                           [&](const SatState&, std::size_t v) { chosen.push_back(v); });
    std::size_t pos = 0;
    for (std::int64_t t = 0; t < 2; ++t) {
      Assignment a = trial_start(20, seed, t);
      std::int64_t steps = 0;
      while (!satisfies(f, a) && steps < 60) {
        std::size_t pick = 0;
        int top = scratch_score(f, a, 0);
        for (std::size_t v = 1; v < 20; ++v) {
          const int s = scratch_score(f, a, v);
          if (s > top) {
            top = s;
            pick = v;
          }
        }
        REQUIRE(pos < chosen.size());
        CHECK(chosen[pos++] == pick);
        a[pick] ^= 1U;
        ++steps;
      }
      CHECK(trials[static_cast<std::size_t>(t)].steps == steps);
      CHECK(trials[static_cast<std::size_t>(t)].solved == satisfies(f, a));
    }
    CHECK(pos == chosen.size());
  }
}

TEST_CASE("zero SAT training episodes return the zero model") {
  TrainConfig cfg;
  cfg.episodes = 0;
  CHECK(train_sat(CnfDistribution::parse("rand3:20:85"), cfg) == LinearQ(2));
}

TEST_CASE("SAT training is deterministic in the seed") {
  TrainConfig cfg;
  cfg.episodes = 10;
  cfg.batch_size = 8;
  cfg.seed = 3;
  const auto dist = CnfDistribution::parse("rand3:15:60");
  const auto a = train_sat(dist, cfg);
  CHECK(a == train_sat(dist, cfg));
  CHECK(a != LinearQ(2));
}
