#include "softtabu/sat_search.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>

#include "softtabu/errors.hpp"

namespace softtabu {

namespace {

struct OwnedSatEpisode {
  std::unique_ptr<CnfFormula> formula;
  SatEpisode episode;

  FeatureMatrix observe() const { return episode.observe(); }
  EnvStep step(std::size_t a) { return episode.step(a); }
  bool done() const { return episode.done(); }
};

}  // namespace

void WalksatConfig::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("walksat noise p must lie in [0, 1]");
  if (max_steps < 0) throw ValidationError("walksat max_steps must be >= 0");
}

Assignment trial_start(std::size_t n_vars, std::uint64_t seed, std::int64_t trial) {
  Rng rng(derive_seed(seed, "trial-start", static_cast<std::uint64_t>(trial)));
  return random_bits(n_vars, rng);
}

SatRun walksat(const CnfFormula& f, const WalksatConfig& cfg, std::uint64_t seed,
               const FlipObserver& observer) {
  cfg.validate();
  Rng rng(seed);
  SatState st(f, random_bits(f.num_vars(), rng));
  std::vector<std::size_t> candidates;
  std::int64_t steps = 0;
  while (!st.satisfied() && steps < cfg.max_steps) {
    const auto unsat = st.unsat_clauses();
    const Clause& clause = f.clause(unsat[uniform_index(rng, unsat.size())]);
    std::size_t chosen = var_index(clause.front());

    int min_break = st.break_count(var_index(clause.front()));
    for (Literal l : clause) min_break = std::min(min_break, st.break_count(var_index(l)));
    candidates.clear();
    if (cfg.freebie && min_break == 0) {
      for (Literal l : clause) {
        if (st.break_count(var_index(l)) == 0) candidates.push_back(var_index(l));
      }
    } else if (bernoulli(rng, cfg.p)) {
      candidates.push_back(var_index(clause[uniform_index(rng, clause.size())]));
    } else {
      for (Literal l : clause) {
        if (st.break_count(var_index(l)) == min_break) candidates.push_back(var_index(l));
      }
    }
    chosen = candidates.size() == 1 ? candidates.front()
                                    : candidates[uniform_index(rng, candidates.size())];
    if (observer) observer(st, chosen);
    st.flip(chosen);
    ++steps;
  }
  return {st.satisfied(), steps, st.assignment()};
}

SatEpisode::SatEpisode(const CnfFormula& f, Assignment start, std::int64_t horizon,
                       FeatureSpec spec)
    : state_(f, std::move(start)), horizon_(horizon), spec_(spec) {
  if (horizon_ < 0) throw ValidationError("episode horizon must be >= 0");
  spec_.validate();
  double max_abs = 0.0;
  for (std::size_t v = 0; v < state_.num_vars(); ++v) {
    max_abs = std::max(max_abs, static_cast<double>(std::abs(state_.score(v))));
  }
  gain_divisor_ = gain_divisor(spec_, max_abs, static_cast<double>(f.num_clauses()));
  time_window_ = time_window(spec_, f.num_vars(), horizon_);
}

FeatureMatrix SatEpisode::observe() const {
  const std::size_t n = state_.num_vars();
  FeatureMatrix m(n, kSoftTabuFeatures);
  const std::int64_t now = state_.step();
  for (std::size_t v = 0; v < n; ++v) {
    m(v, 0) = static_cast<double>(state_.score(v)) / gain_divisor_;
    m(v, 1) = time_feature(spec_, now, state_.last_flip(v), time_window_);
  }
  return m;
}

EnvStep SatEpisode::step(std::size_t v) {
  if (done()) throw ValidationError("step on a finished episode");
  if (v >= state_.num_vars()) {
    throw ValidationError("variable index " + std::to_string(v) + " out of range");
  }
  const auto best_before = static_cast<double>(state_.best_sat_count());
  state_.flip(v);
  const bool new_optimum = state_.max_score() <= 0 && seen_.remember(state_.fingerprint());
  const double r = shaped_reward(static_cast<double>(state_.sat_count()), best_before,
                                 state_.num_vars(), new_optimum);
  return {r, done()};
}

LinearQ train_sat(const CnfDistribution& dist, const TrainConfig& cfg, const FeatureSpec& spec,
                  const ProgressCallback& progress) {
  dist.validate();
  spec.validate();
  auto make_episode = [&](std::int64_t index, Rng& rng) {
    // One satisfiable formula per episode, drawn from its own stream.
    auto batch = gen_filtered(dist, 1, derive_seed(cfg.seed, "train-formula",
                                                   static_cast<std::uint64_t>(index)));
    auto formula = std::make_unique<CnfFormula>(std::move(batch.front()));
    const std::int64_t horizon =
        cfg.steps_per_episode_mult * static_cast<std::int64_t>(formula->num_vars());
    SatEpisode ep(*formula, random_bits(formula->num_vars(), rng), horizon, spec);
    return OwnedSatEpisode{std::move(formula), std::move(ep)};
  };
  return train_linear_q(cfg, kSoftTabuFeatures, make_episode, progress);
}

std::vector<TrialRecord> softtabu_sat_solve(const LinearQ& q, const CnfFormula& f,
                                            std::int64_t trials, std::int64_t max_steps,
                                            std::uint64_t seed, const FeatureSpec& spec,
                                            const FlipObserver& observer) {
  if (q.num_features() != kSoftTabuFeatures) {
    throw ValidationError("SoftTabu model must have 2 features");
  }
  std::vector<TrialRecord> out;
  out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(trials, 0)));
  for (std::int64_t t = 0; t < trials; ++t) {
    SatEpisode ep(f, trial_start(f.num_vars(), seed, t), max_steps, spec);
    while (!ep.done() && f.num_vars() > 0) {
      const std::size_t a = greedy_action(q, ep.observe());
      if (observer) observer(ep.state(), a);
      ep.step(a);
    }
    out.push_back({ep.state().satisfied(), ep.t()});
  }
  return out;
}

}  // namespace softtabu
