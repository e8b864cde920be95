#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "softtabu/cnf.hpp"
#include "softtabu/cnf_generators.hpp"
#include "softtabu/features.hpp"
#include "softtabu/linear_q.hpp"
#include "softtabu/maxcut_env.hpp"
#include "softtabu/training.hpp"

namespace softtabu {

struct WalksatConfig {
  double p = 0.5;
  std::int64_t max_steps = 5000;
  bool freebie = true;

  void validate() const;
};

struct SatRun {
  bool solved = false;
  std::int64_t steps = 0;
  Assignment assignment;
};

// Called with the state and chosen variable index just before each flip.
using FlipObserver = std::function<void(const SatState&, std::size_t)>;

// WalkSAT/SKC from a uniformly random assignment.
SatRun walksat(const CnfFormula& f, const WalksatConfig& cfg, std::uint64_t seed,
               const FlipObserver& observer = {});

// SoftTabu on SAT: each action flips one variable; variable v is observed as
// (scaled make-break, scaled steps since v last flipped). The objective is
// the satisfied-clause count and the episode ends early once satisfied.
class SatEpisode {
 public:
  SatEpisode(const CnfFormula& f, Assignment start, std::int64_t horizon, FeatureSpec spec = {});

  FeatureMatrix observe() const;
  EnvStep step(std::size_t v);

  const SatState& state() const noexcept { return state_; }
  std::int64_t t() const noexcept { return state_.step(); }
  std::int64_t horizon() const noexcept { return horizon_; }
  bool done() const noexcept { return state_.satisfied() || t() >= horizon_; }
  const LocalOptimumMemory& local_optima() const noexcept { return seen_; }

 private:
  SatState state_;
  std::int64_t horizon_;
  FeatureSpec spec_;
  double gain_divisor_;
  std::int64_t time_window_;
  LocalOptimumMemory seen_;
};

inline FeatureMatrix softtabu_sat_features(const SatEpisode& ep) { return ep.observe(); }

// A fresh satisfiable formula from `dist` per episode.
LinearQ train_sat(const CnfDistribution& dist, const TrainConfig& cfg, const FeatureSpec& spec = {},
                  const ProgressCallback& progress = {});

struct TrialRecord {
  bool solved = false;
  std::int64_t steps = 0;
};

// Greedy rollouts from `trials` random assignments, each capped at max_steps.
std::vector<TrialRecord> softtabu_sat_solve(const LinearQ& q, const CnfFormula& f,
                                            std::int64_t trials, std::int64_t max_steps,
                                            std::uint64_t seed, const FeatureSpec& spec = {},
                                            const FlipObserver& observer = {});

Assignment trial_start(std::size_t n_vars, std::uint64_t seed, std::int64_t trial);

}  // namespace softtabu
