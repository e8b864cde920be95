#pragma once

#include <cstdint>
#include <vector>

#include "softtabu/cut_state.hpp"
#include "softtabu/features.hpp"
#include "softtabu/graph.hpp"
#include "softtabu/linear_q.hpp"
#include "softtabu/maxcut_search.hpp"
#include "softtabu/training.hpp"

namespace softtabu {

struct EnvStep {
  double reward = 0.0;
  bool done = false;
};

// One SoftTabu Max-Cut episode: every action flips one vertex; each vertex is
// observed through (scaled marginal gain, scaled steps since its last flip).
class MaxcutEpisode {
 public:
  MaxcutEpisode(const Graph& g, Side start, std::int64_t horizon, FeatureSpec spec = {});

  // n x 2 feature matrix for the current state.
  FeatureMatrix observe() const;

  // Flips v. Throws ValidationError once the horizon is reached.
  EnvStep step(std::size_t v);

  const CutState& cut() const noexcept { return cut_; }
  const FeatureSpec& spec() const noexcept { return spec_; }
  std::int64_t t() const noexcept { return cut_.step(); }
  std::int64_t horizon() const noexcept { return horizon_; }
  bool done() const noexcept { return t() >= horizon_; }
  double f_best() const noexcept { return cut_.best_value(); }
  const LocalOptimumMemory& local_optima() const noexcept { return seen_; }
  const StepRecord& last_record() const noexcept { return last_record_; }

 private:
  CutState cut_;
  std::int64_t horizon_;
  FeatureSpec spec_;
  double gain_divisor_;
  std::int64_t time_window_;
  LocalOptimumMemory seen_;
  StepRecord last_record_;
};

// Fresh graph from `dist` per episode, random start, horizon
// steps_per_episode_mult * n.
LinearQ train_maxcut(const GenSpec& dist, const TrainConfig& cfg, const FeatureSpec& spec = {},
                     const ProgressCallback& progress = {});

struct MaxcutEvaluation {
  double best_value = 0.0;
  Side best_side;
  std::vector<Trajectory> trajectories;
};

// Greedy rollouts from `episodes` random starts of horizon_mult * n steps.
MaxcutEvaluation evaluate_maxcut(const LinearQ& q, const Graph& g, std::int64_t episodes,
                                 std::int64_t horizon_mult, std::uint64_t seed,
                                 const FeatureSpec& spec = {}, bool record_trajectories = true);

// Start assignment used by evaluate_maxcut for the given episode.
Side evaluation_start(std::size_t n, std::uint64_t seed, std::int64_t episode);

}  // namespace softtabu
