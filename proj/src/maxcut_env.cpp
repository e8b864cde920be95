#include "softtabu/maxcut_env.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "softtabu/errors.hpp"

namespace softtabu {

namespace {

double max_abs(const std::vector<double>& xs) {
  double m = 0.0;
  for (double x : xs) m = std::max(m, std::abs(x));
  return m;
}

// Training episodes own their sampled graph.
struct OwnedMaxcutEpisode {
  std::unique_ptr<Graph> graph;
  MaxcutEpisode episode;

  FeatureMatrix observe() const { return episode.observe(); }
  EnvStep step(std::size_t a) { return episode.step(a); }
  bool done() const { return episode.done(); }
};

}  // namespace

MaxcutEpisode::MaxcutEpisode(const Graph& g, Side start, std::int64_t horizon, FeatureSpec spec)
    : cut_(g, std::move(start)), horizon_(horizon), spec_(spec) {
  if (horizon_ < 0) throw ValidationError("episode horizon must be >= 0");
  spec_.validate();
  gain_divisor_ = gain_divisor(spec_, max_abs(cut_.gains()), g.total_abs_weight());
  time_window_ = time_window(spec_, g.num_vertices(), horizon_);
}

FeatureMatrix MaxcutEpisode::observe() const {
  const std::size_t n = cut_.size();
  FeatureMatrix m(n, kSoftTabuFeatures);
  const std::int64_t now = cut_.step();
  for (std::size_t v = 0; v < n; ++v) {
    const auto vertex = static_cast<Vertex>(v);
    m(v, 0) = cut_.gain(vertex) / gain_divisor_;
    m(v, 1) = time_feature(spec_, now, cut_.last_flip(vertex), time_window_);
  }
  return m;
}

EnvStep MaxcutEpisode::step(std::size_t v) {
  if (done()) throw ValidationError("step on a finished episode");
  if (v >= cut_.size()) throw ValidationError("vertex " + std::to_string(v) + " out of range");
  const auto vertex = static_cast<Vertex>(v);
  last_record_ = make_step_record(cut_, vertex);
  const double best_before = cut_.best_value();
  cut_.flip(vertex);
  const bool new_optimum = cut_.is_local_optimum() && seen_.remember(cut_.fingerprint());
  const double r = shaped_reward(cut_.cut_value(), best_before, cut_.size(), new_optimum);
  return {r, done()};
}

LinearQ train_maxcut(const GenSpec& dist, const TrainConfig& cfg, const FeatureSpec& spec,
                     const ProgressCallback& progress) {
  dist.validate();
  spec.validate();
  const std::int64_t horizon = cfg.steps_per_episode_mult * static_cast<std::int64_t>(dist.n);
  auto make_episode = [&](std::int64_t index, Rng& rng) {
    GenSpec g = dist;
    g.seed = derive_seed(cfg.seed, "train-graph", static_cast<std::uint64_t>(index));
    auto graph = std::make_unique<Graph>(generate(g));
    MaxcutEpisode ep(*graph, random_bits(graph->num_vertices(), rng), horizon, spec);
    return OwnedMaxcutEpisode{std::move(graph), std::move(ep)};
  };
  return train_linear_q(cfg, kSoftTabuFeatures, make_episode, progress);
}

Side evaluation_start(std::size_t n, std::uint64_t seed, std::int64_t episode) {
  Rng rng(derive_seed(seed, "episode-start", static_cast<std::uint64_t>(episode)));
  return random_bits(n, rng);
}

MaxcutEvaluation evaluate_maxcut(const LinearQ& q, const Graph& g, std::int64_t episodes,
                                 std::int64_t horizon_mult, std::uint64_t seed,
                                 const FeatureSpec& spec, bool record_trajectories) {
  if (q.num_features() != kSoftTabuFeatures) {
    throw ValidationError("SoftTabu model must have 2 features");
  }
  MaxcutEvaluation result;
  result.best_side.assign(g.num_vertices(), 0);
  const std::int64_t horizon = horizon_mult * static_cast<std::int64_t>(g.num_vertices());
  bool have_best = false;
  for (std::int64_t e = 0; e < episodes; ++e) {
    MaxcutEpisode ep(g, evaluation_start(g.num_vertices(), seed, e), horizon, spec);
    Trajectory traj;
    if (record_trajectories) traj.reserve(static_cast<std::size_t>(horizon));
    while (!ep.done() && g.num_vertices() > 0) {
      const std::size_t a = greedy_action(q, ep.observe());
      ep.step(a);
      if (record_trajectories) traj.push_back(ep.last_record());
    }
    if (!have_best || ep.f_best() > result.best_value) {
      result.best_value = ep.f_best();
      result.best_side = ep.cut().best_side();
      have_best = true;
    }
    if (record_trajectories) result.trajectories.push_back(std::move(traj));
  }
  return result;
}

}  // namespace softtabu
