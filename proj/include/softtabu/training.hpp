#pragma once

#include <cstdint>
#include <functional>
#include <utility>

#include "softtabu/linear_q.hpp"

namespace softtabu {

struct TrainingProgress {
  std::int64_t episode = 0;
  std::int64_t env_steps = 0;
  std::int64_t updates = 0;
  double epsilon = 0.0;
  double episode_return = 0.0;
  const LinearQ* model = nullptr;
};

using ProgressCallback = std::function<void(const TrainingProgress&)>;

// Epsilon-greedy Q-learning loop with experience replay and an optional
// target model. `make_episode(index, rng)` returns a fresh episode exposing
// observe() -> FeatureMatrix, step(action) -> {reward, done} and done().
template <typename MakeEpisode>
LinearQ train_linear_q(const TrainConfig& cfg, std::size_t n_features, MakeEpisode&& make_episode,
                       const ProgressCallback& progress = {}) {
  cfg.validate();
  LinearQ q(n_features);
  LinearQ target = q;
  ReplayBuffer replay(cfg.replay_capacity);
  Rng rng(derive_seed(cfg.seed, "train-policy"));
  Rng replay_rng(derive_seed(cfg.seed, "train-replay"));
  std::int64_t env_steps = 0;
  std::int64_t updates = 0;

  for (std::int64_t ep = 0; ep < cfg.episodes; ++ep) {
    auto episode = make_episode(ep, rng);
    FeatureMatrix features = episode.observe();
    double episode_return = 0.0;
    double eps = epsilon_at(cfg, env_steps);
    while (!episode.done() && features.rows() > 0) {
      eps = epsilon_at(cfg, env_steps);
      const std::size_t action = epsilon_greedy_action(q, features, eps, rng);
      const auto outcome = episode.step(action);
      episode_return += outcome.reward;
      FeatureMatrix next = episode.observe();
      replay.push({std::move(features), action, outcome.reward, next, outcome.done});
      features = std::move(next);
      ++env_steps;

      if (replay.size() >= cfg.batch_size) {
        const auto batch = replay.sample(cfg.batch_size, replay_rng);
        q = td_update(q, batch, cfg, cfg.target_sync_interval > 0 ? target : q);
        ++updates;
        if (cfg.target_sync_interval > 0 && updates % cfg.target_sync_interval == 0) target = q;
      }
    }
    if (progress) progress({ep, env_steps, updates, eps, episode_return, &q});
  }
  return q;
}

}  // namespace softtabu
