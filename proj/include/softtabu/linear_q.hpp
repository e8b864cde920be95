#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "softtabu/rng.hpp"
#include "softtabu/selection.hpp"

namespace softtabu {

// Row-major n_actions x n_features matrix of per-action features.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> data() const noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Affine action-value model: Q(s, a) = weights . phi(s, a) + bias.
struct LinearQ {
  std::vector<double> weights;
  double bias = 0.0;

  LinearQ() = default;
  explicit LinearQ(std::size_t n_features) : weights(n_features, 0.0) {}
  LinearQ(std::vector<double> w, double b) : weights(std::move(w)), bias(b) {}

  std::size_t num_features() const noexcept { return weights.size(); }
  double score(std::span<const double> features) const;
  bool is_finite() const;

  friend bool operator==(const LinearQ&, const LinearQ&) = default;
};

// Per-action scores. Throws ValidationError on a width mismatch.
std::vector<double> q_values(const LinearQ& q, const FeatureMatrix& features);

// Throws ValidationError on an empty action set.
std::size_t greedy_action(const LinearQ& q, const FeatureMatrix& features,
                          TieBreak tie = TieBreak::LowestIndex, Rng* rng = nullptr);

// With probability epsilon a uniform action, otherwise greedy_action.
std::size_t epsilon_greedy_action(const LinearQ& q, const FeatureMatrix& features, double epsilon,
                                  Rng& rng, TieBreak tie = TieBreak::LowestIndex);

struct TrainConfig {
  double discount = 0.95;
  double learning_rate = 1e-3;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  std::int64_t epsilon_decay_steps = 50'000;
  std::size_t replay_capacity = 5000;
  std::size_t batch_size = 64;
  // Updates between target-model copies; 0 uses the online model as target.
  std::int64_t target_sync_interval = 1000;
  std::int64_t episodes = 4000;
  std::int64_t steps_per_episode_mult = 2;
  std::uint64_t seed = 0;

  void validate() const;
};

// Linear decay from epsilon_start to epsilon_end over epsilon_decay_steps.
double epsilon_at(const TrainConfig& cfg, std::int64_t step);

struct Transition {
  FeatureMatrix before;
  std::size_t action = 0;
  double reward = 0.0;
  FeatureMatrix after;
  bool terminal = false;
};

// One batch-averaged gradient step on (y - Q(before, action))^2 with
// y = reward + (terminal ? 0 : discount * max_a' target(after, a')).
// Throws TrainingError when a target or the updated parameters are non-finite.
LinearQ td_update(const LinearQ& q, std::span<const Transition* const> batch,
                  const TrainConfig& cfg, const LinearQ& target);

class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(Transition t);
  std::size_t size() const noexcept { return items_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }

  // Uniform sample with replacement.
  std::vector<const Transition*> sample(std::size_t batch, Rng& rng) const;

 private:
  std::size_t capacity_;
  std::size_t next_ = 0;
  std::vector<Transition> items_;
};

// Model text: "linq v1 <n_features>", then the weights, then the bias.
std::string save_model(const LinearQ& q);
LinearQ load_model(std::string_view text);
LinearQ load_model_file(const std::string& path);

}  // namespace softtabu
