#include "softtabu/linear_q.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "softtabu/errors.hpp"
#include "softtabu/text.hpp"

namespace softtabu {

double LinearQ::score(std::span<const double> features) const {
  double s = bias;
  for (std::size_t i = 0; i < weights.size(); ++i) s += weights[i] * features[i];
  return s;
}

bool LinearQ::is_finite() const {
  return std::isfinite(bias) &&
         std::all_of(weights.begin(), weights.end(), [](double w) { return std::isfinite(w); });
}

std::vector<double> q_values(const LinearQ& q, const FeatureMatrix& features) {
  if (features.cols() != q.num_features()) {
    throw ValidationError("feature width " + std::to_string(features.cols()) +
                          " does not match model width " + std::to_string(q.num_features()));
  }
  std::vector<double> out(features.rows());
  for (std::size_t a = 0; a < features.rows(); ++a) out[a] = q.score(features.row(a));
  return out;
}

std::size_t greedy_action(const LinearQ& q, const FeatureMatrix& features, TieBreak tie,
                          Rng* rng) {
  if (features.rows() == 0) throw ValidationError("greedy_action: empty action set");
  const auto scores = q_values(q, features);
  return argmax_index(scores, tie, rng);
}

std::size_t epsilon_greedy_action(const LinearQ& q, const FeatureMatrix& features, double epsilon,
                                  Rng& rng, TieBreak tie) {
  if (features.rows() == 0) throw ValidationError("epsilon_greedy_action: empty action set");
  if (epsilon > 0.0 && bernoulli(rng, epsilon)) return uniform_index(rng, features.rows());
  return greedy_action(q, features, tie, &rng);
}

void TrainConfig::validate() const {
  if (!(discount >= 0.0 && discount < 1.0)) throw ValidationError("discount must lie in [0, 1)");
  if (!(learning_rate > 0.0)) throw ValidationError("learning_rate must be positive");
  for (double e : {epsilon_start, epsilon_end}) {
    if (!(e >= 0.0 && e <= 1.0)) throw ValidationError("epsilon must lie in [0, 1]");
  }
  if (epsilon_decay_steps < 0) throw ValidationError("epsilon_decay_steps must be >= 0");
  if (replay_capacity == 0) throw ValidationError("replay_capacity must be positive");
  if (batch_size == 0) throw ValidationError("batch_size must be positive");
  if (target_sync_interval < 0) throw ValidationError("target_sync_interval must be >= 0");
  if (episodes < 0) throw ValidationError("episodes must be >= 0");
  if (steps_per_episode_mult < 1) throw ValidationError("steps_per_episode_mult must be >= 1");
}

double epsilon_at(const TrainConfig& cfg, std::int64_t step) {
  if (cfg.epsilon_decay_steps <= 0 || step >= cfg.epsilon_decay_steps) return cfg.epsilon_end;
  const double frac = static_cast<double>(step) / static_cast<double>(cfg.epsilon_decay_steps);
  return cfg.epsilon_start + frac * (cfg.epsilon_end - cfg.epsilon_start);
}

LinearQ td_update(const LinearQ& q, std::span<const Transition* const> batch,
                  const TrainConfig& cfg, const LinearQ& target) {
  if (batch.empty()) throw ValidationError("td_update: empty batch");
  const std::size_t width = q.num_features();
  std::vector<double> grad_w(width, 0.0);
  double grad_b = 0.0;
  for (const Transition* t : batch) {
    if (t->before.cols() != width || t->action >= t->before.rows()) {
      throw ValidationError("td_update: malformed transition");
    }
    double y = t->reward;
    if (!t->terminal && t->after.rows() > 0) {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t a = 0; a < t->after.rows(); ++a) {
        best = std::max(best, target.score(t->after.row(a)));
      }
      y += cfg.discount * best;
    }
    if (!std::isfinite(y)) throw TrainingError("td_update: non-finite TD target");
    const auto phi = t->before.row(t->action);
    const double error = y - q.score(phi);
    for (std::size_t i = 0; i < width; ++i) grad_w[i] += error * phi[i];
    grad_b += error;
  }
  const double step = cfg.learning_rate / static_cast<double>(batch.size());
  LinearQ next = q;
  for (std::size_t i = 0; i < width; ++i) next.weights[i] += step * grad_w[i];
  next.bias += step * grad_b;
  if (!next.is_finite()) throw TrainingError("td_update: parameters diverged");
  return next;
}

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) throw ValidationError("replay capacity must be positive");
  items_.reserve(capacity_);
}

void ReplayBuffer::push(Transition t) {
  if (items_.size() < capacity_) {
    items_.push_back(std::move(t));
  } else {
    items_[next_] = std::move(t);
  }
  next_ = (next_ + 1) % capacity_;
}

std::vector<const Transition*> ReplayBuffer::sample(std::size_t batch, Rng& rng) const {
  std::vector<const Transition*> out;
  if (items_.empty()) return out;
  out.reserve(batch);
  for (std::size_t i = 0; i < batch; ++i) out.push_back(&items_[uniform_index(rng, items_.size())]);
  return out;
}

std::string save_model(const LinearQ& q) {
  std::string out = "linq v1 " + std::to_string(q.num_features()) + "\n";
  for (std::size_t i = 0; i < q.weights.size(); ++i) {
    if (i) out += ' ';
    out += format_double(q.weights[i]);
  }
  out += '\n';
  out += format_double(q.bias);
  out += '\n';
  return out;
}

LinearQ load_model(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.size() != 3) {
    throw ParseError(0, "model file must have exactly 3 lines, found " +
                            std::to_string(lines.size()));
  }
  const auto header = split(lines[0]);
  long long n = 0;
  if (header.size() != 3 || header[0] != "linq" || header[1] != "v1" ||
      !parse_int64(header[2], n) || n < 0) {
    throw ParseError(1, "expected header \"linq v1 <n_features>\"");
  }
  const auto fields = split(lines[1]);
  if (static_cast<long long>(fields.size()) != n) {
    throw ParseError(2, "expected " + std::to_string(n) + " weights, found " +
                            std::to_string(fields.size()));
  }
  LinearQ q(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (!parse_double(fields[i], q.weights[i])) throw ParseError(2, "malformed weight");
  }
  const auto bias = split(lines[2]);
  if (bias.size() != 1 || !parse_double(bias[0], q.bias)) throw ParseError(3, "malformed bias");
  if (!q.is_finite()) throw ParseError(0, "model contains non-finite values");
  return q;
}

LinearQ load_model_file(const std::string& path) {
  try {
    return load_model(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.message(), path);
  }
}

}  // namespace softtabu
