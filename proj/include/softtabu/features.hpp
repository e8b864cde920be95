#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>

namespace softtabu {

enum class GainScale { MaxAbsGainAtInit, GraphWeightSum, None };
enum class TimeScale { HorizonFraction, Raw };

GainScale parse_gain_scale(std::string_view s);
TimeScale parse_time_scale(std::string_view s);
std::string to_string(GainScale g);
std::string to_string(TimeScale t);

// Scaling of the two per-action observations: marginal gain and steps since
// the action's vertex (or variable) last changed.
struct FeatureSpec {
  GainScale gain_scale = GainScale::MaxAbsGainAtInit;
  TimeScale time_scale = TimeScale::HorizonFraction;
  double never_flipped_value = 1.0;
  // Time normaliser as a multiple of the action count; 0 uses the episode
  // horizon.
  std::int64_t time_window_mult = 0;

  void validate() const;
};

inline constexpr std::size_t kSoftTabuFeatures = 2;

// Divisor applied to raw gains. `total_weight` is the instance's weight mass
// (sum of |w| for graphs, clause count for formulas).
double gain_divisor(const FeatureSpec& spec, double max_abs_gain_at_init, double total_weight);

// Normaliser for steps-since-flip under HorizonFraction.
std::int64_t time_window(const FeatureSpec& spec, std::size_t n_actions, std::int64_t horizon);

// `last` is the step of the most recent flip, or negative for never.
double time_feature(const FeatureSpec& spec, std::int64_t now, std::int64_t last,
                    std::int64_t window);

// max((f_now - f_best_before) / n, 0), plus 1/n when a previously unseen local
// optimum was reached.
double shaped_reward(double f_now, double f_best_before, std::size_t n, bool new_local_optimum);

// Fingerprints of local optima already rewarded within one episode.
class LocalOptimumMemory {
 public:
  // True when the fingerprint was not seen before (and records it).
  bool remember(std::uint64_t fingerprint) { return seen_.insert(fingerprint).second; }
  bool contains(std::uint64_t fingerprint) const { return seen_.count(fingerprint) != 0; }
  std::size_t size() const noexcept { return seen_.size(); }

 private:
  std::unordered_set<std::uint64_t> seen_;
};

}  // namespace softtabu
