#include "softtabu/features.hpp"

#include <algorithm>
#include <cmath>

#include "softtabu/errors.hpp"

namespace softtabu {

GainScale parse_gain_scale(std::string_view s) {
  if (s == "max_abs_gain_at_init") return GainScale::MaxAbsGainAtInit;
  if (s == "graph_weight_sum") return GainScale::GraphWeightSum;
  if (s == "none") return GainScale::None;
  throw ValidationError("unknown gain_scale '" + std::string(s) + "'");
}

TimeScale parse_time_scale(std::string_view s) {
  if (s == "horizon_fraction") return TimeScale::HorizonFraction;
  if (s == "raw") return TimeScale::Raw;
  throw ValidationError("unknown time_scale '" + std::string(s) + "'");
}

std::string to_string(GainScale g) {
  switch (g) {
    case GainScale::MaxAbsGainAtInit:
      return "max_abs_gain_at_init";
    case GainScale::GraphWeightSum:
      return "graph_weight_sum";
    case GainScale::None:
      break;
  }
  return "none";
}

std::string to_string(TimeScale t) {
  return t == TimeScale::Raw ? "raw" : "horizon_fraction";
}

void FeatureSpec::validate() const {
  if (!std::isfinite(never_flipped_value)) {
    throw ValidationError("never_flipped_value must be finite");
  }
  if (time_window_mult < 0) throw ValidationError("time_window_mult must be >= 0");
}

double gain_divisor(const FeatureSpec& spec, double max_abs_gain_at_init, double total_weight) {
  switch (spec.gain_scale) {
    case GainScale::MaxAbsGainAtInit:
      return std::max(1.0, max_abs_gain_at_init);
    case GainScale::GraphWeightSum:
      return std::max(1.0, total_weight);
    case GainScale::None:
      break;
  }
  return 1.0;
}

std::int64_t time_window(const FeatureSpec& spec, std::size_t n_actions, std::int64_t horizon) {
  const std::int64_t w = spec.time_window_mult > 0
                             ? spec.time_window_mult * static_cast<std::int64_t>(n_actions)
                             : horizon;
  return std::max<std::int64_t>(1, w);
}

double time_feature(const FeatureSpec& spec, std::int64_t now, std::int64_t last,
                    std::int64_t window) {
  if (last < 0) return spec.never_flipped_value;
  const auto since = static_cast<double>(now - last);
  if (spec.time_scale == TimeScale::Raw) return since;
  return std::min(1.0, since / static_cast<double>(window));
}

double shaped_reward(double f_now, double f_best_before, std::size_t n, bool new_local_optimum) {
  if (n == 0) return 0.0;
  const double nn = static_cast<double>(n);
  double r = std::max((f_now - f_best_before) / nn, 0.0);
  if (new_local_optimum) r += 1.0 / nn;
  return r;
}

}  // namespace softtabu
