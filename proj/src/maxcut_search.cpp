#include "softtabu/maxcut_search.hpp"

#include "softtabu/errors.hpp"

namespace softtabu {

StepRecord make_step_record(const CutState& before, Vertex v) {
  const double g = before.gain(v);
  return {v, g, before.cut_value() + g, g == before.max_gain(), g > 0.0};
}

McaResult mca(const Graph& g, Side start, TieBreak tie, Rng* rng) {
  CutState state(g, std::move(start));
  std::int64_t steps = 0;
  while (true) {
    const auto v = argmax_index(state.gains(), tie, rng);
    if (v == state.size() || state.gain(static_cast<Vertex>(v)) <= 0.0) break;
    state.flip(static_cast<Vertex>(v));
    ++steps;
  }
  return {state.cut_value(), state.side(), steps};
}

void TabuConfig::validate() const {
  if (tenure < 1) throw ValidationError("tabu tenure must be >= 1");
  if (max_steps < 1) throw ValidationError("tabu max_steps must be >= 1");
}

TabuResult tabu_search(const Graph& g, Side start, const TabuConfig& cfg, Rng* rng,
                       bool record_trajectory) {
  cfg.validate();
  CutState state(g, std::move(start));
  TabuResult result;
  if (record_trajectory) result.trajectory.reserve(static_cast<std::size_t>(cfg.max_steps));
  if (state.size() == 0) {
    result.value = state.best_value();
    return result;
  }

  for (std::int64_t t = 0; t < cfg.max_steps; ++t) {
    const std::int64_t now = state.step();
    const double best = state.best_value();
    const double current = state.cut_value();
    auto admissible = [&](std::size_t v) {
      const auto last = state.last_flip(static_cast<Vertex>(v));
      if (last == CutState::kNeverFlipped || now - last > cfg.tenure) return true;
      return cfg.aspiration && current + state.gain(static_cast<Vertex>(v)) > best;
    };
    auto v = argmax_index(state.gains(), cfg.tie_break, rng, admissible);
    if (v == state.size()) v = argmax_index(state.gains(), cfg.tie_break, rng);
    const auto vertex = static_cast<Vertex>(v);
    if (record_trajectory) result.trajectory.push_back(make_step_record(state, vertex));
    state.flip(vertex);
  }
  result.value = state.best_value();
  result.side = state.best_side();
  return result;
}

}  // namespace softtabu
