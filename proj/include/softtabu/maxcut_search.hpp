#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "softtabu/cut_state.hpp"
#include "softtabu/rng.hpp"
#include "softtabu/selection.hpp"

namespace softtabu {

// One flip of a Max-Cut trajectory.
struct StepRecord {
  Vertex vertex = 0;
  double gain = 0.0;       // gain of the chosen vertex before flipping
  double cut_value = 0.0;  // cut value after the flip
  bool is_greedy = false;  // chosen gain equals the maximum gain (ties count)
  bool positive_gain = false;
};

using Trajectory = std::vector<StepRecord>;

struct McaResult {
  double value = 0.0;
  Side side;
  std::int64_t steps = 0;
};

// Greedy ascent: flip the max-gain vertex while some gain is positive.
McaResult mca(const Graph& g, Side start, TieBreak tie = TieBreak::LowestIndex,
              Rng* rng = nullptr);

struct TabuConfig {
  std::int64_t tenure = 20;
  std::int64_t max_steps = 1;
  bool aspiration = true;
  TieBreak tie_break = TieBreak::LowestIndex;

  void validate() const;
};

struct TabuResult {
  double value = 0.0;
  Side side;
  Trajectory trajectory;
};

// Runs exactly cfg.max_steps flips. A vertex flipped at step s is tabu for
// the next `tenure` steps (s + 1 .. s + tenure). With aspiration, a tabu vertex is admissible when
// its flip would strictly beat the best value so far. If nothing is
// admissible the argmax over all vertices is taken.
TabuResult tabu_search(const Graph& g, Side start, const TabuConfig& cfg, Rng* rng = nullptr,
                       bool record_trajectory = true);

StepRecord make_step_record(const CutState& before, Vertex v);

}  // namespace softtabu
