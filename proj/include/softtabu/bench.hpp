#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "softtabu/cnf.hpp"
#include "softtabu/features.hpp"
#include "softtabu/graph.hpp"
#include "softtabu/linear_q.hpp"
#include "softtabu/maxcut_search.hpp"
#include "softtabu/sat_search.hpp"

namespace softtabu {

// Runs fn(i) for i in [0, count) on up to `threads` workers (0 = hardware
// concurrency). fn must only write to slot i of its outputs.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn);

// ---------------------------------------------------------------- Max-Cut

struct MaxcutInstance {
  std::string name;
  Graph graph;
  std::optional<double> reference;  // published best-known value, if any
};

struct MaxcutProtocol {
  std::int64_t episodes = 50;
  std::int64_t horizon_mult = 2;
  std::vector<std::string> agents{"mca", "tabu", "softtabu"};
  std::uint64_t seed = 0;
  // More than one tenure reports one "tabu@<tenure>" agent per value.
  std::vector<std::int64_t> tenures{20};
  bool aspiration = true;
  TieBreak tie_break = TieBreak::LowestIndex;
  bool record_trajectories = false;
  std::size_t enumerate_max_n = kBruteForceMaxVertices;
  std::size_t threads = 0;

  // 5 episodes of 4|V| steps for the large benchmark graphs.
  static MaxcutProtocol gset_preset();
  void validate() const;
};

enum class KnownSource { Reference, Enumeration, Agents };
std::string to_string(KnownSource s);
KnownSource parse_known_source(std::string_view s);

struct MaxcutRow {
  std::string instance;
  std::string agent;
  std::size_t n = 0;
  double best_value = 0.0;
  double best_known = 0.0;
  double ratio = 0.0;
  KnownSource source = KnownSource::Agents;
  // The run beat the supplied reference value.
  bool exceeds_reference = false;

  friend bool operator==(const MaxcutRow&, const MaxcutRow&) = default;
};

struct TrajectorySet {
  std::string instance;
  std::string agent;
  std::vector<Trajectory> episodes;
};

struct AgentSummary {
  std::string agent;
  std::size_t instances = 0;
  double mean_ratio = 0.0;
  double min_ratio = 0.0;
};

struct MaxcutReport {
  std::map<std::string, std::string> metadata;
  std::vector<MaxcutRow> rows;
  std::vector<TrajectorySet> trajectories;

  std::vector<AgentSummary> summarize() const;
  double mean_ratio(const std::string& agent) const;
};

// best_known = max(reference, exact optimum when n <= enumerate_max_n, best
// value of any agent in this run).
MaxcutReport run_maxcut_suite(const std::vector<MaxcutInstance>& instances,
                              const MaxcutProtocol& protocol, const LinearQ* model = nullptr,
                              const FeatureSpec& spec = {});

// -------------------------------------------------------------------- SAT

struct SatInstance {
  std::string name;
  CnfFormula formula;
};

struct SatProtocol {
  std::int64_t trials = 25;
  std::int64_t max_steps = 5000;
  // "walksat", "walksat:<p>" or "softtabu".
  std::vector<std::string> agents{"walksat", "softtabu"};
  std::uint64_t seed = 0;
  WalksatConfig walksat{};
  std::size_t threads = 0;

  void validate() const;
};

struct SatTrialRow {
  std::string instance;
  std::string agent;
  std::int64_t trial = 0;
  bool solved = false;
  std::int64_t steps = 0;

  friend bool operator==(const SatTrialRow&, const SatTrialRow&) = default;
};

struct SatSummary {
  std::string agent;
  std::size_t instances = 0;
  std::size_t trials = 0;
  double mean_steps = 0.0;         // over all trials, unsolved ones at the cap
  double median_of_medians = 0.0;  // inner over trials, outer over instances
  double percent_solved = 0.0;     // instances whose median steps < max_steps

  friend bool operator==(const SatSummary&, const SatSummary&) = default;
};

struct SatReport {
  std::map<std::string, std::string> metadata;
  std::int64_t max_steps = 0;
  std::vector<SatTrialRow> trials;

  std::vector<SatSummary> summarize() const;
};

SatReport run_sat_suite(const std::vector<SatInstance>& instances, const SatProtocol& protocol,
                        const LinearQ* model = nullptr, const FeatureSpec& spec = {});

// Summary of one agent's trials. Rows are grouped by instance.
SatSummary summarize_trials(const std::string& agent, const std::vector<SatTrialRow>& rows,
                            std::int64_t max_steps);

double median(std::vector<double> xs);

// ------------------------------------------------------------- behaviour

struct IntraEpisodePoint {
  std::int64_t step = 0;
  double greedy_fraction = 0.0;         // chosen gain == max gain
  double positive_gain_fraction = 0.0;  // chosen gain > 0
  std::size_t samples = 0;
};

// Per-step fraction of trajectories taking a greedy action, aligned on the
// shortest trajectory. Throws ValidationError on empty input.
std::vector<IntraEpisodePoint> intra_episode_stats(const std::vector<Trajectory>& trajectories);

struct FlipCount {
  Vertex vertex = 0;
  std::size_t count = 0;

  friend bool operator==(const FlipCount&, const FlipCount&) = default;
};

// Flip counts of every flipped vertex, descending (ties by vertex id).
std::vector<FlipCount> flip_counts(const Trajectory& trajectory);
std::vector<FlipCount> flip_distribution(const Trajectory& trajectory, std::size_t top_k = 25);

}  // namespace softtabu
