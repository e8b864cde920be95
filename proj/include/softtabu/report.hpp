#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "softtabu/bench.hpp"

namespace softtabu {

// All emitters return the file contents; the column order is part of the
// schema. Doubles are written in shortest round-trip form.

// instance,agent,n,best_value,best_known,ratio,best_known_source,exceeds_reference
std::string maxcut_rows_csv(const MaxcutReport& r);
// distribution,agent,instances,mean_ratio,min_ratio
std::string maxcut_summary_csv(const MaxcutReport& r, const std::string& distribution);
// distribution,<agent>... with one mean-ratio row.
std::string maxcut_table_csv(const MaxcutReport& r, const std::string& distribution);
// instance,agent,episode,step,vertex,gain,cut_value,is_greedy,is_positive_gain
std::string trajectories_csv(const MaxcutReport& r);
// agent,step,greedy_fraction,positive_gain_fraction,samples; pools every
// (instance, episode) trajectory of the agent.
std::string intra_episode_csv(const MaxcutReport& r);
// instance,agent,episode,rank,vertex,count (top_k per episode)
std::string flips_csv(const MaxcutReport& r, std::size_t top_k = 25);

std::string maxcut_report_json(const MaxcutReport& r);
// Throws ParseError on malformed or mistyped documents.
MaxcutReport load_maxcut_report_json(std::string_view text);

// instance_id,agent,trial,solved,steps
std::string sat_trials_csv(const SatReport& r);
// distribution,agent,instances,trials,mean_steps,median_of_medians,percent_solved
std::string sat_summary_csv(const SatReport& r, const std::string& distribution);
// distribution,metric,<agent>... with rows mean_steps, median_steps, percent_solved.
std::string sat_table_csv(const SatReport& r, const std::string& distribution);

std::string sat_report_json(const SatReport& r);
SatReport load_sat_report_json(std::string_view text);

// Minimal RFC 4180 quoting.
std::string csv_field(std::string_view s);

}  // namespace softtabu
