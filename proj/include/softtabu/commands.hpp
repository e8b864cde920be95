#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "softtabu/bench.hpp"
#include "softtabu/config.hpp"

namespace softtabu {

// gen-graphs, gen-cnf, train-maxcut, train-sat, bench-maxcut, bench-sat, stats.
const std::vector<std::string>& command_names();

// Runs one subcommand with the merged configuration and writes its files
// under out_dir (created if missing). Progress and timings go to `log` only,
// so the files depend on nothing but the configuration and inputs.
void run_command(std::string_view command, const Config& cfg, const std::string& out_dir,
                 std::ostream& log);

// `name value` per line; `#` starts a comment.
std::map<std::string, double> parse_best_known(std::string_view text, const std::string& source = {});

// Regular files under dir with the given extension (any when empty), sorted.
std::vector<std::string> list_inputs(const std::string& dir, std::string_view extension = {});

// File name without directory and last extension.
std::string instance_name(const std::string& path);

}  // namespace softtabu
