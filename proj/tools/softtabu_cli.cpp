// Command-line front end over the shared C API.

#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "softtabu/softtabu.h"

namespace {

struct Options {
  std::optional<std::string> config;
  std::optional<std::string> seed;
  std::string out = ".";
  std::vector<std::string> assignments;
};

int report(st_status status) {
  if (status != ST_OK) std::fprintf(stderr, "error: %s\n", st_last_error());
  return static_cast<int>(status);
}

int run(const std::string& command, const Options& opts) {
  st_config* cfg = nullptr;
  st_status status = opts.config ? st_config_load(opts.config->c_str(), &cfg) : st_config_create(&cfg);
  if (status != ST_OK) return report(status);
  for (const auto& a : opts.assignments) {
    if ((status = st_config_set(cfg, a.c_str())) != ST_OK) break;
  }
  if (status == ST_OK && opts.seed) status = st_config_set(cfg, ("seed=" + *opts.seed).c_str());
  if (status == ST_OK) status = st_run(command.c_str(), cfg, opts.out.c_str());
  st_config_free(cfg);
  return report(status);
}

const char* describe(const std::string& name) {
  static const std::map<std::string, const char*> text = {
      {"gen-graphs", "Write a seeded set of random graphs in GSET format"},
      {"gen-cnf", "Write a seeded set of (satisfiable) DIMACS formulas"},
      {"train-maxcut", "Train a linear SoftTabu policy on a graph distribution"},
      {"train-sat", "Train a linear SoftTabu policy on a formula distribution"},
      {"bench-maxcut", "Run MCA, Tabu and SoftTabu on a graph suite and write reports"},
      {"bench-sat", "Run WalkSAT and SoftTabu on a formula suite and write reports"},
      {"stats", "Re-emit CSV tables from a JSON report"},
  };
  const auto it = text.find(name);
  return it == text.end() ? "" : it->second;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SoftTabu experiments: Max-Cut and SAT local search with a linear Q policy"};
  app.set_version_flag("--version", st_version());
  app.require_subcommand(1);

  Options opts;
  std::string chosen;
  for (size_t i = 0; i < st_command_count(); ++i) {
    const std::string name = st_command_name(i);
    auto* sub = app.add_subcommand(name, describe(name));
    sub->add_option("--seed", opts.seed, "Root seed for every random stream");
    sub->add_option("--config", opts.config, "Flat key=value configuration file")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out, "Output directory")->capture_default_str();
    sub->add_option("--set", opts.assignments, "Override one config key (key=value)");
    sub->callback([&chosen, name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ST_USAGE_ERROR;
  }
  return run(chosen, opts);
}
