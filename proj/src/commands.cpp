#include "softtabu/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>

#include "softtabu/cnf_generators.hpp"
#include "softtabu/errors.hpp"
#include "softtabu/maxcut_env.hpp"
#include "softtabu/report.hpp"
#include "softtabu/sat_search.hpp"
#include "softtabu/text.hpp"

namespace softtabu {

namespace fs = std::filesystem;

namespace {

using KeySet = std::set<std::string>;

KeySet merge(std::initializer_list<KeySet> sets) {
  KeySet out;
  for (const auto& s : sets) out.insert(s.begin(), s.end());
  return out;
}

std::string numbered(const std::string& prefix, std::size_t i, std::size_t count) {
  const std::size_t width = std::max<std::size_t>(3, std::to_string(count ? count - 1 : 0).size());
  std::string digits = std::to_string(i);
  return prefix + std::string(width - std::min(width, digits.size()), '0') + digits;
}

std::size_t positive_count(const Config& c, const std::string& key, std::int64_t fallback) {
  const auto v = c.get_int(key, fallback);
  if (v < 1) throw UsageError("config key '" + key + "' must be >= 1");
  return static_cast<std::size_t>(v);
}

void write_output(const std::string& out_dir, const std::string& name, std::string_view contents) {
  write_file((fs::path(out_dir) / name).string(), contents);
}

void add_config_metadata(std::map<std::string, std::string>& meta, const Config& c) {
  for (const auto& [k, v] : c.values()) meta["config." + k] = v;
}

LinearQ load_model_for(const Config& c, const std::vector<std::string>& agents) {
  const auto path = c.get_optional("model");
  if (!path) {
    if (std::find(agents.begin(), agents.end(), "softtabu") != agents.end()) {
      throw UsageError("agent 'softtabu' requires config key 'model'");
    }
    return {};
  }
  return load_model_file(*path);
}

template <typename Fn>
auto as_usage(Fn&& fn) {
  try {
    return fn();
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// ------------------------------------------------------------ generators

void cmd_gen_graphs(const Config& c, const std::string& out, std::ostream& log) {
  c.require_known(merge({{"seed", "count", "prefix"}, kGraphKeys}), "gen-graphs");
  GenSpec spec = gen_spec_from(c);
  const auto seed = c.get_uint("seed", 0);
  const auto count = positive_count(c, "count", 100);
  const auto prefix = c.get_string("prefix", "g");
  std::string index = "file,family,n,param,weights,seed,edges\n";
  for (std::size_t i = 0; i < count; ++i) {
    spec.seed = derive_seed(seed, "graph", i);
    const Graph g = generate(spec);
    const std::string file = numbered(prefix, i, count) + ".gset";
    write_output(out, file, save_gset(g));
    index += file + "," + to_string(spec.family) + "," + std::to_string(spec.n) + "," +
             format_double(spec.param) + "," + to_string(spec.weights) + "," +
             std::to_string(spec.seed) + "," + std::to_string(g.num_edges()) + "\n";
  }
  write_output(out, "graphs.csv", index);
  log << "wrote " << count << " graphs to " << out << "\n";
}

void cmd_gen_cnf(const Config& c, const std::string& out, std::ostream& log) {
  c.require_known({"seed", "count", "prefix", "distribution", "filter", "max_attempts"}, "gen-cnf");
  const auto dist_text = c.get_optional("distribution");
  if (!dist_text) throw UsageError("gen-cnf requires config key 'distribution'");
  const auto dist = as_usage([&] { return CnfDistribution::parse(*dist_text); });
  const auto seed = c.get_uint("seed", 0);
  const auto count = positive_count(c, "count", 100);
  const auto prefix = c.get_string("prefix", "f");
  std::vector<CnfFormula> formulas;
  if (c.get_bool("filter", true)) {
    formulas = gen_filtered(dist, count, derive_seed(seed, "cnf"),
                            static_cast<std::size_t>(c.get_uint("max_attempts", 0)));
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      formulas.push_back(sample_formula(dist, derive_seed(seed, "formula", i)));
    }
  }
  for (std::size_t i = 0; i < formulas.size(); ++i) {
    write_output(out, numbered(prefix, i, count) + ".cnf", emit_dimacs(formulas[i]));
  }
  log << "wrote " << formulas.size() << " formulas from " << dist.to_string() << " to " << out
      << "\n";
}

// -------------------------------------------------------------- training

std::string train_log_header() { return "episode,env_steps,updates,epsilon,episode_return\n"; }

ProgressCallback train_logger(std::string& csv, std::int64_t episodes, std::ostream& log) {
  return [&csv, episodes, &log](const TrainingProgress& p) {
    csv += std::to_string(p.episode) + "," + std::to_string(p.env_steps) + "," +
           std::to_string(p.updates) + "," + format_double(p.epsilon) + "," +
           format_double(p.episode_return) + "\n";
    if ((p.episode + 1) % std::max<std::int64_t>(1, episodes / 10) == 0) {
      log << "episode " << p.episode + 1 << "/" << episodes << " epsilon "
          << format_double(p.epsilon) << "\n";
    }
  };
}

void finish_training(const LinearQ& q, const std::string& csv, const std::string& out,
                     const Stopwatch& clock, std::ostream& log) {
  write_output(out, "model.linq", save_model(q));
  write_output(out, "train_log.csv", csv);
  log << "model weights " << format_double(q.weights.at(0)) << " " << format_double(q.weights.at(1))
      << " bias " << format_double(q.bias) << " (" << clock.seconds() << " s)\n";
}

void cmd_train_maxcut(const Config& c, const std::string& out, std::ostream& log) {
  c.require_known(merge({{"seed"}, kGraphKeys, kTrainKeys, kFeatureKeys}), "train-maxcut");
  const GenSpec dist = gen_spec_from(c);
  const TrainConfig cfg = train_config_from(c);
  const FeatureSpec spec = feature_spec_from(c);
  Stopwatch clock;
  std::string csv = train_log_header();
  const LinearQ q = train_maxcut(dist, cfg, spec, train_logger(csv, cfg.episodes, log));
  finish_training(q, csv, out, clock, log);
}

void cmd_train_sat(const Config& c, const std::string& out, std::ostream& log) {
  c.require_known(merge({{"seed", "distribution"}, kTrainKeys, kFeatureKeys}), "train-sat");
  const auto dist_text = c.get_optional("distribution");
  if (!dist_text) throw UsageError("train-sat requires config key 'distribution'");
  const auto dist = as_usage([&] { return CnfDistribution::parse(*dist_text); });
  const TrainConfig cfg = train_config_from(c);
  const FeatureSpec spec = feature_spec_from(c);
  Stopwatch clock;
  std::string csv = train_log_header();
  const LinearQ q = train_sat(dist, cfg, spec, train_logger(csv, cfg.episodes, log));
  finish_training(q, csv, out, clock, log);
}

// ----------------------------------------------------------- benchmarks

std::vector<std::int64_t> parse_tenures(const Config& c) {
  std::vector<std::int64_t> out;
  for (const auto& item : c.get_list("tenures", {"20"})) {
    long long t = 0;
    if (!parse_int64(item, t)) throw UsageError("bad tabu tenure '" + item + "'");
    out.push_back(t);
  }
  return out;
}

void cmd_bench_maxcut(const Config& c, const std::string& out, std::ostream& log) {
  c.require_known(merge({{"seed", "threads", "inputs", "best_known", "preset", "count", "episodes",
                          "horizon_mult", "agents", "tenures", "aspiration", "tie_break", "model",
                          "record_trajectories", "top_k", "distribution", "enumerate_max_n"},
                         kGraphKeys, kFeatureKeys}),
                  "bench-maxcut");
  const auto preset = c.get_string("preset", "default");
  MaxcutProtocol p;
  if (preset == "gset") {
    p = MaxcutProtocol::gset_preset();
  } else if (preset != "default") {
    throw UsageError("unknown preset '" + preset + "' (default or gset)");
  }
  p.seed = c.get_uint("seed", 0);
  p.threads = static_cast<std::size_t>(c.get_uint("threads", 0));
  p.episodes = c.get_int("episodes", p.episodes);
  p.horizon_mult = c.get_int("horizon_mult", p.horizon_mult);
  p.agents = c.get_list("agents", p.agents);
  p.aspiration = c.get_bool("aspiration", p.aspiration);
  p.tie_break = as_usage([&] { return parse_tie_break(c.get_string("tie_break", "lowest_index")); });
  p.record_trajectories = c.get_bool("record_trajectories", false);
  p.enumerate_max_n = static_cast<std::size_t>(c.get_uint("enumerate_max_n", p.enumerate_max_n));
  const FeatureSpec spec = feature_spec_from(c);

  std::map<std::string, double> references;
  if (auto path = c.get_optional("best_known")) references = parse_best_known(read_file(*path), *path);

  std::vector<MaxcutInstance> instances;
  std::string distribution;
  if (auto dir = c.get_optional("inputs")) {
    for (const auto& path : list_inputs(*dir)) {
      const auto name = instance_name(path);
      std::optional<double> ref;
      if (auto it = references.find(name); it != references.end()) ref = it->second;
      instances.push_back({name, load_gset_file(path), ref});
    }
    if (instances.empty()) throw UsageError("no graph files in '" + *dir + "'");
    distribution = c.get_string("distribution", fs::path(*dir).filename().string());
  } else {
    GenSpec g = gen_spec_from(c);
    const auto count = positive_count(c, "count", 100);
    for (std::size_t i = 0; i < count; ++i) {
      g.seed = derive_seed(p.seed, "bench-graph", i);
      const auto name = numbered("g", i, count);
      std::optional<double> ref;
      if (auto it = references.find(name); it != references.end()) ref = it->second;
      instances.push_back({name, generate(g), ref});
    }
    distribution = c.get_string("distribution", to_string(g.family) + std::to_string(g.n));
  }
  p.tenures = parse_tenures(c);
  as_usage([&] { p.validate(); });
  const LinearQ model = load_model_for(c, p.agents);

  Stopwatch clock;
  MaxcutReport r = run_maxcut_suite(instances, p, model.weights.empty() ? nullptr : &model, spec);
  r.metadata["distribution"] = distribution;
  r.metadata["instances"] = std::to_string(instances.size());
  add_config_metadata(r.metadata, c);

  write_output(out, "maxcut_results.csv", maxcut_rows_csv(r));
  write_output(out, "maxcut_results.json", maxcut_report_json(r));
  write_output(out, "maxcut_summary.csv", maxcut_summary_csv(r, distribution));
  write_output(out, "maxcut_table.csv", maxcut_table_csv(r, distribution));
  if (p.record_trajectories) {
    const auto top_k = static_cast<std::size_t>(c.get_uint("top_k", 25));
    write_output(out, "trajectories.csv", trajectories_csv(r));
    write_output(out, "intra_episode.csv", intra_episode_csv(r));
    write_output(out, "flips.csv", flips_csv(r, top_k));
  }
  for (const auto& s : r.summarize()) {
    log << s.agent << ": mean ratio " << format_double(s.mean_ratio) << " over " << s.instances
        << " instances\n";
  }
  log << "bench-maxcut finished in " << clock.seconds() << " s\n";
}

void cmd_bench_sat(const Config& c, const std::string& out, std::ostream& log) {
  c.require_known(merge({{"seed", "threads", "inputs", "distribution", "count", "trials",
                          "max_steps", "agents", "walksat_p", "freebie", "model", "label"},
                         kFeatureKeys}),
                  "bench-sat");
  SatProtocol p;
  p.seed = c.get_uint("seed", 0);
  p.threads = static_cast<std::size_t>(c.get_uint("threads", 0));
  p.trials = c.get_int("trials", p.trials);
  p.max_steps = c.get_int("max_steps", p.max_steps);
  p.agents = c.get_list("agents", p.agents);
  p.walksat.p = c.get_double("walksat_p", p.walksat.p);
  p.walksat.freebie = c.get_bool("freebie", p.walksat.freebie);
  as_usage([&] { p.validate(); });
  const FeatureSpec spec = feature_spec_from(c);

  std::vector<SatInstance> instances;
  std::string label;
  if (auto dir = c.get_optional("inputs")) {
    for (const auto& path : list_inputs(*dir, ".cnf")) {
      instances.push_back({instance_name(path), load_dimacs_file(path)});
    }
    if (instances.empty()) throw UsageError("no .cnf files in '" + *dir + "'");
    label = fs::path(*dir).filename().string();
  } else if (auto dist_text = c.get_optional("distribution")) {
    const auto dist = as_usage([&] { return CnfDistribution::parse(*dist_text); });
    const auto count = positive_count(c, "count", 100);
    auto formulas = gen_filtered(dist, count, derive_seed(p.seed, "bench-formula"));
    for (std::size_t i = 0; i < formulas.size(); ++i) {
      instances.push_back({numbered("f", i, count), std::move(formulas[i])});
    }
    label = dist.to_string();
  } else {
    throw UsageError("bench-sat requires config key 'inputs' or 'distribution'");
  }
  label = c.get_string("label", label);
  const LinearQ model = load_model_for(c, p.agents);

  Stopwatch clock;
  SatReport r = run_sat_suite(instances, p, model.weights.empty() ? nullptr : &model, spec);
  r.metadata["distribution"] = label;
  r.metadata["instances"] = std::to_string(instances.size());
  add_config_metadata(r.metadata, c);

  write_output(out, "sat_trials.csv", sat_trials_csv(r));
  write_output(out, "sat_results.json", sat_report_json(r));
  write_output(out, "sat_summary.csv", sat_summary_csv(r, label));
  write_output(out, "sat_table.csv", sat_table_csv(r, label));
  for (const auto& s : r.summarize()) {
    log << s.agent << ": mean " << format_double(s.mean_steps) << " median "
        << format_double(s.median_of_medians) << " solved " << format_double(s.percent_solved)
        << "%\n";
  }
  log << "bench-sat finished in " << clock.seconds() << " s\n";
}

void cmd_stats(const Config& c, const std::string& out, std::ostream& log) {
  c.require_known({"seed", "report", "top_k", "distribution"}, "stats");
  const auto path = c.get_optional("report");
  if (!path) throw UsageError("stats requires config key 'report'");
  const std::string text = read_file(*path);
  try {
    const MaxcutReport r = load_maxcut_report_json(text);
    const auto dist = c.get_string("distribution", r.metadata.count("distribution")
                                                       ? r.metadata.at("distribution")
                                                       : "suite");
    write_output(out, "maxcut_results.csv", maxcut_rows_csv(r));
    write_output(out, "maxcut_summary.csv", maxcut_summary_csv(r, dist));
    write_output(out, "maxcut_table.csv", maxcut_table_csv(r, dist));
    if (!r.trajectories.empty()) {
      write_output(out, "trajectories.csv", trajectories_csv(r));
      write_output(out, "intra_episode.csv", intra_episode_csv(r));
      write_output(out, "flips.csv", flips_csv(r, static_cast<std::size_t>(c.get_uint("top_k", 25))));
    }
    log << "stats: Max-Cut report with " << r.rows.size() << " rows\n";
    return;
  } catch (const ParseError&) {
    // Not a Max-Cut report; try the SAT schema below.
  }
  const SatReport r = load_sat_report_json(text);
  const auto dist = c.get_string(
      "distribution", r.metadata.count("distribution") ? r.metadata.at("distribution") : "suite");
  write_output(out, "sat_trials.csv", sat_trials_csv(r));
  write_output(out, "sat_summary.csv", sat_summary_csv(r, dist));
  write_output(out, "sat_table.csv", sat_table_csv(r, dist));
  log << "stats: SAT report with " << r.trials.size() << " trials\n";
}

using Handler = void (*)(const Config&, const std::string&, std::ostream&);

const std::vector<std::pair<std::string, Handler>>& handlers() {
  static const std::vector<std::pair<std::string, Handler>> table = {
      {"gen-graphs", cmd_gen_graphs},     {"gen-cnf", cmd_gen_cnf},
      {"train-maxcut", cmd_train_maxcut}, {"train-sat", cmd_train_sat},
      {"bench-maxcut", cmd_bench_maxcut}, {"bench-sat", cmd_bench_sat},
      {"stats", cmd_stats},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : handlers()) out.push_back(name);
    return out;
  }();
  return names;
}

void run_command(std::string_view command, const Config& cfg, const std::string& out_dir,
                 std::ostream& log) {
  for (const auto& [name, fn] : handlers()) {
    if (name != command) continue;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());
    fn(cfg, out_dir, log);
    return;
  }
  throw UsageError("unknown command '" + std::string(command) + "'");
}

std::map<std::string, double> parse_best_known(std::string_view text, const std::string& source) {
  std::map<std::string, double> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find('\n', start), text.size());
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tokens = split(line);
    if (tokens.empty()) continue;
    double value = 0.0;
    if (tokens.size() != 2 || !parse_double(tokens[1], value)) {
      throw ParseError(line_no, "expected '<instance> <value>'", source);
    }
    if (!out.emplace(std::string(tokens[0]), value).second) {
      throw ParseError(line_no, "duplicate instance '" + std::string(tokens[0]) + "'", source);
    }
  }
  return out;
}

std::vector<std::string> list_inputs(const std::string& dir, std::string_view extension) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("input directory '" + dir + "' does not exist");
  std::vector<std::string> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension().string();
    if (!extension.empty() && ext != extension) continue;
    if (extension.empty() && (ext == ".csv" || ext == ".json")) continue;
    out.push_back(entry.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string instance_name(const std::string& path) { return fs::path(path).stem().string(); }

}  // namespace softtabu
