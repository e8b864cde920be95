#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "softtabu/commands.hpp"
#include "softtabu/config.hpp"
#include "softtabu/errors.hpp"
#include "softtabu/softtabu.h"

using namespace softtabu;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("softtabu_unit_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void run(const std::string& cmd, const Config& c, const fs::path& out) {
  std::ostringstream log;
  run_command(cmd, c, out.string(), log);
}

}  // namespace

TEST_CASE("config parsing") {
  const auto c = Config::parse("# comment\nepisodes = 40\n\nagents=mca, tabu\nflag = yes\n");
  CHECK(c.get_int("episodes", 0) == 40);
  CHECK(c.get_list("agents", {}) == std::vector<std::string>{"mca", "tabu"});
  CHECK(c.get_bool("flag", false));
  CHECK(c.get_double("missing", 2.5) == 2.5);
  CHECK_THROWS_AS(Config::parse("a = 1\na = 2\n"), ParseError);
  CHECK_THROWS_AS(Config::parse("no equals sign\n"), ParseError);
  CHECK_THROWS_AS(c.get_uint("agents", 0), UsageError);
  CHECK_THROWS_AS(c.get_bool("episodes", false), UsageError);
  CHECK_THROWS_AS(c.require_known({"episodes"}, "test"), UsageError);
  Config d;
  d.set_assignment("seed=4");
  CHECK(d.get_uint("seed", 0) == 4);
  CHECK_THROWS_AS(d.set_assignment("seed"), UsageError);
  CHECK_THROWS_AS(Config::load_file("/nonexistent/cfg.txt"), IoError);
}

TEST_CASE("config builders") {
  auto c = Config::parse("learning_rate = 0.01\nepisodes = 7\nseed = 3\ntime_scale = raw\n"
                         "family = ba\nn = 30\n");
  const auto t = train_config_from(c);
  CHECK(t.learning_rate == 0.01);
  CHECK(t.episodes == 7);
  CHECK(t.seed == 3);
  CHECK(feature_spec_from(c).time_scale == TimeScale::Raw);
  const auto g = gen_spec_from(c);
  CHECK(g.family == GraphFamily::BA);
  CHECK(g.n == 30);
  CHECK(g.param == 4);
  c.set("discount", "1.5");
  CHECK_THROWS_AS(train_config_from(c), UsageError);
}

TEST_CASE("best-known reference file") {
  const auto refs = parse_best_known("# name value\nG1 11624\nG2 11620\n");
  CHECK(refs.size() == 2);
  CHECK(refs.at("G1") == 11624);
  CHECK_THROWS_AS(parse_best_known("G1\n"), ParseError);
  CHECK_THROWS_AS(parse_best_known("G1 1\nG1 2\n"), ParseError);
  const auto shipped = parse_best_known(slurp(fs::path(SOFTTABU_SOURCE_DIR) / "data/gset_best_known.txt"));
  CHECK(shipped.at("G14") == 3064);
  CHECK(shipped.size() >= 42);
}

TEST_CASE("unknown commands and keys are usage errors") {
  const auto out = scratch_dir("usage");
  CHECK_THROWS_AS(run("solve", Config{}, out), UsageError);
  CHECK_THROWS_AS(run("gen-graphs", Config::parse("colour = red\n"), out), UsageError);
  CHECK_THROWS_AS(run("gen-cnf", Config{}, out), UsageError);
  CHECK_THROWS_AS(run("bench-maxcut", Config::parse("count = 1\nn = 5\n"), out), UsageError);
  CHECK(command_names().size() == 7);
}

TEST_CASE("gen-graphs then bench-maxcut from files") {
  const auto dir = scratch_dir("graphs");
  run("gen-graphs", Config::parse("seed = 1\ncount = 3\nn = 12\nparam = 0.3\n"), dir / "g");
  const auto files = list_inputs((dir / "g").string(), ".gset");
  REQUIRE(files.size() == 3);
  CHECK(instance_name(files[0]) == "g000");
  CHECK(fs::exists(dir / "g" / "graphs.csv"));
  auto c = Config::parse("agents = mca,tabu\nepisodes = 2\n");
  c.set("inputs", (dir / "g").string());
  run("bench-maxcut", c, dir / "r");
  for (const char* f : {"maxcut_results.csv", "maxcut_results.json", "maxcut_summary.csv",
                        "maxcut_table.csv"}) {
    CHECK(fs::exists(dir / "r" / f));
  }
  CHECK_THROWS_AS(list_inputs((dir / "missing").string()), IoError);
}

TEST_CASE("bench-maxcut is byte-deterministic and stats re-emits the CSVs") {
  const auto dir = scratch_dir("determinism");
  const auto c = Config::parse(
      "seed = 5\ncount = 3\nn = 14\nepisodes = 2\nagents = mca,tabu\nrecord_trajectories = true\n");
  run("bench-maxcut", c, dir / "a");
  run("bench-maxcut", c, dir / "b");
  for (const char* f : {"maxcut_results.csv", "maxcut_results.json", "trajectories.csv",
                        "flips.csv", "intra_episode.csv"}) {
    CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
  }
  Config s;
  s.set("report", (dir / "a" / "maxcut_results.json").string());
  run("stats", s, dir / "s");
  for (const char* f : {"maxcut_results.csv", "maxcut_summary.csv", "maxcut_table.csv",
                        "trajectories.csv", "flips.csv"}) {
    CHECK(slurp(dir / "a" / f) == slurp(dir / "s" / f));
  }
}

TEST_CASE("train, generate and bench SAT through the commands") {
  const auto dir = scratch_dir("sat");
  run("train-sat",
      Config::parse("seed = 2\ndistribution = rand3:12:50\nepisodes = 5\nbatch_size = 8\n"),
      dir / "m");
  CHECK(fs::exists(dir / "m" / "model.linq"));
  CHECK(fs::exists(dir / "m" / "train_log.csv"));
  run("gen-cnf", Config::parse("seed = 2\ndistribution = rand3:12:50\ncount = 4\n"), dir / "f");
  CHECK(list_inputs((dir / "f").string(), ".cnf").size() == 4);
  auto c = Config::parse("trials = 3\nmax_steps = 200\nagents = walksat,softtabu\n");
  c.set("inputs", (dir / "f").string());
  c.set("model", (dir / "m" / "model.linq").string());
  run("bench-sat", c, dir / "r");
  CHECK(fs::exists(dir / "r" / "sat_trials.csv"));
  Config s;
  s.set("report", (dir / "r" / "sat_results.json").string());
  run("stats", s, dir / "s");
  CHECK(slurp(dir / "r" / "sat_trials.csv") == slurp(dir / "s" / "sat_trials.csv"));
  CHECK(slurp(dir / "r" / "sat_summary.csv") == slurp(dir / "s" / "sat_summary.csv"));
}

TEST_CASE("C API status codes and handles") {
  CHECK(std::string(st_version()) == "1.0.0");
  st_graph* g = nullptr;
  REQUIRE(st_graph_generate("er", 10, 0.5, "unit", 3, &g) == ST_OK);
  CHECK(st_graph_num_vertices(g) == 10);
  double opt = 0, mca = 0, tabu = 0, soft = 0;
  CHECK(st_graph_brute_force(g, &opt, nullptr) == ST_OK);
  CHECK(st_maxcut_mca(g, 1, &mca) == ST_OK);
  CHECK(st_maxcut_tabu(g, 3, 40, 1, &tabu) == ST_OK);
  CHECK(mca <= opt);
  CHECK(tabu <= opt);
  st_model* m = nullptr;
  REQUIRE(st_model_create(1.0, 0.0, 0.0, &m) == ST_OK);
  CHECK(st_softtabu_maxcut(m, g, 5, 2, 1, &soft) == ST_OK);
  CHECK(soft <= opt);
  CHECK(st_maxcut_tabu(g, 0, 40, 1, &tabu) == ST_USAGE_ERROR);
  CHECK(std::string(st_last_error()).find("tenure") != std::string::npos);
  CHECK(st_graph_generate("ws", 10, 0.5, "unit", 3, nullptr) == ST_USAGE_ERROR);
  st_graph* missing = nullptr;
  CHECK(st_graph_load("/nonexistent/x.gset", &missing) == ST_DATA_ERROR);
  CHECK(missing == nullptr);

  st_formula* f = nullptr;
  REQUIRE(st_formula_generate("rand3:15:60", 2, 1, &f) == ST_OK);
  int sat = 0, solved = 0;
  std::int64_t steps = 0;
  CHECK(st_formula_dpll(f, &sat) == ST_OK);
  CHECK(sat == 1);
  CHECK(st_sat_walksat(f, 0.5, 100000, 1, &solved, &steps) == ST_OK);
  CHECK(solved == 1);
  CHECK(st_softtabu_sat(m, f, 50, 1, &solved, &steps) == ST_OK);
  CHECK(steps <= 50);

  double gw = 0, tw = 0, b = 0;
  CHECK(st_model_get(m, &gw, &tw, &b) == ST_OK);
  CHECK(gw == 1.0);
  st_model_free(m);
  st_formula_free(f);
  st_graph_free(g);
  st_graph_free(nullptr);

  st_config* cfg = nullptr;
  REQUIRE(st_config_create(&cfg) == ST_OK);
  CHECK(st_config_set(cfg, "nonsense") == ST_USAGE_ERROR);
  CHECK(st_run("solve", cfg, scratch_dir("capi").c_str()) == ST_USAGE_ERROR);
  st_config_free(cfg);
  CHECK(st_command_count() == 7);
  CHECK(std::string(st_command_name(0)) == "gen-graphs");
  CHECK(st_command_name(99) == nullptr);
}

TEST_CASE("command-line tool exit codes") {
  const auto dir = scratch_dir("cli");
  const std::string cli = SOFTTABU_CLI_PATH;
  auto status = [](const std::string& cmd) {
    const int raw = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status(cli + " gen-graphs --seed 1 --set count=2 --set n=8 --out " + (dir / "g").string()) ==
        0);
  CHECK(fs::exists(dir / "g" / "g000.gset"));
  CHECK(status(cli + " gen-graphs --set colour=red --out " + dir.string()) == 1);
  CHECK(status(cli + " frobnicate") == 1);
  CHECK(status(cli + " bench-maxcut --set inputs=" + (dir / "none").string() + " --out " +
               dir.string()) == 2);
}
