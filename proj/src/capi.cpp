#include "softtabu/softtabu.h"

#include <iostream>
#include <memory>
#include <string>

#include "softtabu/cnf_generators.hpp"
#include "softtabu/commands.hpp"
#include "softtabu/config.hpp"
#include "softtabu/errors.hpp"
#include "softtabu/maxcut_env.hpp"
#include "softtabu/sat_search.hpp"
#include "softtabu/text.hpp"

struct st_config {
  softtabu::Config value;
};
struct st_graph {
  softtabu::Graph value;
};
struct st_formula {
  softtabu::CnfFormula value;
};
struct st_model {
  softtabu::LinearQ value;
};

namespace {

thread_local std::string g_last_error;

st_status fail(st_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Maps the exception hierarchy onto status codes.
template <typename Fn>
st_status guarded(Fn&& fn) noexcept {
  try {
    g_last_error.clear();
    fn();
    return ST_OK;
  } catch (const softtabu::UsageError& e) {
    return fail(ST_USAGE_ERROR, e.what());
  } catch (const softtabu::ValidationError& e) {
    return fail(ST_USAGE_ERROR, e.what());
  } catch (const softtabu::ParseError& e) {
    return fail(ST_DATA_ERROR, e.what());
  } catch (const softtabu::IoError& e) {
    return fail(ST_DATA_ERROR, e.what());
  } catch (const softtabu::TrainingError& e) {
    return fail(ST_INTERNAL_ERROR, e.what());
  } catch (const softtabu::Error& e) {
    return fail(ST_DATA_ERROR, e.what());
  } catch (const std::exception& e) {
    return fail(ST_INTERNAL_ERROR, std::string("internal error: ") + e.what());
  } catch (...) {
    return fail(ST_INTERNAL_ERROR, "internal error: unknown exception");
  }
}

template <typename T>
const T& deref(const T* p, const char* what) {
  if (p == nullptr) throw softtabu::UsageError(std::string(what) + " handle is NULL");
  return *p;
}

void need(const void* p, const char* what) {
  if (p == nullptr) throw softtabu::UsageError(std::string(what) + " must not be NULL");
}

}  // namespace

extern "C" {

const char* st_last_error(void) { return g_last_error.c_str(); }

const char* st_version(void) { return "1.0.0"; }

st_status st_config_create(st_config** out) {
  return guarded([&] {
    need(out, "out");
    *out = new st_config{};
  });
}

st_status st_config_load(const char* path, st_config** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new st_config{softtabu::Config::load_file(path)};
  });
}

st_status st_config_set(st_config* cfg, const char* assignment) {
  return guarded([&] {
    need(cfg, "config");
    need(assignment, "assignment");
    cfg->value.set_assignment(assignment);
  });
}

void st_config_free(st_config* cfg) { delete cfg; }

st_status st_run(const char* command, const st_config* cfg, const char* out_dir) {
  return guarded([&] {
    need(command, "command");
    need(out_dir, "out_dir");
    static const softtabu::Config empty;
    softtabu::run_command(command, cfg ? cfg->value : empty, out_dir, std::cerr);
  });
}

size_t st_command_count(void) { return softtabu::command_names().size(); }

const char* st_command_name(size_t index) {
  const auto& names = softtabu::command_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

st_status st_graph_generate(const char* family, size_t n, double param, const char* weights,
                            uint64_t seed, st_graph** out) {
  return guarded([&] {
    need(family, "family");
    need(weights, "weights");
    need(out, "out");
    softtabu::GenSpec spec;
    spec.family = softtabu::parse_graph_family(family);
    spec.n = n;
    spec.param = param;
    spec.weights = softtabu::parse_weight_scheme(weights);
    spec.seed = seed;
    *out = new st_graph{softtabu::generate(spec)};
  });
}

st_status st_graph_load(const char* path, st_graph** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new st_graph{softtabu::load_gset_file(path)};
  });
}

st_status st_graph_save(const st_graph* g, const char* path) {
  return guarded([&] {
    need(path, "path");
    softtabu::write_file(path, softtabu::save_gset(deref(g, "graph").value));
  });
}

size_t st_graph_num_vertices(const st_graph* g) { return g ? g->value.num_vertices() : 0; }
size_t st_graph_num_edges(const st_graph* g) { return g ? g->value.num_edges() : 0; }
void st_graph_free(st_graph* g) { delete g; }

st_status st_graph_brute_force(const st_graph* g, double* value, uint8_t* side) {
  return guarded([&] {
    need(value, "value");
    const auto sol = softtabu::brute_force_optimum(deref(g, "graph").value);
    *value = sol.value;
    if (side != nullptr) std::copy(sol.side.begin(), sol.side.end(), side);
  });
}

st_status st_maxcut_mca(const st_graph* g, uint64_t seed, double* value) {
  return guarded([&] {
    need(value, "value");
    const auto& graph = deref(g, "graph").value;
    softtabu::Rng rng(seed);
    *value = softtabu::mca(graph, softtabu::random_bits(graph.num_vertices(), rng)).value;
  });
}

st_status st_maxcut_tabu(const st_graph* g, int64_t tenure, int64_t max_steps, uint64_t seed,
                         double* value) {
  return guarded([&] {
    need(value, "value");
    const auto& graph = deref(g, "graph").value;
    softtabu::TabuConfig cfg;
    cfg.tenure = tenure;
    cfg.max_steps = max_steps;
    softtabu::Rng rng(seed);
    *value = softtabu::tabu_search(graph, softtabu::random_bits(graph.num_vertices(), rng), cfg,
                                   nullptr, false)
                 .value;
  });
}

st_status st_formula_generate(const char* dist, uint64_t seed, int filtered, st_formula** out) {
  return guarded([&] {
    need(dist, "dist");
    need(out, "out");
    const auto d = softtabu::CnfDistribution::parse(dist);
    if (filtered) {
      *out = new st_formula{std::move(softtabu::gen_filtered(d, 1, seed).front())};
    } else {
      *out = new st_formula{softtabu::sample_formula(d, seed)};
    }
  });
}

st_status st_formula_load(const char* path, st_formula** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new st_formula{softtabu::load_dimacs_file(path)};
  });
}

st_status st_formula_save(const st_formula* f, const char* path) {
  return guarded([&] {
    need(path, "path");
    softtabu::write_file(path, softtabu::emit_dimacs(deref(f, "formula").value));
  });
}

size_t st_formula_num_vars(const st_formula* f) { return f ? f->value.num_vars() : 0; }
size_t st_formula_num_clauses(const st_formula* f) { return f ? f->value.num_clauses() : 0; }
void st_formula_free(st_formula* f) { delete f; }

st_status st_formula_dpll(const st_formula* f, int* satisfiable) {
  return guarded([&] {
    need(satisfiable, "satisfiable");
    *satisfiable = softtabu::dpll_sat(deref(f, "formula").value) ? 1 : 0;
  });
}

st_status st_sat_walksat(const st_formula* f, double p, int64_t max_steps, uint64_t seed,
                         int* solved, int64_t* steps) {
  return guarded([&] {
    need(solved, "solved");
    need(steps, "steps");
    softtabu::WalksatConfig cfg;
    cfg.p = p;
    cfg.max_steps = max_steps;
    const auto run = softtabu::walksat(deref(f, "formula").value, cfg, seed);
    *solved = run.solved ? 1 : 0;
    *steps = run.steps;
  });
}

st_status st_model_create(double gain_weight, double time_weight, double bias, st_model** out) {
  return guarded([&] {
    need(out, "out");
    *out = new st_model{softtabu::LinearQ({gain_weight, time_weight}, bias)};
  });
}

st_status st_model_load(const char* path, st_model** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    auto q = softtabu::load_model_file(path);
    if (q.num_features() != softtabu::kSoftTabuFeatures) {
      throw softtabu::ParseError(0, "SoftTabu model must have 2 features", path);
    }
    *out = new st_model{std::move(q)};
  });
}

st_status st_model_save(const st_model* m, const char* path) {
  return guarded([&] {
    need(path, "path");
    softtabu::write_file(path, softtabu::save_model(deref(m, "model").value));
  });
}

st_status st_model_get(const st_model* m, double* gain_weight, double* time_weight, double* bias) {
  return guarded([&] {
    const auto& q = deref(m, "model").value;
    if (gain_weight) *gain_weight = q.weights.at(0);
    if (time_weight) *time_weight = q.weights.at(1);
    if (bias) *bias = q.bias;
  });
}

void st_model_free(st_model* m) { delete m; }

st_status st_softtabu_maxcut(const st_model* m, const st_graph* g, int64_t episodes,
                             int64_t horizon_mult, uint64_t seed, double* value) {
  return guarded([&] {
    need(value, "value");
    *value = softtabu::evaluate_maxcut(deref(m, "model").value, deref(g, "graph").value, episodes,
                                       horizon_mult, seed, {}, false)
                 .best_value;
  });
}

st_status st_softtabu_sat(const st_model* m, const st_formula* f, int64_t max_steps,
                          uint64_t seed, int* solved, int64_t* steps) {
  return guarded([&] {
    need(solved, "solved");
    need(steps, "steps");
    const auto recs = softtabu::softtabu_sat_solve(deref(m, "model").value,
                                                   deref(f, "formula").value, 1, max_steps, seed);
    *solved = recs.front().solved ? 1 : 0;
    *steps = recs.front().steps;
  });
}

}  // extern "C"
