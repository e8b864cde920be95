#ifndef SOFTTABU_SOFTTABU_H
#define SOFTTABU_SOFTTABU_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SOFTTABU_BUILDING_LIBRARY)
#    define ST_API __declspec(dllexport)
#  else
#    define ST_API __declspec(dllimport)
#  endif
#else
#  define ST_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Return codes double as CLI exit codes. */
typedef enum st_status {
  ST_OK = 0,
  ST_USAGE_ERROR = 1,
  ST_DATA_ERROR = 2,
  ST_INTERNAL_ERROR = 3
} st_status;

/* Message of the last failed call on this thread; "" after a success. */
ST_API const char* st_last_error(void);
ST_API const char* st_version(void);

/* Handles are opaque; each *_free accepts NULL. */
typedef struct st_config st_config;
typedef struct st_graph st_graph;
typedef struct st_formula st_formula;
typedef struct st_model st_model;

/* ---- configuration and commands ---- */

ST_API st_status st_config_create(st_config** out);
ST_API st_status st_config_load(const char* path, st_config** out);
/* "key=value"; later assignments replace earlier ones. */
ST_API st_status st_config_set(st_config* cfg, const char* assignment);
ST_API void st_config_free(st_config* cfg);

/* Runs a subcommand; progress lines are written to stderr. */
ST_API st_status st_run(const char* command, const st_config* cfg, const char* out_dir);
ST_API size_t st_command_count(void);
ST_API const char* st_command_name(size_t index);

/* ---- graphs and Max-Cut ---- */

/* family "er" or "ba"; weights "unit" or "signed_unit". */
ST_API st_status st_graph_generate(const char* family, size_t n, double param, const char* weights,
                                   uint64_t seed, st_graph** out);
ST_API st_status st_graph_load(const char* path, st_graph** out);
ST_API st_status st_graph_save(const st_graph* g, const char* path);
ST_API size_t st_graph_num_vertices(const st_graph* g);
ST_API size_t st_graph_num_edges(const st_graph* g);
ST_API void st_graph_free(st_graph* g);

/* Exact optimum; n must not exceed 24. side may be NULL or hold n bytes. */
ST_API st_status st_graph_brute_force(const st_graph* g, double* value, uint8_t* side);
ST_API st_status st_maxcut_mca(const st_graph* g, uint64_t seed, double* value);
ST_API st_status st_maxcut_tabu(const st_graph* g, int64_t tenure, int64_t max_steps,
                                uint64_t seed, double* value);

/* ---- formulas and SAT ---- */

/* dist like "rand3:50:213"; filtered formulas are satisfiable. */
ST_API st_status st_formula_generate(const char* dist, uint64_t seed, int filtered,
                                     st_formula** out);
ST_API st_status st_formula_load(const char* path, st_formula** out);
ST_API st_status st_formula_save(const st_formula* f, const char* path);
ST_API size_t st_formula_num_vars(const st_formula* f);
ST_API size_t st_formula_num_clauses(const st_formula* f);
ST_API void st_formula_free(st_formula* f);

ST_API st_status st_formula_dpll(const st_formula* f, int* satisfiable);
ST_API st_status st_sat_walksat(const st_formula* f, double p, int64_t max_steps, uint64_t seed,
                                int* solved, int64_t* steps);

/* ---- SoftTabu model ---- */

ST_API st_status st_model_create(double gain_weight, double time_weight, double bias,
                                 st_model** out);
ST_API st_status st_model_load(const char* path, st_model** out);
ST_API st_status st_model_save(const st_model* m, const char* path);
ST_API st_status st_model_get(const st_model* m, double* gain_weight, double* time_weight,
                              double* bias);
ST_API void st_model_free(st_model* m);

/* Best cut over `episodes` greedy rollouts of horizon_mult * n steps. */
ST_API st_status st_softtabu_maxcut(const st_model* m, const st_graph* g, int64_t episodes,
                                    int64_t horizon_mult, uint64_t seed, double* value);
/* One greedy SAT rollout capped at max_steps. */
ST_API st_status st_softtabu_sat(const st_model* m, const st_formula* f, int64_t max_steps,
                                 uint64_t seed, int* solved, int64_t* steps);

#ifdef __cplusplus
}
#endif

#endif /* SOFTTABU_SOFTTABU_H */
