#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "softtabu/cnf.hpp"
#include "softtabu/graph.hpp"

namespace softtabu {

enum class CnfFamily { RandK, Clique, Color, Domset };

// A formula distribution written "family:params", e.g. rand3:50:213,
// clique3:20:0.05, color5:20:0.5, domset4:12:0.2.
struct CnfDistribution {
  CnfFamily family = CnfFamily::RandK;
  std::size_t k = 3;
  std::size_t n = 50;    // variables (RandK) or graph vertices
  double param = 213.0;  // clause count (RandK) or edge probability

  static CnfDistribution parse(std::string_view spec);
  std::string to_string() const;
  void validate() const;
};

// Each clause draws k distinct variables uniformly and negates each with
// probability 1/2. Clauses may repeat across the formula.
CnfFormula gen_rand_k(std::size_t k, std::size_t n_vars, std::size_t n_clauses,
                      std::uint64_t seed);
inline CnfFormula gen_rand3(std::size_t n_vars, std::size_t n_clauses, std::uint64_t seed) {
  return gen_rand_k(3, n_vars, n_clauses, seed);
}

// G(n, p) with unit weights; p may be 0.
Graph sample_gnp(std::size_t n, double p, std::uint64_t seed);

// Slot encoding: x(i,v) = i*n + v + 1. Satisfiable iff g has a k-clique.
CnfFormula encode_clique(const Graph& g, std::size_t k);
// x(v,c) = v*k + c + 1. Satisfiable iff g is k-colourable.
CnfFormula encode_coloring(const Graph& g, std::size_t k);
// Slot encoding: x(i,v) = i*n + v + 1. Satisfiable iff g has a dominating set
// of size at most k.
CnfFormula encode_domset(const Graph& g, std::size_t k);

CnfFormula gen_clique(std::size_t k, std::size_t n, double p, std::uint64_t seed);
CnfFormula gen_color(std::size_t k, std::size_t n, double p, std::uint64_t seed);
CnfFormula gen_domset(std::size_t k, std::size_t n, double p, std::uint64_t seed);

CnfFormula sample_formula(const CnfDistribution& dist, std::uint64_t seed);

// Rejection-samples until `count` formulas pass dpll_sat. max_attempts == 0
// means 50 * count + 1000. Throws Error with the acceptance rate when the
// budget runs out.
std::vector<CnfFormula> gen_filtered(const CnfDistribution& dist, std::size_t count,
                                     std::uint64_t seed, std::size_t max_attempts = 0);

}  // namespace softtabu
