#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace softtabu {

// DIMACS literal: +v or -v with v in [1, n_vars].
using Literal = int;
using Clause = std::vector<Literal>;
using Assignment = std::vector<std::uint8_t>;  // index v-1 holds variable v

inline std::size_t var_index(Literal l) { return static_cast<std::size_t>(std::abs(l)) - 1; }

inline bool literal_true(Literal l, std::span<const std::uint8_t> assignment) {
  return (assignment[var_index(l)] != 0) == (l > 0);
}

class CnfFormula {
 public:
  CnfFormula() = default;

  // Throws ValidationError on literal 0, out-of-range variables or a repeated
  // literal inside a clause.
  CnfFormula(std::size_t n_vars, std::vector<Clause> clauses);

  std::size_t num_vars() const noexcept { return n_vars_; }
  std::size_t num_clauses() const noexcept { return clauses_.size(); }
  const std::vector<Clause>& clauses() const noexcept { return clauses_; }
  const Clause& clause(std::size_t i) const { return clauses_[i]; }

  // Ids of clauses mentioning variable index v (either sign), ascending, unique.
  std::span<const std::uint32_t> occurrences(std::size_t v) const {
    return {occ_.data() + occ_offsets_[v], occ_.data() + occ_offsets_[v + 1]};
  }

 private:
  std::size_t n_vars_ = 0;
  std::vector<Clause> clauses_;
  std::vector<std::size_t> occ_offsets_{0};
  std::vector<std::uint32_t> occ_;
};

// "p cnf <vars> <clauses>" header, 0-terminated clauses, "c" comments.
CnfFormula parse_dimacs(std::string_view text);
CnfFormula load_dimacs_file(const std::string& path);
std::string emit_dimacs(const CnfFormula& f);

bool satisfies(const CnfFormula& f, std::span<const std::uint8_t> assignment);

// Incremental local-search state. break_count(v) counts clauses whose only true
// literal is on v; make_count(v) counts unsatisfied clauses mentioning v.
class SatState {
 public:
  static constexpr std::int64_t kNeverFlipped = -1;

  SatState(const CnfFormula& f, Assignment assignment);

  // Returns make - break of v before the flip (the change in sat_count).
  int flip(std::size_t v);

  const CnfFormula& formula() const noexcept { return *formula_; }
  std::size_t num_vars() const noexcept { return assignment_.size(); }
  const Assignment& assignment() const noexcept { return assignment_; }
  std::size_t sat_count() const noexcept { return formula_->num_clauses() - unsat_.size(); }
  bool satisfied() const noexcept { return unsat_.empty(); }
  std::uint32_t true_count(std::size_t c) const { return true_count_[c]; }
  int break_count(std::size_t v) const { return break_[v]; }
  int make_count(std::size_t v) const { return make_[v]; }
  int score(std::size_t v) const { return make_[v] - break_[v]; }
  std::int64_t last_flip(std::size_t v) const { return last_flip_[v]; }
  std::int64_t step() const noexcept { return step_; }
  std::size_t best_sat_count() const noexcept { return best_sat_count_; }

  // Currently unsatisfied clause ids, in no particular order.
  std::span<const std::uint32_t> unsat_clauses() const noexcept { return unsat_; }

  int max_score() const;
  std::uint64_t fingerprint() const;

 private:
  void add_contribution(std::size_t c, int sign);
  void mark_unsat(std::size_t c);
  void mark_sat(std::size_t c);

  const CnfFormula* formula_;
  Assignment assignment_;
  std::vector<std::uint32_t> true_count_;
  std::vector<std::size_t> true_var_sum_;  // sum of var indices of true literals
  std::vector<int> break_;
  std::vector<int> make_;
  std::vector<std::int64_t> last_flip_;
  std::vector<std::uint32_t> unsat_;
  std::vector<std::int64_t> unsat_pos_;  // -1 when satisfied
  std::int64_t step_ = 0;
  std::size_t best_sat_count_ = 0;
};

inline constexpr std::size_t kDefaultDpllVarCap = 200;

// Complete DPLL: unit propagation, pure-literal elimination, MOMS branching.
// Throws ValidationError when num_vars exceeds var_cap. On SAT, writes a
// satisfying assignment to *model when non-null.
bool dpll_sat(const CnfFormula& f, std::size_t var_cap = kDefaultDpllVarCap,
              Assignment* model = nullptr);

}  // namespace softtabu
