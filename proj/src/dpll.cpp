#include <algorithm>
#include <cstdint>
#include <vector>

#include "softtabu/cnf.hpp"
#include "softtabu/errors.hpp"

namespace softtabu {

namespace {

constexpr std::int8_t kUnassigned = -1;

std::size_t lit_slot(Literal l) { return 2 * var_index(l) + (l < 0 ? 1 : 0); }

class Dpll {
 public:
  explicit Dpll(const CnfFormula& f)
      : f_(f), value_(f.num_vars(), kUnassigned), lit_occ_(2 * f.num_vars()) {
    for (std::size_t c = 0; c < f.num_clauses(); ++c) {
      for (Literal l : f.clause(c)) lit_occ_[lit_slot(l)].push_back(static_cast<std::uint32_t>(c));
    }
  }

  bool solve() {
    // Root-level units and empty clauses.
    for (std::size_t c = 0; c < f_.num_clauses(); ++c) {
      const auto& cl = f_.clause(c);
      if (cl.empty()) return false;
      if (cl.size() == 1 && !assign_and_propagate(cl[0])) return false;
    }
    return search();
  }

  Assignment model() const {
    Assignment a(value_.size());
    for (std::size_t v = 0; v < value_.size(); ++v) a[v] = value_[v] == 1 ? 1 : 0;
    return a;
  }

 private:
  bool is_true(Literal l) const {
    const auto x = value_[var_index(l)];
    return x != kUnassigned && (x == 1) == (l > 0);
  }
  bool is_false(Literal l) const {
    const auto x = value_[var_index(l)];
    return x != kUnassigned && (x == 1) != (l > 0);
  }

  void set(Literal l) {
    value_[var_index(l)] = l > 0 ? 1 : 0;
    trail_.push_back(l);
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      value_[var_index(trail_.back())] = kUnassigned;
      trail_.pop_back();
    }
  }

  // Assigns l and propagates units to fixpoint. False on conflict.
  bool assign_and_propagate(Literal l) {
    if (is_true(l)) return true;
    if (is_false(l)) return false;
    std::size_t head = trail_.size();
    set(l);
    while (head < trail_.size()) {
      const Literal falsified = -trail_[head++];
      for (std::uint32_t c : lit_occ_[lit_slot(falsified)]) {
        Literal unit = 0;
        std::size_t open = 0;
        bool sat = false;
        for (Literal x : f_.clause(c)) {
          if (is_true(x)) {
            sat = true;
            break;
          }
          if (!is_false(x)) {
            ++open;
            unit = x;
          }
        }
        if (sat) continue;
        if (open == 0) return false;
        if (open == 1) set(unit);
      }
    }
    return true;
  }

  bool search() {
    // One pass over open clauses: satisfaction check, literal polarities and
    // MOMS scores (occurrences in the shortest open clauses).
    std::vector<std::uint8_t> polarity(value_.size(), 0);
    std::vector<std::uint32_t> moms(2 * value_.size(), 0);
    std::size_t shortest = SIZE_MAX;
    bool all_sat = true;
    for (std::size_t c = 0; c < f_.num_clauses(); ++c) {
      const auto& cl = f_.clause(c);
      if (std::any_of(cl.begin(), cl.end(), [&](Literal x) { return is_true(x); })) continue;
      all_sat = false;
      std::size_t open = 0;
      for (Literal x : cl) {
        if (value_[var_index(x)] == kUnassigned) {
          ++open;
          polarity[var_index(x)] |= x > 0 ? 1U : 2U;
        }
      }
      if (open == 0) return false;
      if (open < shortest) {
        shortest = open;
        std::fill(moms.begin(), moms.end(), 0);
      }
      if (open == shortest) {
        for (Literal x : cl) {
          if (value_[var_index(x)] == kUnassigned) ++moms[lit_slot(x)];
        }
      }
    }
    if (all_sat) return true;

    const std::size_t mark = trail_.size();
    bool assigned_pure = false;
    for (std::size_t v = 0; v < value_.size(); ++v) {
      if (polarity[v] == 1 || polarity[v] == 2) {
        const auto l = static_cast<Literal>(v + 1);
        if (!assign_and_propagate(polarity[v] == 1 ? l : -l)) {
          undo_to(mark);
          return false;
        }
        assigned_pure = true;
      }
    }
    if (assigned_pure) {
      if (search()) return true;
      undo_to(mark);
      return false;
    }

    std::size_t best_var = value_.size();
    std::uint64_t best_score = 0;
    for (std::size_t v = 0; v < value_.size(); ++v) {
      if (value_[v] != kUnassigned) continue;
      const std::uint64_t pos = moms[2 * v];
      const std::uint64_t neg = moms[2 * v + 1];
      const std::uint64_t score = (pos + neg) * 1024 + pos * neg;
      if (best_var == value_.size() || score > best_score) {
        best_var = v;
        best_score = score;
      }
    }
    const auto pos_lit = static_cast<Literal>(best_var + 1);
    const Literal first = moms[2 * best_var] >= moms[2 * best_var + 1] ? pos_lit : -pos_lit;
    for (Literal choice : {first, -first}) {
      if (assign_and_propagate(choice) && search()) return true;
      undo_to(mark);
    }
    return false;
  }

  const CnfFormula& f_;
  std::vector<std::int8_t> value_;
  std::vector<std::vector<std::uint32_t>> lit_occ_;
  std::vector<Literal> trail_;
};

}  // namespace

bool dpll_sat(const CnfFormula& f, std::size_t var_cap, Assignment* model) {
  if (f.num_vars() > var_cap) {
    throw ValidationError("DPLL limited to " + std::to_string(var_cap) + " variables, formula has " +
                          std::to_string(f.num_vars()));
  }
  Dpll solver(f);
  const bool sat = solver.solve();
  if (sat && model != nullptr) *model = solver.model();
  return sat;
}

}  // namespace softtabu
