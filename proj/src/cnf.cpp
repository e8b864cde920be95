#include "softtabu/cnf.hpp"

#include <algorithm>
#include <limits>

#include "softtabu/cut_state.hpp"
#include "softtabu/errors.hpp"
#include "softtabu/text.hpp"

namespace softtabu {

CnfFormula::CnfFormula(std::size_t n_vars, std::vector<Clause> clauses)
    : n_vars_(n_vars), clauses_(std::move(clauses)) {
  if (clauses_.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw ValidationError("too many clauses");
  }
  std::vector<std::size_t> count(n_vars_, 0);
  std::vector<std::int64_t> stamp(n_vars_, -1);
  for (std::size_t c = 0; c < clauses_.size(); ++c) {
    for (Literal l : clauses_[c]) {
      if (l == 0) throw ValidationError("literal 0 inside clause " + std::to_string(c));
      const std::size_t v = var_index(l);
      if (v >= n_vars_) {
        throw ValidationError("variable " + std::to_string(v + 1) + " out of range [1, " +
                              std::to_string(n_vars_) + "]");
      }
      if (stamp[v] != static_cast<std::int64_t>(c)) {
        stamp[v] = static_cast<std::int64_t>(c);
        ++count[v];
      }
    }
    for (std::size_t i = 0; i < clauses_[c].size(); ++i) {
      for (std::size_t j = i + 1; j < clauses_[c].size(); ++j) {
        if (clauses_[c][i] == clauses_[c][j]) {
          throw ValidationError("repeated literal in clause " + std::to_string(c));
        }
      }
    }
  }
  occ_offsets_.assign(n_vars_ + 1, 0);
  for (std::size_t v = 0; v < n_vars_; ++v) occ_offsets_[v + 1] = occ_offsets_[v] + count[v];
  occ_.resize(occ_offsets_[n_vars_]);
  std::vector<std::size_t> cursor(occ_offsets_.begin(), occ_offsets_.end() - 1);
  std::fill(stamp.begin(), stamp.end(), -1);
  for (std::size_t c = 0; c < clauses_.size(); ++c) {
    for (Literal l : clauses_[c]) {
      const std::size_t v = var_index(l);
      if (stamp[v] != static_cast<std::int64_t>(c)) {
        stamp[v] = static_cast<std::int64_t>(c);
        occ_[cursor[v]++] = static_cast<std::uint32_t>(c);
      }
    }
  }
}

CnfFormula parse_dimacs(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool have_header = false;
  long long n_vars = 0;
  long long n_clauses = 0;
  std::vector<Clause> clauses;
  Clause current;

  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const auto line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty() || line.front() == 'c') continue;
    if (line.front() == '%') break;  // SATLIB trailer
    if (line.front() == 'p') {
      const auto tok = split(line);
      if (have_header || tok.size() != 4 || tok[0] != "p" || tok[1] != "cnf" ||
          !parse_int64(tok[2], n_vars) || !parse_int64(tok[3], n_clauses) || n_vars < 0 ||
          n_clauses < 0) {
        throw ParseError(line_no, "malformed header, expected \"p cnf <vars> <clauses>\"");
      }
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(line_no, "clause before \"p cnf\" header");
    for (auto tok : split(line)) {
      long long lit = 0;
      if (!parse_int64(tok, lit)) throw ParseError(line_no, "malformed literal '" + std::string(tok) + "'");
      if (lit == 0) {
        clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      if (lit > n_vars || -lit > n_vars) {
        throw ParseError(line_no, "variable " + std::to_string(lit < 0 ? -lit : lit) +
                                      " out of range [1, " + std::to_string(n_vars) + "]");
      }
      const auto l = static_cast<Literal>(lit);
      if (std::find(current.begin(), current.end(), l) == current.end()) current.push_back(l);
    }
  }
  if (!have_header) throw ParseError(0, "missing \"p cnf\" header");
  if (!current.empty()) clauses.push_back(std::move(current));
  if (static_cast<long long>(clauses.size()) != n_clauses) {
    throw ParseError(line_no, "header declares " + std::to_string(n_clauses) +
                                  " clauses, found " + std::to_string(clauses.size()));
  }
  return CnfFormula(static_cast<std::size_t>(n_vars), std::move(clauses));
}

CnfFormula load_dimacs_file(const std::string& path) {
  try {
    return parse_dimacs(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.message(), path);
  }
}

std::string emit_dimacs(const CnfFormula& f) {
  std::string out = "p cnf " + std::to_string(f.num_vars()) + ' ' +
                    std::to_string(f.num_clauses()) + '\n';
  for (const auto& c : f.clauses()) {
    for (Literal l : c) {
      out += std::to_string(l);
      out += ' ';
    }
    out += "0\n";
  }
  return out;
}

bool satisfies(const CnfFormula& f, std::span<const std::uint8_t> assignment) {
  for (const auto& c : f.clauses()) {
    if (std::none_of(c.begin(), c.end(), [&](Literal l) { return literal_true(l, assignment); })) {
      return false;
    }
  }
  return true;
}

SatState::SatState(const CnfFormula& f, Assignment assignment)
    : formula_(&f),
      assignment_(std::move(assignment)),
      true_count_(f.num_clauses(), 0),
      true_var_sum_(f.num_clauses(), 0),
      break_(f.num_vars(), 0),
      make_(f.num_vars(), 0),
      last_flip_(f.num_vars(), kNeverFlipped),
      unsat_pos_(f.num_clauses(), -1) {
  if (assignment_.size() != f.num_vars()) {
    throw ValidationError("assignment has length " + std::to_string(assignment_.size()) +
                          ", formula has " + std::to_string(f.num_vars()) + " variables");
  }
  for (auto& b : assignment_) b = b ? 1 : 0;
  for (std::size_t c = 0; c < f.num_clauses(); ++c) {
    for (Literal l : f.clause(c)) {
      if (literal_true(l, assignment_)) {
        ++true_count_[c];
        true_var_sum_[c] += var_index(l);
      }
    }
    if (true_count_[c] == 0) mark_unsat(c);
    add_contribution(c, +1);
  }
  best_sat_count_ = sat_count();
}

void SatState::add_contribution(std::size_t c, int sign) {
  const auto tc = true_count_[c];
  if (tc == 0) {
    for (Literal l : formula_->clause(c)) make_[var_index(l)] += sign;
  } else if (tc == 1) {
    break_[true_var_sum_[c]] += sign;
  }
}

void SatState::mark_unsat(std::size_t c) {
  unsat_pos_[c] = static_cast<std::int64_t>(unsat_.size());
  unsat_.push_back(static_cast<std::uint32_t>(c));
}

void SatState::mark_sat(std::size_t c) {
  const auto pos = static_cast<std::size_t>(unsat_pos_[c]);
  const auto last = unsat_.back();
  unsat_[pos] = last;
  unsat_pos_[last] = static_cast<std::int64_t>(pos);
  unsat_.pop_back();
  unsat_pos_[c] = -1;
}

int SatState::flip(std::size_t v) {
  if (v >= assignment_.size()) {
    throw ValidationError("variable index " + std::to_string(v) + " out of range");
  }
  const int delta = make_[v] - break_[v];
  assignment_[v] ^= 1U;
  for (std::uint32_t c : formula_->occurrences(v)) {
    add_contribution(c, -1);
    const bool was_unsat = true_count_[c] == 0;
    for (Literal l : formula_->clause(c)) {
      if (var_index(l) != v) continue;
      if (literal_true(l, assignment_)) {
        ++true_count_[c];
        true_var_sum_[c] += v;
      } else {
        --true_count_[c];
        true_var_sum_[c] -= v;
      }
    }
    const bool is_unsat = true_count_[c] == 0;
    if (was_unsat && !is_unsat) mark_sat(c);
    if (!was_unsat && is_unsat) mark_unsat(c);
    add_contribution(c, +1);
  }
  last_flip_[v] = step_;
  ++step_;
  best_sat_count_ = std::max(best_sat_count_, sat_count());
  return delta;
}

int SatState::max_score() const {
  int best = std::numeric_limits<int>::min();
  for (std::size_t v = 0; v < make_.size(); ++v) best = std::max(best, make_[v] - break_[v]);
  return best;
}

std::uint64_t SatState::fingerprint() const { return fingerprint_bits(assignment_); }

}  // namespace softtabu
