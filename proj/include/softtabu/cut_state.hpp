#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "softtabu/graph.hpp"

namespace softtabu {

using Side = std::vector<std::uint8_t>;

// Cut bookkeeping over a borrowed Graph, which must outlive the state.
//
// gain(v) is the change in cut value if v switches side:
//   gain(v) = sum over neighbours u of w(u,v) * (side[u] == side[v] ? +1 : -1)
// flip() updates it in O(degree(v)).
class CutState {
 public:
  static constexpr std::int64_t kNeverFlipped = -1;

  CutState(const Graph& g, Side side);

  // Returns the applied gain (the pre-flip gain of v).
  double flip(Vertex v);

  const Graph& graph() const noexcept { return *graph_; }
  std::size_t size() const noexcept { return side_.size(); }
  const Side& side() const noexcept { return side_; }
  const std::vector<double>& gains() const noexcept { return gain_; }
  double gain(Vertex v) const { return gain_[v]; }
  std::int64_t last_flip(Vertex v) const { return last_flip_[v]; }
  std::int64_t step() const noexcept { return step_; }
  double cut_value() const noexcept { return cut_value_; }
  double best_value() const noexcept { return best_value_; }
  const Side& best_side() const noexcept { return best_side_; }

  double max_gain() const;
  // True when no single flip increases the cut.
  bool is_local_optimum() const { return max_gain() <= 0.0; }

  // 64-bit hash of the side bit-string.
  std::uint64_t fingerprint() const;

 private:
  const Graph* graph_;
  Side side_;
  std::vector<double> gain_;
  std::vector<std::int64_t> last_flip_;
  std::int64_t step_ = 0;
  double cut_value_ = 0.0;
  double best_value_ = 0.0;
  Side best_side_;
};

// Scratch evaluations, independent of CutState's incremental path.
double evaluate_cut(const Graph& g, std::span<const std::uint8_t> side);
std::vector<double> evaluate_gains(const Graph& g, std::span<const std::uint8_t> side);

std::uint64_t fingerprint_bits(std::span<const std::uint8_t> bits);

struct CutSolution {
  double value = 0.0;
  Side side;
};

inline constexpr std::size_t kBruteForceMaxVertices = 24;

// Exact optimum by Gray-code enumeration of the 2^(n-1) distinct cuts.
// Throws ValidationError above kBruteForceMaxVertices.
CutSolution brute_force_optimum(const Graph& g);

}  // namespace softtabu
