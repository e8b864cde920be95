#include "softtabu/cut_state.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "softtabu/errors.hpp"

namespace softtabu {

CutState::CutState(const Graph& g, Side side)
    : graph_(&g),
      side_(std::move(side)),
      last_flip_(g.num_vertices(), kNeverFlipped) {
  if (side_.size() != g.num_vertices()) {
    throw ValidationError("side vector has length " + std::to_string(side_.size()) +
                          ", graph has " + std::to_string(g.num_vertices()) + " vertices");
  }
  for (auto& b : side_) b = b ? 1 : 0;
  gain_ = evaluate_gains(g, side_);
  cut_value_ = evaluate_cut(g, side_);
  best_value_ = cut_value_;
  best_side_ = side_;
}

double CutState::flip(Vertex v) {
  if (v >= side_.size()) {
    throw ValidationError("vertex " + std::to_string(v) + " out of range");
  }
  const double delta = gain_[v];
  const std::uint8_t old_side = side_[v];
  for (const auto& nb : graph_->neighbors(v)) {
    // Same side before the flip: the edge was uncut and becomes cut.
    gain_[nb.vertex] += side_[nb.vertex] == old_side ? -2.0 * nb.weight : 2.0 * nb.weight;
  }
  side_[v] = old_side ^ 1U;
  gain_[v] = -delta;
  cut_value_ += delta;
  last_flip_[v] = step_;
  ++step_;
  if (cut_value_ > best_value_) {
    best_value_ = cut_value_;
    best_side_ = side_;
  }
  return delta;
}

double CutState::max_gain() const {
  double best = -std::numeric_limits<double>::infinity();
  for (double g : gain_) best = std::max(best, g);
  return best;
}

std::uint64_t CutState::fingerprint() const { return fingerprint_bits(side_); }

double evaluate_cut(const Graph& g, std::span<const std::uint8_t> side) {
  double total = 0.0;
  for (const auto& e : g.edges()) {
    if ((side[e.u] != 0) != (side[e.v] != 0)) total += e.w;
  }
  return total;
}

std::vector<double> evaluate_gains(const Graph& g, std::span<const std::uint8_t> side) {
  std::vector<double> gain(g.num_vertices(), 0.0);
  for (const auto& e : g.edges()) {
    const double s = (side[e.u] != 0) == (side[e.v] != 0) ? e.w : -e.w;
    gain[e.u] += s;
    gain[e.v] += s;
  }
  return gain;
}

std::uint64_t fingerprint_bits(std::span<const std::uint8_t> bits) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  std::uint64_t word = 0;
  std::size_t filled = 0;
  auto mix = [&h](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  for (auto b : bits) {
    word |= static_cast<std::uint64_t>(b != 0) << filled;
    if (++filled == 64) {
      mix(word);
      word = 0;
      filled = 0;
    }
  }
  mix(word);
  mix(bits.size());
  return h;
}

CutSolution brute_force_optimum(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n > kBruteForceMaxVertices) {
    throw ValidationError("brute force limited to " + std::to_string(kBruteForceMaxVertices) +
                          " vertices, graph has " + std::to_string(n));
  }
  CutSolution best{0.0, Side(n, 0)};
  if (n <= 1) return best;

  // Vertex n-1 stays on side 0, so every cut is visited once. Gray-code order
  // changes one vertex per step; the cut is updated from scratch gains.
  Side side(n, 0);
  std::vector<double> gain = evaluate_gains(g, side);
  double value = 0.0;
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  for (std::uint64_t i = 1; i < count; ++i) {
    const auto v = static_cast<Vertex>(std::countr_zero(i));
    const double delta = gain[v];
    const std::uint8_t old_side = side[v];
    for (const auto& nb : g.neighbors(v)) {
      gain[nb.vertex] += side[nb.vertex] == old_side ? -2.0 * nb.weight : 2.0 * nb.weight;
    }
    side[v] ^= 1U;
    gain[v] = -delta;
    value += delta;
    if (value > best.value) {
      best.value = value;
      best.side = side;
    }
  }
  return best;
}

}  // namespace softtabu
