#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace softtabu {

using Vertex = std::uint32_t;

struct Edge {
  Vertex u;
  Vertex v;
  double w;
};

struct Neighbor {
  Vertex vertex;
  double weight;
};

// Weighted undirected graph. Each edge is stored once in edges() and mirrored
// in both adjacency lists. Immutable after construction.
class Graph {
 public:
  Graph() = default;

  // Validates ids, rejects self-loops and duplicate pairs (either orientation).
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::span<const Neighbor> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  double total_abs_weight() const noexcept { return total_abs_weight_; }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
  double total_abs_weight_ = 0.0;
};

enum class GraphFamily { ER, BA };
enum class WeightScheme { Unit, SignedUnit };

struct GenSpec {
  GraphFamily family = GraphFamily::ER;
  std::size_t n = 20;
  // ER: edge probability p in (0, 1]. BA: attachment count m in [1, n).
  double param = 0.15;
  WeightScheme weights = WeightScheme::SignedUnit;
  std::uint64_t seed = 0;

  void validate() const;
};

GraphFamily parse_graph_family(std::string_view s);
WeightScheme parse_weight_scheme(std::string_view s);
std::string to_string(GraphFamily f);
std::string to_string(WeightScheme w);

// Deterministic in spec (including the seed).
Graph generate(const GenSpec& spec);

// GSET text: header "n m", then m lines "u v w" with 1-based ids.
Graph load_gset(std::istream& in);
Graph load_gset(std::string_view text);
Graph load_gset_file(const std::string& path);
std::string save_gset(const Graph& g);

}  // namespace softtabu
