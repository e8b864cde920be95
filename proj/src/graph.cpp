#include "softtabu/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "softtabu/errors.hpp"
#include "softtabu/rng.hpp"
#include "softtabu/text.hpp"

namespace softtabu {

namespace {

std::uint64_t pair_key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

double draw_weight(WeightScheme scheme, Rng& rng) {
  if (scheme == WeightScheme::Unit) return 1.0;
  return (rng() & 1U) ? 1.0 : -1.0;
}

Graph generate_er(const GenSpec& spec, Rng& rng) {
  std::vector<Edge> edges;
  const auto n = static_cast<Vertex>(spec.n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (spec.param >= 1.0 || bernoulli(rng, spec.param)) {
        edges.push_back({u, v, draw_weight(spec.weights, rng)});
      }
    }
  }
  return Graph(spec.n, std::move(edges));
}

// Seed core is a clique on the first m vertices; every later vertex attaches to
// m distinct earlier vertices chosen proportionally to degree.
Graph generate_ba(const GenSpec& spec, Rng& rng) {
  const auto m = static_cast<Vertex>(spec.param);
  const auto n = static_cast<Vertex>(spec.n);
  std::vector<Edge> edges;
  std::vector<Vertex> endpoint_pool;  // each vertex appears once per incident edge
  for (Vertex u = 0; u < m; ++u) {
    for (Vertex v = u + 1; v < m; ++v) {
      edges.push_back({u, v, draw_weight(spec.weights, rng)});
      endpoint_pool.push_back(u);
      endpoint_pool.push_back(v);
    }
  }
  std::vector<Vertex> targets;
  std::vector<std::uint8_t> chosen(n, 0);
  for (Vertex v = m; v < n; ++v) {
    targets.clear();
    if (endpoint_pool.empty()) {
      // m == 1 and no edges yet: the single core vertex is the only choice.
      for (Vertex u = 0; u < m; ++u) targets.push_back(u);
    } else {
      while (targets.size() < m) {
        const Vertex u = endpoint_pool[uniform_index(rng, endpoint_pool.size())];
        if (!chosen[u]) {
          chosen[u] = 1;
          targets.push_back(u);
        }
      }
      for (Vertex u : targets) chosen[u] = 0;
    }
    std::sort(targets.begin(), targets.end());
    for (Vertex u : targets) {
      edges.push_back({u, v, draw_weight(spec.weights, rng)});
      endpoint_pool.push_back(u);
      endpoint_pool.push_back(v);
    }
  }
  return Graph(spec.n, std::move(edges));
}

}  // namespace

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n_ > static_cast<std::size_t>(UINT32_MAX)) throw ValidationError("graph too large");
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges_.size() * 2);
  std::vector<std::size_t> degree(n_, 0);
  for (const auto& e : edges_) {
    if (e.u >= n_ || e.v >= n_) throw ValidationError("edge endpoint out of range");
    if (e.u == e.v) throw ValidationError("self-loop on vertex " + std::to_string(e.u));
    if (!std::isfinite(e.w)) throw ValidationError("non-finite edge weight");
    if (!seen.insert(pair_key(e.u, e.v)).second) {
      throw ValidationError("duplicate edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            ")");
    }
    ++degree[e.u];
    ++degree[e.v];
    total_abs_weight_ += std::abs(e.w);
  }
  offsets_.assign(n_ + 1, 0);
  for (std::size_t v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  adjacency_.resize(offsets_[n_]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    adjacency_[cursor[e.u]++] = {e.v, e.w};
    adjacency_[cursor[e.v]++] = {e.u, e.w};
  }
}

void GenSpec::validate() const {
  if (family == GraphFamily::ER) {
    if (!(param > 0.0 && param <= 1.0)) {
      throw ValidationError("ER edge probability must lie in (0, 1], got " + format_double(param));
    }
  } else {
    if (param != std::floor(param) || param < 1.0 || param >= static_cast<double>(n)) {
      throw ValidationError("BA attachment count must be an integer in [1, n), got " +
                            format_double(param));
    }
  }
}

GraphFamily parse_graph_family(std::string_view s) {
  if (s == "ER" || s == "er") return GraphFamily::ER;
  if (s == "BA" || s == "ba") return GraphFamily::BA;
  throw ValidationError("unknown graph family '" + std::string(s) + "'");
}

WeightScheme parse_weight_scheme(std::string_view s) {
  if (s == "unit") return WeightScheme::Unit;
  if (s == "signed" || s == "signed_unit") return WeightScheme::SignedUnit;
  throw ValidationError("unknown weight scheme '" + std::string(s) + "'");
}

std::string to_string(GraphFamily f) { return f == GraphFamily::ER ? "ER" : "BA"; }

std::string to_string(WeightScheme w) { return w == WeightScheme::Unit ? "unit" : "signed"; }

Graph generate(const GenSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  return spec.family == GraphFamily::ER ? generate_er(spec, rng) : generate_ba(spec, rng);
}

Graph load_gset(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_content_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!trim(line).empty()) return true;
    }
    return false;
  };

  if (!next_content_line()) throw ParseError(0, "empty GSET input");
  const auto header = split(line);
  long long n = 0;
  long long m = 0;
  if (header.size() != 2 || !parse_int64(header[0], n) || !parse_int64(header[1], m) || n < 0 ||
      m < 0) {
    throw ParseError(line_no, "malformed header, expected \"n m\"");
  }

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  std::unordered_set<std::uint64_t> seen;
  while (next_content_line()) {
    const auto tok = split(line);
    long long u = 0;
    long long v = 0;
    double w = 0.0;
    if (tok.size() != 3 || !parse_int64(tok[0], u) || !parse_int64(tok[1], v) ||
        !parse_double(tok[2], w)) {
      throw ParseError(line_no, "malformed edge line, expected \"u v w\"");
    }
    if (u < 1 || u > n || v < 1 || v > n) {
      throw ParseError(line_no, "vertex id out of range [1, " + std::to_string(n) + "]");
    }
    if (u == v) throw ParseError(line_no, "self-loop");
    const auto a = static_cast<Vertex>(u - 1);
    const auto b = static_cast<Vertex>(v - 1);
    if (!seen.insert(pair_key(a, b)).second) throw ParseError(line_no, "duplicate edge");
    if (static_cast<long long>(edges.size()) == m) {
      throw ParseError(line_no, "more edges than the header declares (" + std::to_string(m) + ")");
    }
    edges.push_back({a, b, w});
  }
  if (static_cast<long long>(edges.size()) != m) {
    throw ParseError(line_no, "header declares " + std::to_string(m) + " edges, found " +
                                  std::to_string(edges.size()));
  }
  return Graph(static_cast<std::size_t>(n), std::move(edges));
}

Graph load_gset(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_gset(in);
}

Graph load_gset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return load_gset(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.message(), path);
  }
}

std::string save_gset(const Graph& g) {
  std::string out;
  out += std::to_string(g.num_vertices()) + ' ' + std::to_string(g.num_edges()) + '\n';
  for (const auto& e : g.edges()) {
    out += std::to_string(e.u + 1) + ' ' + std::to_string(e.v + 1) + ' ' + format_double(e.w) +
           '\n';
  }
  return out;
}

}  // namespace softtabu
