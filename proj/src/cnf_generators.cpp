#include "softtabu/cnf_generators.hpp"

#include <algorithm>
#include <cmath>

#include "softtabu/errors.hpp"
#include "softtabu/rng.hpp"
#include "softtabu/text.hpp"

namespace softtabu {

namespace {

struct FamilyName {
  CnfFamily family;
  std::string_view prefix;
};

constexpr FamilyName kFamilies[] = {
    {CnfFamily::RandK, "rand"},
    {CnfFamily::Clique, "clique"},
    {CnfFamily::Color, "color"},
    {CnfFamily::Domset, "domset"},
};

std::vector<std::vector<std::uint8_t>> adjacency_matrix(const Graph& g) {
  std::vector<std::vector<std::uint8_t>> adj(g.num_vertices(),
                                             std::vector<std::uint8_t>(g.num_vertices(), 0));
  for (const auto& e : g.edges()) adj[e.u][e.v] = adj[e.v][e.u] = 1;
  return adj;
}

void check_k(std::size_t k, std::size_t n) {
  if (k == 0) throw ValidationError("k must be positive");
  if (k > n) {
    throw ValidationError("k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
  }
}

void at_most_one(std::vector<Clause>& out, const std::vector<Literal>& vars) {
  for (std::size_t a = 0; a < vars.size(); ++a) {
    for (std::size_t b = a + 1; b < vars.size(); ++b) out.push_back({-vars[a], -vars[b]});
  }
}

}  // namespace

CnfDistribution CnfDistribution::parse(std::string_view spec) {
  const auto parts = split(spec, ":");
  if (parts.size() != 3) {
    throw ValidationError("formula distribution must look like family<k>:<n>:<param>, got '" +
                          std::string(spec) + "'");
  }
  CnfDistribution d;
  bool matched = false;
  for (const auto& f : kFamilies) {
    if (parts[0].substr(0, f.prefix.size()) == f.prefix) {
      long long k = 0;
      if (!parse_int64(parts[0].substr(f.prefix.size()), k) || k < 1) {
        throw ValidationError("bad k in '" + std::string(parts[0]) + "'");
      }
      d.family = f.family;
      d.k = static_cast<std::size_t>(k);
      matched = true;
      break;
    }
  }
  if (!matched) throw ValidationError("unknown formula family '" + std::string(parts[0]) + "'");
  long long n = 0;
  if (!parse_int64(parts[1], n) || n < 1) throw ValidationError("bad n in '" + std::string(spec) + "'");
  d.n = static_cast<std::size_t>(n);
  if (!parse_double(parts[2], d.param)) {
    throw ValidationError("bad parameter in '" + std::string(spec) + "'");
  }
  d.validate();
  return d;
}

std::string CnfDistribution::to_string() const {
  std::string name;
  for (const auto& f : kFamilies) {
    if (f.family == family) name = std::string(f.prefix);
  }
  return name + std::to_string(k) + ":" + std::to_string(n) + ":" + format_double(param);
}

void CnfDistribution::validate() const {
  if (family == CnfFamily::RandK) {
    if (param < 0 || param != std::floor(param)) {
      throw ValidationError("clause count must be a non-negative integer");
    }
    if (k > n) throw ValidationError("clause width exceeds variable count");
    return;
  }
  if (!(param >= 0.0 && param <= 1.0)) throw ValidationError("edge probability must lie in [0, 1]");
  check_k(k, n);
}

CnfFormula gen_rand_k(std::size_t k, std::size_t n_vars, std::size_t n_clauses,
                      std::uint64_t seed) {
  if (k == 0 || k > n_vars) throw ValidationError("clause width must lie in [1, n_vars]");
  Rng rng(seed);
  std::vector<Clause> clauses;
  clauses.reserve(n_clauses);
  for (std::size_t c = 0; c < n_clauses; ++c) {
    Clause clause;
    while (clause.size() < k) {
      const auto v = static_cast<Literal>(uniform_index(rng, n_vars) + 1);
      const bool repeat = std::any_of(clause.begin(), clause.end(),
                                      [v](Literal l) { return l == v || l == -v; });
      if (repeat) continue;
      clause.push_back((rng() & 1U) ? -v : v);
    }
    clauses.push_back(std::move(clause));
  }
  return CnfFormula(n_vars, std::move(clauses));
}

Graph sample_gnp(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (bernoulli(rng, p)) edges.push_back({u, v, 1.0});
    }
  }
  return Graph(n, std::move(edges));
}

CnfFormula encode_clique(const Graph& g, std::size_t k) {
  const std::size_t n = g.num_vertices();
  check_k(k, n);
  const auto adj = adjacency_matrix(g);
  auto x = [n](std::size_t i, std::size_t v) { return static_cast<Literal>(i * n + v + 1); };
  std::vector<Clause> clauses;
  for (std::size_t i = 0; i < k; ++i) {
    Clause slot;
    for (std::size_t v = 0; v < n; ++v) slot.push_back(x(i, v));
    clauses.push_back(slot);
    at_most_one(clauses, slot);
  }
  // Two different slots never hold the same vertex or a non-adjacent pair.
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
          if (u == v || !adj[u][v]) clauses.push_back({-x(i, u), -x(j, v)});
        }
      }
    }
  }
  return CnfFormula(k * n, std::move(clauses));
}

CnfFormula encode_coloring(const Graph& g, std::size_t k) {
  const std::size_t n = g.num_vertices();
  check_k(k, n);
  auto x = [k](std::size_t v, std::size_t c) { return static_cast<Literal>(v * k + c + 1); };
  std::vector<Clause> clauses;
  for (std::size_t v = 0; v < n; ++v) {
    Clause colours;
    for (std::size_t c = 0; c < k; ++c) colours.push_back(x(v, c));
    clauses.push_back(colours);
    at_most_one(clauses, colours);
  }
  for (const auto& e : g.edges()) {
    for (std::size_t c = 0; c < k; ++c) clauses.push_back({-x(e.u, c), -x(e.v, c)});
  }
  return CnfFormula(n * k, std::move(clauses));
}

CnfFormula encode_domset(const Graph& g, std::size_t k) {
  const std::size_t n = g.num_vertices();
  check_k(k, n);
  const auto adj = adjacency_matrix(g);
  auto x = [n](std::size_t i, std::size_t v) { return static_cast<Literal>(i * n + v + 1); };
  std::vector<Clause> clauses;
  for (std::size_t i = 0; i < k; ++i) {
    Clause slot;
    for (std::size_t v = 0; v < n; ++v) slot.push_back(x(i, v));
    clauses.push_back(slot);
    at_most_one(clauses, slot);
  }
  // Every vertex has a closed-neighbourhood member in some slot.
  for (std::size_t v = 0; v < n; ++v) {
    Clause dominated;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t u = 0; u < n; ++u) {
        if (u == v || adj[u][v]) dominated.push_back(x(i, u));
      }
    }
    clauses.push_back(std::move(dominated));
  }
  return CnfFormula(k * n, std::move(clauses));
}

CnfFormula gen_clique(std::size_t k, std::size_t n, double p, std::uint64_t seed) {
  check_k(k, n);
  return encode_clique(sample_gnp(n, p, seed), k);
}

CnfFormula gen_color(std::size_t k, std::size_t n, double p, std::uint64_t seed) {
  check_k(k, n);
  return encode_coloring(sample_gnp(n, p, seed), k);
}

CnfFormula gen_domset(std::size_t k, std::size_t n, double p, std::uint64_t seed) {
  check_k(k, n);
  return encode_domset(sample_gnp(n, p, seed), k);
}

CnfFormula sample_formula(const CnfDistribution& dist, std::uint64_t seed) {
  dist.validate();
  switch (dist.family) {
    case CnfFamily::RandK:
      return gen_rand_k(dist.k, dist.n, static_cast<std::size_t>(dist.param), seed);
    case CnfFamily::Clique:
      return gen_clique(dist.k, dist.n, dist.param, seed);
    case CnfFamily::Color:
      return gen_color(dist.k, dist.n, dist.param, seed);
    case CnfFamily::Domset:
      return gen_domset(dist.k, dist.n, dist.param, seed);
  }
  throw ValidationError("unknown formula family");
}

std::vector<CnfFormula> gen_filtered(const CnfDistribution& dist, std::size_t count,
                                     std::uint64_t seed, std::size_t max_attempts) {
  if (max_attempts == 0) max_attempts = 50 * count + 1000;
  std::vector<CnfFormula> out;
  out.reserve(count);
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (attempts == max_attempts) {
      throw Error("rejection budget exhausted for " + dist.to_string() + ": accepted " +
                  std::to_string(out.size()) + " of " + std::to_string(attempts) +
                  " candidates (acceptance rate " +
                  format_double(static_cast<double>(out.size()) / static_cast<double>(attempts)) +
                  ")");
    }
    auto f = sample_formula(dist, derive_seed(seed, "formula-candidate", attempts));
    ++attempts;
    if (dpll_sat(f)) out.push_back(std::move(f));
  }
  return out;
}

}  // namespace softtabu
