#include "softtabu/bench.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "softtabu/errors.hpp"
#include "softtabu/maxcut_env.hpp"
#include "softtabu/text.hpp"

namespace softtabu {

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// ---------------------------------------------------------------- Max-Cut

MaxcutProtocol MaxcutProtocol::gset_preset() {
  MaxcutProtocol p;
  p.episodes = 5;
  p.horizon_mult = 4;
  return p;
}

void MaxcutProtocol::validate() const {
  if (episodes < 1) throw ValidationError("episodes must be >= 1");
  if (horizon_mult < 1) throw ValidationError("horizon_mult must be >= 1");
  if (tenures.empty()) throw ValidationError("at least one tabu tenure is required");
  for (auto t : tenures) {
    if (t < 1) throw ValidationError("tabu tenure must be >= 1");
  }
  for (const auto& a : agents) {
    if (a != "mca" && a != "tabu" && a != "softtabu") {
      throw ValidationError("unknown Max-Cut agent '" + a + "'");
    }
  }
}

std::string to_string(KnownSource s) {
  switch (s) {
    case KnownSource::Reference:
      return "reference";
    case KnownSource::Enumeration:
      return "enumeration";
    case KnownSource::Agents:
      break;
  }
  return "agents";
}

KnownSource parse_known_source(std::string_view s) {
  if (s == "reference") return KnownSource::Reference;
  if (s == "enumeration") return KnownSource::Enumeration;
  if (s == "agents") return KnownSource::Agents;
  throw ParseError(0, "unknown best_known source '" + std::string(s) + "'");
}

std::vector<AgentSummary> MaxcutReport::summarize() const {
  std::vector<AgentSummary> out;
  for (const auto& row : rows) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const AgentSummary& s) { return s.agent == row.agent; });
    if (it == out.end()) {
      out.push_back({row.agent, 0, 0.0, row.ratio});
      it = out.end() - 1;
    }
    ++it->instances;
    it->mean_ratio += row.ratio;
    it->min_ratio = std::min(it->min_ratio, row.ratio);
  }
  for (auto& s : out) s.mean_ratio /= static_cast<double>(s.instances);
  return out;
}

double MaxcutReport::mean_ratio(const std::string& agent) const {
  for (const auto& s : summarize()) {
    if (s.agent == agent) return s.mean_ratio;
  }
  throw ValidationError("no rows for agent '" + agent + "'");
}

namespace {

struct AgentOutcome {
  std::string agent;
  double best = 0.0;
  std::vector<Trajectory> trajectories;
};

std::vector<AgentOutcome> run_maxcut_agents(const MaxcutInstance& inst, std::size_t index,
                                            const MaxcutProtocol& p, const LinearQ* model,
                                            const FeatureSpec& spec) {
  const Graph& g = inst.graph;
  const std::size_t n = g.num_vertices();
  const auto idx = static_cast<std::uint64_t>(index);
  std::vector<AgentOutcome> out;
  for (const auto& agent : p.agents) {
    if (agent == "mca") {
      AgentOutcome o{"mca", 0.0, {}};
      for (std::int64_t e = 0; e < p.episodes; ++e) {
        Rng rng(derive_seed(p.seed, "mca", idx, static_cast<std::uint64_t>(e)));
        auto r = mca(g, random_bits(n, rng), p.tie_break, &rng);
        if (e == 0 || r.value > o.best) o.best = r.value;
      }
      out.push_back(std::move(o));
    } else if (agent == "tabu") {
      for (auto tenure : p.tenures) {
        const std::string label =
            p.tenures.size() == 1 ? "tabu" : "tabu@" + std::to_string(tenure);
        AgentOutcome o{label, 0.0, {}};
        TabuConfig cfg{tenure, std::max<std::int64_t>(1, p.horizon_mult * static_cast<std::int64_t>(n)),
                       p.aspiration, p.tie_break};
        for (std::int64_t e = 0; e < p.episodes; ++e) {
          Rng rng(derive_seed(p.seed, label, idx, static_cast<std::uint64_t>(e)));
          auto r = tabu_search(g, random_bits(n, rng), cfg, &rng, p.record_trajectories);
          if (e == 0 || r.value > o.best) o.best = r.value;
          if (p.record_trajectories) o.trajectories.push_back(std::move(r.trajectory));
        }
        out.push_back(std::move(o));
      }
    } else if (agent == "softtabu") {
      if (model == nullptr) throw UsageError("agent 'softtabu' requires a model file");
      auto r = evaluate_maxcut(*model, g, p.episodes, p.horizon_mult,
                               derive_seed(p.seed, "softtabu", idx), spec, p.record_trajectories);
      out.push_back({"softtabu", r.best_value, std::move(r.trajectories)});
    }
  }
  return out;
}

}  // namespace

MaxcutReport run_maxcut_suite(const std::vector<MaxcutInstance>& instances,
                              const MaxcutProtocol& protocol, const LinearQ* model,
                              const FeatureSpec& spec) {
  protocol.validate();
  if (instances.empty()) throw ValidationError("Max-Cut suite needs at least one instance");
  const bool wants_softtabu =
      std::find(protocol.agents.begin(), protocol.agents.end(), "softtabu") != protocol.agents.end();
  if (wants_softtabu && model == nullptr) throw UsageError("agent 'softtabu' requires a model file");

  std::vector<std::vector<AgentOutcome>> outcomes(instances.size());
  std::vector<std::optional<double>> exact(instances.size());
  parallel_for(instances.size(), protocol.threads, [&](std::size_t i) {
    outcomes[i] = run_maxcut_agents(instances[i], i, protocol, model, spec);
    if (instances[i].graph.num_vertices() <= protocol.enumerate_max_n) {
      exact[i] = brute_force_optimum(instances[i].graph).value;
    }
  });

  MaxcutReport report;
  report.metadata["seed"] = std::to_string(protocol.seed);
  report.metadata["episodes"] = std::to_string(protocol.episodes);
  report.metadata["horizon_mult"] = std::to_string(protocol.horizon_mult);
  report.metadata["aspiration"] = protocol.aspiration ? "1" : "0";
  report.metadata["tie_break"] = to_string(protocol.tie_break);
  std::string tenures;
  for (auto t : protocol.tenures) tenures += (tenures.empty() ? "" : ",") + std::to_string(t);
  report.metadata["tenures"] = tenures;
  if (model != nullptr) {
    report.metadata["model_weights"] = format_double(model->weights.at(0)) + "," +
                                       format_double(model->weights.at(1));
    report.metadata["model_bias"] = format_double(model->bias);
  }

  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& inst = instances[i];
    double agents_best = outcomes[i].empty() ? 0.0 : outcomes[i].front().best;
    for (const auto& o : outcomes[i]) agents_best = std::max(agents_best, o.best);

    double known = agents_best;
    KnownSource source = KnownSource::Agents;
    if (inst.reference && *inst.reference >= known) {
      known = *inst.reference;
      source = KnownSource::Reference;
    }
    if (exact[i] && *exact[i] >= known) {
      known = *exact[i];
      source = KnownSource::Enumeration;
    }
    for (auto& o : outcomes[i]) {
      MaxcutRow row;
      row.instance = inst.name;
      row.agent = o.agent;
      row.n = inst.graph.num_vertices();
      row.best_value = o.best;
      row.best_known = known;
      // An all-zero instance is solved by every agent.
      row.ratio = known > 0.0 ? o.best / known : (o.best >= known ? 1.0 : 0.0);
      row.source = source;
      row.exceeds_reference = inst.reference.has_value() && o.best > *inst.reference;
      report.rows.push_back(row);
      if (protocol.record_trajectories && !o.trajectories.empty()) {
        report.trajectories.push_back({inst.name, o.agent, std::move(o.trajectories)});
      }
    }
  }
  return report;
}

// -------------------------------------------------------------------- SAT

void SatProtocol::validate() const {
  if (trials < 1) throw ValidationError("trials must be >= 1");
  if (max_steps < 1) throw ValidationError("max_steps must be >= 1");
  walksat.validate();
  for (const auto& a : agents) {
    if (a == "softtabu" || a == "walksat") continue;
    double p = 0.0;
    if (a.rfind("walksat:", 0) == 0 && parse_double(std::string_view(a).substr(8), p) &&
        p >= 0.0 && p <= 1.0) {
      continue;
    }
    throw ValidationError("unknown SAT agent '" + a + "'");
  }
}

double median(std::vector<double> xs) {
  if (xs.empty()) throw ValidationError("median of an empty sequence");
  std::sort(xs.begin(), xs.end());
  const std::size_t mid = xs.size() / 2;
  return xs.size() % 2 ? xs[mid] : 0.5 * (xs[mid - 1] + xs[mid]);
}

SatSummary summarize_trials(const std::string& agent, const std::vector<SatTrialRow>& rows,
                            std::int64_t max_steps) {
  SatSummary s;
  s.agent = agent;
  std::vector<std::string> order;
  std::map<std::string, std::vector<double>> per_instance;
  double total = 0.0;
  for (const auto& r : rows) {
    if (r.agent != agent) continue;
    auto [it, inserted] = per_instance.try_emplace(r.instance);
    if (inserted) order.push_back(r.instance);
    it->second.push_back(static_cast<double>(r.steps));
    total += static_cast<double>(r.steps);
    ++s.trials;
  }
  s.instances = order.size();
  if (s.trials == 0) return s;
  s.mean_steps = total / static_cast<double>(s.trials);
  std::vector<double> medians;
  std::size_t solved = 0;
  for (const auto& name : order) {
    const double m = median(per_instance[name]);
    medians.push_back(m);
    if (m < static_cast<double>(max_steps)) ++solved;
  }
  s.median_of_medians = median(medians);
  s.percent_solved = 100.0 * static_cast<double>(solved) / static_cast<double>(s.instances);
  return s;
}

std::vector<SatSummary> SatReport::summarize() const {
  std::vector<std::string> agents;
  for (const auto& r : trials) {
    if (std::find(agents.begin(), agents.end(), r.agent) == agents.end()) agents.push_back(r.agent);
  }
  std::vector<SatSummary> out;
  for (const auto& a : agents) out.push_back(summarize_trials(a, trials, max_steps));
  return out;
}

SatReport run_sat_suite(const std::vector<SatInstance>& instances, const SatProtocol& protocol,
                        const LinearQ* model, const FeatureSpec& spec) {
  protocol.validate();
  const bool wants_softtabu =
      std::find(protocol.agents.begin(), protocol.agents.end(), "softtabu") != protocol.agents.end();
  if (wants_softtabu && model == nullptr) throw UsageError("agent 'softtabu' requires a model file");

  std::vector<std::vector<SatTrialRow>> per_instance(instances.size());
  parallel_for(instances.size(), protocol.threads, [&](std::size_t i) {
    const auto& inst = instances[i];
    const auto idx = static_cast<std::uint64_t>(i);
    auto& rows = per_instance[i];
    for (const auto& agent : protocol.agents) {
      if (agent == "softtabu") {
        const auto recs = softtabu_sat_solve(*model, inst.formula, protocol.trials,
                                             protocol.max_steps,
                                             derive_seed(protocol.seed, "softtabu", idx), spec);
        for (std::size_t t = 0; t < recs.size(); ++t) {
          rows.push_back({inst.name, agent, static_cast<std::int64_t>(t), recs[t].solved,
                          recs[t].steps});
        }
        continue;
      }
      WalksatConfig cfg = protocol.walksat;
      cfg.max_steps = protocol.max_steps;
      if (agent.size() > 8) parse_double(std::string_view(agent).substr(8), cfg.p);
      for (std::int64_t t = 0; t < protocol.trials; ++t) {
        const auto run = walksat(inst.formula, cfg,
                                 derive_seed(protocol.seed, agent, idx, static_cast<std::uint64_t>(t)));
        rows.push_back({inst.name, agent, t, run.solved, run.steps});
      }
    }
  });

  SatReport report;
  report.max_steps = protocol.max_steps;
  report.metadata["seed"] = std::to_string(protocol.seed);
  report.metadata["trials"] = std::to_string(protocol.trials);
  report.metadata["max_steps"] = std::to_string(protocol.max_steps);
  report.metadata["walksat_p"] = format_double(protocol.walksat.p);
  report.metadata["walksat_freebie"] = protocol.walksat.freebie ? "1" : "0";
  if (model != nullptr) {
    report.metadata["model_weights"] = format_double(model->weights.at(0)) + "," +
                                       format_double(model->weights.at(1));
    report.metadata["model_bias"] = format_double(model->bias);
  }
  for (auto& rows : per_instance) {
    for (auto& r : rows) report.trials.push_back(std::move(r));
  }
  return report;
}

// ------------------------------------------------------------- behaviour

std::vector<IntraEpisodePoint> intra_episode_stats(const std::vector<Trajectory>& trajectories) {
  if (trajectories.empty()) throw ValidationError("intra_episode_stats: no trajectories");
  std::size_t len = trajectories.front().size();
  for (const auto& t : trajectories) len = std::min(len, t.size());
  std::vector<IntraEpisodePoint> out(len);
  for (std::size_t s = 0; s < len; ++s) {
    std::size_t greedy = 0;
    std::size_t positive = 0;
    for (const auto& t : trajectories) {
      greedy += t[s].is_greedy ? 1 : 0;
      positive += t[s].positive_gain ? 1 : 0;
    }
    const auto total = static_cast<double>(trajectories.size());
    out[s] = {static_cast<std::int64_t>(s), static_cast<double>(greedy) / total,
              static_cast<double>(positive) / total, trajectories.size()};
  }
  return out;
}

std::vector<FlipCount> flip_counts(const Trajectory& trajectory) {
  std::map<Vertex, std::size_t> counts;
  for (const auto& step : trajectory) ++counts[step.vertex];
  std::vector<FlipCount> out;
  out.reserve(counts.size());
  for (const auto& [v, c] : counts) out.push_back({v, c});
  std::stable_sort(out.begin(), out.end(),
                   [](const FlipCount& a, const FlipCount& b) { return a.count > b.count; });
  return out;
}

std::vector<FlipCount> flip_distribution(const Trajectory& trajectory, std::size_t top_k) {
  auto out = flip_counts(trajectory);
  if (out.size() > top_k) out.resize(top_k);
  return out;
}

}  // namespace softtabu
