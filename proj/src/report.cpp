#include "softtabu/report.hpp"

#include <algorithm>

#include "json.hpp"
#include "softtabu/errors.hpp"
#include "softtabu/text.hpp"

namespace softtabu {

using nlohmann::json;

namespace {

constexpr const char* kMaxcutFormat = "softtabu-maxcut-report";
constexpr const char* kSatFormat = "softtabu-sat-report";
constexpr int kVersion = 1;

std::string row(std::initializer_list<std::string> fields) {
  std::string out;
  bool first = true;
  for (const auto& f : fields) {
    if (!first) out += ',';
    out += f;
    first = false;
  }
  out += '\n';
  return out;
}

std::string flag(bool b) { return b ? "1" : "0"; }

void check_format(const json& doc, const char* format) {
  if (!doc.is_object() || doc.value("format", "") != format) {
    throw ParseError(0, std::string("not a ") + format + " document");
  }
  if (doc.value("version", 0) != kVersion) {
    throw ParseError(0, "unsupported report version");
  }
}

template <typename Fn>
auto parse_json(std::string_view text, Fn&& fn) {
  try {
    return fn(json::parse(text));
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("invalid report JSON: ") + e.what());
  }
}

}  // namespace

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// ---------------------------------------------------------------- Max-Cut

std::string maxcut_rows_csv(const MaxcutReport& r) {
  std::string out =
      "instance,agent,n,best_value,best_known,ratio,best_known_source,exceeds_reference\n";
  for (const auto& x : r.rows) {
    out += row({csv_field(x.instance), csv_field(x.agent), std::to_string(x.n),
                format_double(x.best_value), format_double(x.best_known), format_double(x.ratio),
                to_string(x.source), flag(x.exceeds_reference)});
  }
  return out;
}

std::string maxcut_summary_csv(const MaxcutReport& r, const std::string& distribution) {
  std::string out = "distribution,agent,instances,mean_ratio,min_ratio\n";
  for (const auto& s : r.summarize()) {
    out += row({csv_field(distribution), csv_field(s.agent), std::to_string(s.instances),
                format_double(s.mean_ratio), format_double(s.min_ratio)});
  }
  return out;
}

std::string maxcut_table_csv(const MaxcutReport& r, const std::string& distribution) {
  const auto summary = r.summarize();
  std::string header = "distribution";
  std::string values = csv_field(distribution);
  for (const auto& s : summary) {
    header += "," + csv_field(s.agent);
    values += "," + format_double(s.mean_ratio);
  }
  return header + "\n" + (summary.empty() ? "" : values + "\n");
}

std::string trajectories_csv(const MaxcutReport& r) {
  std::string out = "instance,agent,episode,step,vertex,gain,cut_value,is_greedy,is_positive_gain\n";
  for (const auto& set : r.trajectories) {
    for (std::size_t e = 0; e < set.episodes.size(); ++e) {
      const auto& traj = set.episodes[e];
      for (std::size_t s = 0; s < traj.size(); ++s) {
        const auto& st = traj[s];
        out += row({csv_field(set.instance), csv_field(set.agent), std::to_string(e),
                    std::to_string(s), std::to_string(st.vertex), format_double(st.gain),
                    format_double(st.cut_value), flag(st.is_greedy), flag(st.positive_gain)});
      }
    }
  }
  return out;
}

std::string intra_episode_csv(const MaxcutReport& r) {
  std::string out = "agent,step,greedy_fraction,positive_gain_fraction,samples\n";
  std::vector<std::string> agents;
  std::map<std::string, std::vector<Trajectory>> pooled;
  for (const auto& set : r.trajectories) {
    auto [it, inserted] = pooled.try_emplace(set.agent);
    if (inserted) agents.push_back(set.agent);
    it->second.insert(it->second.end(), set.episodes.begin(), set.episodes.end());
  }
  for (const auto& agent : agents) {
    if (pooled[agent].empty()) continue;
    for (const auto& p : intra_episode_stats(pooled[agent])) {
      out += row({csv_field(agent), std::to_string(p.step), format_double(p.greedy_fraction),
                  format_double(p.positive_gain_fraction), std::to_string(p.samples)});
    }
  }
  return out;
}

std::string flips_csv(const MaxcutReport& r, std::size_t top_k) {
  std::string out = "instance,agent,episode,rank,vertex,count\n";
  for (const auto& set : r.trajectories) {
    for (std::size_t e = 0; e < set.episodes.size(); ++e) {
      const auto top = flip_distribution(set.episodes[e], top_k);
      for (std::size_t k = 0; k < top.size(); ++k) {
        out += row({csv_field(set.instance), csv_field(set.agent), std::to_string(e),
                    std::to_string(k + 1), std::to_string(top[k].vertex),
                    std::to_string(top[k].count)});
      }
    }
  }
  return out;
}

std::string maxcut_report_json(const MaxcutReport& r) {
  json doc;
  doc["format"] = kMaxcutFormat;
  doc["version"] = kVersion;
  doc["metadata"] = r.metadata;
  doc["rows"] = json::array();
  for (const auto& x : r.rows) {
    doc["rows"].push_back({{"instance", x.instance},
                           {"agent", x.agent},
                           {"n", x.n},
                           {"best_value", x.best_value},
                           {"best_known", x.best_known},
                           {"ratio", x.ratio},
                           {"best_known_source", to_string(x.source)},
                           {"exceeds_reference", x.exceeds_reference}});
  }
  doc["trajectories"] = json::array();
  for (const auto& set : r.trajectories) {
    json episodes = json::array();
    for (const auto& traj : set.episodes) {
      json steps = json::array();
      for (const auto& s : traj) {
        steps.push_back({s.vertex, s.gain, s.cut_value, s.is_greedy, s.positive_gain});
      }
      episodes.push_back(std::move(steps));
    }
    doc["trajectories"].push_back(
        {{"instance", set.instance}, {"agent", set.agent}, {"episodes", std::move(episodes)}});
  }
  return doc.dump(1) + "\n";
}

MaxcutReport load_maxcut_report_json(std::string_view text) {
  return parse_json(text, [](const json& doc) {
    check_format(doc, kMaxcutFormat);
    MaxcutReport r;
    r.metadata = doc.at("metadata").get<std::map<std::string, std::string>>();
    for (const auto& x : doc.at("rows")) {
      MaxcutRow row;
      row.instance = x.at("instance").get<std::string>();
      row.agent = x.at("agent").get<std::string>();
      row.n = x.at("n").get<std::size_t>();
      row.best_value = x.at("best_value").get<double>();
      row.best_known = x.at("best_known").get<double>();
      row.ratio = x.at("ratio").get<double>();
      row.source = parse_known_source(x.at("best_known_source").get<std::string>());
      row.exceeds_reference = x.at("exceeds_reference").get<bool>();
      r.rows.push_back(std::move(row));
    }
    for (const auto& set : doc.at("trajectories")) {
      TrajectorySet ts{set.at("instance").get<std::string>(), set.at("agent").get<std::string>(),
                       {}};
      for (const auto& episode : set.at("episodes")) {
        Trajectory traj;
        for (const auto& s : episode) {
          if (!s.is_array() || s.size() != 5) throw ParseError(0, "trajectory step needs 5 fields");
          traj.push_back({s[0].get<Vertex>(), s[1].get<double>(), s[2].get<double>(),
                          s[3].get<bool>(), s[4].get<bool>()});
        }
        ts.episodes.push_back(std::move(traj));
      }
      r.trajectories.push_back(std::move(ts));
    }
    return r;
  });
}

// -------------------------------------------------------------------- SAT

std::string sat_trials_csv(const SatReport& r) {
  std::string out = "instance_id,agent,trial,solved,steps\n";
  for (const auto& t : r.trials) {
    out += row({csv_field(t.instance), csv_field(t.agent), std::to_string(t.trial), flag(t.solved),
                std::to_string(t.steps)});
  }
  return out;
}

std::string sat_summary_csv(const SatReport& r, const std::string& distribution) {
  std::string out =
      "distribution,agent,instances,trials,mean_steps,median_of_medians,percent_solved\n";
  for (const auto& s : r.summarize()) {
    out += row({csv_field(distribution), csv_field(s.agent), std::to_string(s.instances),
                std::to_string(s.trials), format_double(s.mean_steps),
                format_double(s.median_of_medians), format_double(s.percent_solved)});
  }
  return out;
}

std::string sat_table_csv(const SatReport& r, const std::string& distribution) {
  const auto summary = r.summarize();
  std::string out = "distribution,metric";
  for (const auto& s : summary) out += "," + csv_field(s.agent);
  out += '\n';
  if (summary.empty()) return out;
  const std::pair<const char*, double SatSummary::*> metrics[] = {
      {"mean_steps", &SatSummary::mean_steps},
      {"median_steps", &SatSummary::median_of_medians},
      {"percent_solved", &SatSummary::percent_solved},
  };
  for (const auto& [name, field] : metrics) {
    out += csv_field(distribution) + "," + name;
    for (const auto& s : summary) out += "," + format_double(s.*field);
    out += '\n';
  }
  return out;
}

std::string sat_report_json(const SatReport& r) {
  json doc;
  doc["format"] = kSatFormat;
  doc["version"] = kVersion;
  doc["metadata"] = r.metadata;
  doc["max_steps"] = r.max_steps;
  doc["trials"] = json::array();
  for (const auto& t : r.trials) {
    doc["trials"].push_back({{"instance_id", t.instance},
                             {"agent", t.agent},
                             {"trial", t.trial},
                             {"solved", t.solved},
                             {"steps", t.steps}});
  }
  return doc.dump(1) + "\n";
}

SatReport load_sat_report_json(std::string_view text) {
  return parse_json(text, [](const json& doc) {
    check_format(doc, kSatFormat);
    SatReport r;
    r.metadata = doc.at("metadata").get<std::map<std::string, std::string>>();
    r.max_steps = doc.at("max_steps").get<std::int64_t>();
    for (const auto& t : doc.at("trials")) {
      r.trials.push_back({t.at("instance_id").get<std::string>(), t.at("agent").get<std::string>(),
                          t.at("trial").get<std::int64_t>(), t.at("solved").get<bool>(),
                          t.at("steps").get<std::int64_t>()});
    }
    return r;
  });
}

}  // namespace softtabu
