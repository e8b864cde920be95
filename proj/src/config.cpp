#include "softtabu/config.hpp"

#include <charconv>

#include "softtabu/errors.hpp"
#include "softtabu/text.hpp"

namespace softtabu {

const std::set<std::string> kTrainKeys = {
    "discount",         "learning_rate",        "epsilon_start",
    "epsilon_end",      "epsilon_decay_steps",  "replay_capacity",
    "batch_size",       "target_sync_interval", "episodes",
    "steps_per_episode_mult",
};

const std::set<std::string> kFeatureKeys = {
    "gain_scale", "time_scale", "never_flipped_value", "time_window_mult"};

const std::set<std::string> kGraphKeys = {"family", "n", "param", "weights"};

namespace {

std::pair<std::string, std::string> split_assignment(std::string_view line) {
  const auto eq = line.find('=');
  if (eq == std::string_view::npos) return {};
  return {std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1)))};
}

}  // namespace

Config Config::parse(std::string_view text, const std::string& source) {
  Config c;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find('\n', start), text.size());
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto [key, value] = split_assignment(line);
    if (key.empty()) throw ParseError(line_no, "expected key = value", source);
    if (c.has(key)) throw ParseError(line_no, "duplicate key '" + key + "'", source);
    c.values_[key] = value;
  }
  return c;
}

Config Config::load_file(const std::string& path) { return parse(read_file(path), path); }

void Config::set_assignment(std::string_view assignment) {
  auto [key, value] = split_assignment(assignment);
  if (key.empty()) throw UsageError("expected key=value, got '" + std::string(assignment) + "'");
  values_[key] = value;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::optional<std::string> Config::get_optional(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end() || it->second.empty()) return std::nullopt;
  return it->second;
}

std::int64_t Config::get_int(const std::string& key, std::int64_t fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  long long v = 0;
  if (!parse_int64(it->second, v)) {
    throw UsageError("config key '" + key + "' expects an integer, got '" + it->second + "'");
  }
  return v;
}

std::uint64_t Config::get_uint(const std::string& key, std::uint64_t fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const auto& s = it->second;
  std::uint64_t v = 0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (s.empty() || ec != std::errc() || ptr != last) {
    throw UsageError("config key '" + key + "' expects a non-negative integer, got '" + s + "'");
  }
  return v;
}

double Config::get_double(const std::string& key, double fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  double v = 0.0;
  if (!parse_double(it->second, v)) {
    throw UsageError("config key '" + key + "' expects a number, got '" + it->second + "'");
  }
  return v;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const auto& s = it->second;
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw UsageError("config key '" + key + "' expects a boolean, got '" + s + "'");
}

std::vector<std::string> Config::get_list(const std::string& key,
                                          const std::vector<std::string>& fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::vector<std::string> out;
  for (auto item : split(it->second, ",")) {
    item = trim(item);
    if (!item.empty()) out.emplace_back(item);
  }
  return out;
}

void Config::require_known(const std::set<std::string>& allowed, std::string_view command) const {
  for (const auto& [key, value] : values_) {
    if (!allowed.count(key)) {
      throw UsageError("unknown config key '" + key + "' for " + std::string(command));
    }
  }
}

TrainConfig train_config_from(const Config& c) {
  TrainConfig t;
  t.discount = c.get_double("discount", t.discount);
  t.learning_rate = c.get_double("learning_rate", t.learning_rate);
  t.epsilon_start = c.get_double("epsilon_start", t.epsilon_start);
  t.epsilon_end = c.get_double("epsilon_end", t.epsilon_end);
  t.epsilon_decay_steps = c.get_int("epsilon_decay_steps", t.epsilon_decay_steps);
  t.replay_capacity = c.get_uint("replay_capacity", t.replay_capacity);
  t.batch_size = c.get_uint("batch_size", t.batch_size);
  t.target_sync_interval = c.get_int("target_sync_interval", t.target_sync_interval);
  t.episodes = c.get_int("episodes", t.episodes);
  t.steps_per_episode_mult = c.get_int("steps_per_episode_mult", t.steps_per_episode_mult);
  t.seed = c.get_uint("seed", t.seed);
  try {
    t.validate();
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
  return t;
}

FeatureSpec feature_spec_from(const Config& c) {
  FeatureSpec f;
  try {
    if (auto s = c.get_optional("gain_scale")) f.gain_scale = parse_gain_scale(*s);
    if (auto s = c.get_optional("time_scale")) f.time_scale = parse_time_scale(*s);
    f.never_flipped_value = c.get_double("never_flipped_value", f.never_flipped_value);
    f.time_window_mult = c.get_int("time_window_mult", f.time_window_mult);
    f.validate();
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
  return f;
}

GenSpec gen_spec_from(const Config& c) {
  GenSpec g;
  try {
    if (auto s = c.get_optional("family")) g.family = parse_graph_family(*s);
    if (auto s = c.get_optional("weights")) g.weights = parse_weight_scheme(*s);
    const auto n = c.get_int("n", static_cast<std::int64_t>(g.n));
    if (n < 0) throw UsageError("config key 'n' must be non-negative");
    g.n = static_cast<std::size_t>(n);
    g.param = c.get_double("param", g.family == GraphFamily::BA ? 4.0 : g.param);
    g.validate();
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
  return g;
}

}  // namespace softtabu
