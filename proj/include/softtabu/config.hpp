#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "softtabu/features.hpp"
#include "softtabu/graph.hpp"
#include "softtabu/linear_q.hpp"

namespace softtabu {

// Flat `key = value` settings. Blank lines and `#` comments are ignored.
// Typed getters throw UsageError on malformed values.
class Config {
 public:
  Config() = default;

  // Throws ParseError on a line without '=' or a repeated key.
  static Config parse(std::string_view text, const std::string& source = {});
  static Config load_file(const std::string& path);

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  // Parses "key=value".
  void set_assignment(std::string_view assignment);
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, std::string>& values() const noexcept { return values_; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::optional<std::string> get_optional(const std::string& key) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  // Comma-separated list; empty items are dropped.
  std::vector<std::string> get_list(const std::string& key,
                                    const std::vector<std::string>& fallback) const;

  // Throws UsageError naming the first key outside `allowed`.
  void require_known(const std::set<std::string>& allowed, std::string_view command) const;

 private:
  std::map<std::string, std::string> values_;
};

// Key groups accepted by the command builders below.
extern const std::set<std::string> kTrainKeys;
extern const std::set<std::string> kFeatureKeys;
extern const std::set<std::string> kGraphKeys;

TrainConfig train_config_from(const Config& c);
FeatureSpec feature_spec_from(const Config& c);
// Graph distribution; the seed is left at 0 for the caller to derive.
GenSpec gen_spec_from(const Config& c);

}  // namespace softtabu
