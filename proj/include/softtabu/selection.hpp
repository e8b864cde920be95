#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "softtabu/rng.hpp"

namespace softtabu {

enum class TieBreak { LowestIndex, Random };

TieBreak parse_tie_break(std::string_view s);
std::string to_string(TieBreak t);

// Index of the maximum over values[i] for which admissible(i) holds; ties
// broken per `tie`. Returns values.size() when nothing is admissible.
template <typename Admissible>
std::size_t argmax_index(std::span<const double> values, TieBreak tie, Rng* rng,
                         Admissible&& admissible) {
  std::size_t best = values.size();
  std::size_t ties = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!admissible(i)) continue;
    if (best == values.size() || values[i] > values[best]) {
      best = i;
      ties = 1;
    } else if (values[i] == values[best] && tie == TieBreak::Random && rng != nullptr) {
      // Reservoir sampling over the tied maxima.
      if (uniform_index(*rng, ++ties) == 0) best = i;
    }
  }
  return best;
}

inline std::size_t argmax_index(std::span<const double> values, TieBreak tie, Rng* rng) {
  return argmax_index(values, tie, rng, [](std::size_t) { return true; });
}

}  // namespace softtabu
