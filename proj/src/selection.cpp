#include "softtabu/selection.hpp"

#include "softtabu/errors.hpp"

namespace softtabu {

TieBreak parse_tie_break(std::string_view s) {
  if (s == "lowest_index" || s == "lowest") return TieBreak::LowestIndex;
  if (s == "random") return TieBreak::Random;
  throw ValidationError("unknown tie_break '" + std::string(s) + "'");
}

std::string to_string(TieBreak t) { return t == TieBreak::Random ? "random" : "lowest_index"; }

}  // namespace softtabu
