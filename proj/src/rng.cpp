#include "softtabu/rng.hpp"

namespace softtabu {

std::uint64_t derive_seed(std::uint64_t root, std::string_view stream, std::uint64_t a,
                          std::uint64_t b) {
  // FNV-1a over the stream name, then mix with the root and the indices.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : stream) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::uint64_t x = splitmix64(root ^ splitmix64(h));
  x = splitmix64(x ^ splitmix64(a + 0x5851f42d4c957f2dULL));
  x = splitmix64(x ^ splitmix64(b + 0x14057b7ef767814fULL));
  return x;
}

}  // namespace softtabu
