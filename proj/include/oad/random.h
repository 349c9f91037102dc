#ifndef OAD_RANDOM_H_
#define OAD_RANDOM_H_

// Draws from std::mt19937_64 by rejection sampling. The standard
// distributions are implementation-defined, these are not, so a seed means
// the same thing on every platform.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace oad {

// Uniform in [0, bound); bound > 0.
inline uint64_t UniformBelow(std::mt19937_64& rng, uint64_t bound) {
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

// Uniform in [lo, hi]; lo <= hi.
inline int UniformInt(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(UniformBelow(rng, static_cast<uint64_t>(hi - lo) + 1));
}

// Fisher-Yates, last position first.
template <typename T>
void Shuffle(std::vector<T>& items, std::mt19937_64& rng) {
  for (size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[UniformBelow(rng, i)]);
  }
}

}  // namespace oad

#endif  // OAD_RANDOM_H_
