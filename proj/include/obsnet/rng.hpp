#pragma once

#include <cstdint>
#include <vector>

namespace obsnet {

// Deterministic splitmix64 generator. Distributions are implemented by hand
// so that results do not depend on the standard library build.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // inclusive bounds
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  std::size_t pick_index(std::size_t n) { return static_cast<std::size_t>(next_u64() % n); }

  template <typename T>
  const T& pick(const std::vector<T>& xs) {
    return xs[pick_index(xs.size())];
  }

private:
  std::uint64_t state_;
};

// Derives an independent stream seed from a base seed and a tag.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t tag) {
  std::uint64_t z = base ^ (0x9e3779b97f4a7c15ull + (tag << 1));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace obsnet
