#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace wearopt {

/// Seeded random source. Wraps mt19937_64 but implements the integer and
/// real draws directly, so streams are identical across standard library
/// implementations (std::uniform_int_distribution is not portable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi], inclusive. Requires lo <= hi.
  int uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    // rejection sampling to avoid modulo bias
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % span;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return lo + static_cast<int>(x % span);
  }

  /// Uniform real in [0, 1) with 53-bit resolution.
  double uniform_real() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool coin() { return (engine_() & 1u) != 0; }

  /// Derive an independent child stream, e.g. one per worker or walk.
  Rng derive(std::uint64_t child_id) {
    std::uint64_t mixed = engine_() ^ (child_id * 0x9e3779b97f4a7c15ull);
    return Rng(mixed);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Fisher-Yates shuffle using Rng draws (std::shuffle is not seed-portable).
template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  for (int i = static_cast<int>(items.size()) - 1; i > 0; --i) {
    int j = rng.uniform_int(0, i);
    std::swap(items[static_cast<size_t>(i)], items[static_cast<size_t>(j)]);
  }
}

}  // namespace wearopt
