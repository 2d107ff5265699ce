#ifndef KSUB_RNG_HPP
#define KSUB_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace ksub {

// Seeded generator with a platform-independent draw (mt19937_64 output is
// fixed by the standard; std::uniform_int_distribution is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform-ish integer in [lo, hi] (modulo bias is irrelevant here).
  long next(long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(engine_() % span);
  }

  // Fisher-Yates permutation of 0..n-1.
  std::vector<int> permutation(int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i) {
      const long j = next(0, i);
      std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
    }
    return p;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ksub

#endif  // KSUB_RNG_HPP
