#ifndef IDFORGE_RANDOM_HPP
#define IDFORGE_RANDOM_HPP

#include <cstdint>

namespace idforge {

/// splitmix64: small, fast, reproducible across platforms.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n) via rejection-free modulo (bias negligible for the
  /// small ranges used here, but we reject the top sliver anyway).
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t limit = ~std::uint64_t(0) - ~std::uint64_t(0) % n;
    std::uint64_t v;
    do { v = next(); } while (v >= limit);
    return v % n;
  }

private:
  std::uint64_t state_;
};

} // namespace idforge

#endif
