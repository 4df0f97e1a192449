#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace ortho {

// Counter-based deterministic generator (splitmix64 finalizer over an additive
// Weyl sequence). Everything random in the toolkit draws from this class with
// hand-rolled sampling below it, never std::*_distribution: the standard
// distributions are implementation-defined, and experiment reruns must be
// byte-identical on any platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with the full 53 bits a double can hold.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniformIn(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Unbiased uniform integer in [0, n); rejects the tail partial block.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % n;
  }

  // Standard normal via Box-Muller; the paired value is cached.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Stable seed for a named substream, so independent random purposes (view
// selection, noise, ordering) never share a draw sequence.
inline std::uint64_t deriveSeed(std::uint64_t base, std::uint64_t tag) {
  SplitMix64 g(base ^ (0x9e3779b97f4a7c15ull * (tag + 1)));
  return g.next();
}

// In-place Fisher-Yates shuffle driven by the deterministic generator.
template <typename T>
void shuffle(std::vector<T>& values, SplitMix64& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    std::swap(values[i - 1], values[rng.below(i)]);
  }
}

}  // namespace ortho
