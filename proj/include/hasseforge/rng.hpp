#ifndef HASSEFORGE_RNG_HPP
#define HASSEFORGE_RNG_HPP

#include <cstdint>

namespace hf {

// splitmix64; fixed algorithm so seeded runs are reproducible across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, n); n > 0
  std::uint64_t below(std::uint64_t n) {
    // rejection sampling to avoid modulo bias
    std::uint64_t limit = ~0ULL - (~0ULL % n);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  std::int64_t range(std::int64_t lo, std::int64_t hi) {  // inclusive
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  Rng fork() { return Rng(next()); }

 private:
  std::uint64_t s_;
};

}  // namespace hf

#endif
