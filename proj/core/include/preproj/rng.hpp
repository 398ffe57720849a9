#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace preproj {

/// Seeded 64-bit generator. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; bounded draws use rejection sampling
/// instead of std::uniform_int_distribution so results do not depend on the
/// standard library in use.
class Rng {
 public:
  static constexpr std::string_view algorithm = "mt19937_64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform draw from [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool coin() { return (engine_() >> 63) != 0; }

  /// Derive an independent stream, e.g. one per trial.
  Rng fork(std::uint64_t salt) {
    std::uint64_t z = next() ^ (salt + 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return Rng(z ^ (z >> 31));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace preproj
