#pragma once

#include <cstdint>
#include <random>

namespace zlab {

// Seeded generator with explicit value mapping so that streams are
// reproducible bit-for-bit from the recorded seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Standard normal via Box-Muller (deterministic, no library distribution).
  double normal();

  /// Independent substream derived from this stream's state.
  Rng fork() { return Rng(next() ^ 0x9e3779b97f4a7c15ull); }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace zlab
