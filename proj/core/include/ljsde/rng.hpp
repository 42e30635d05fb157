#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace ljsde {

// Seeded generator owned by exactly one run/chain. Wraps mt19937_64 with the
// two distributions the library draws from.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  // Uniform on [0, 1).
  double uniform() { return uniform_(engine_); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t bits() { return engine_(); }

  void fill_normal(std::span<double> out) {
    for (double& v : out) v = normal();
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

// Per-run seed derivation: splitmix64 finalizer applied to
// master + (index + 1) * 0x9E3779B97F4A7C15. The constants are part of the
// output format and must not change.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index);

}  // namespace ljsde
