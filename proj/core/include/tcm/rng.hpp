#pragma once

#include <cstdint>
#include <random>

namespace tcm {

// Deterministic RNG: one seeded stream per logical task. derive() gives
// independent child streams whose seeds depend only on (seed, salt), so
// parallel schedules cannot change results.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(splitmix64(seed)) {}

  double normal() { return normal_(gen_); }
  double uniform() { return uniform_(gen_); }  // [0, 1)
  std::uint64_t integer() { return gen_(); }

  Rng derive(std::uint64_t salt) const {
    return Rng(splitmix64(seed_ ^ (0x9E3779B97F4A7C15ULL + salt * 0xBF58476D1CE4E5B9ULL)));
  }

  std::uint64_t seed() const { return seed_; }

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace tcm
