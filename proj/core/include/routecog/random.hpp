#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace routecog {

/// Seeded uniform stream. Independent sub-streams are derived from a root
/// seed and a path of integers (e.g. iteration, packet id), so results do
/// not depend on the order in which consumers run.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  static RandomStream derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  std::uint64_t draws() const { return draws_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t draws_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace routecog
