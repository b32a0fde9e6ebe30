#pragma once

#include <cstdint>
#include <limits>

namespace tflp {

std::uint64_t splitmix64(std::uint64_t& state);

// Hash of (seed, stream, counter); the counter is a signed cell index.
std::uint64_t counter_key(std::uint64_t seed, std::uint64_t stream, std::int64_t counter);

// xoshiro256** seeded from a single 64-bit key; satisfies UniformRandomBitGenerator.
class CellEngine {
 public:
  using result_type = std::uint64_t;
  explicit CellEngine(std::uint64_t key);
  CellEngine(std::uint64_t seed, std::uint64_t stream, std::int64_t counter)
      : CellEngine(counter_key(seed, stream, counter)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  // Uniform on (0, 1), never returns 0 or 1.
  double uniform_open();

 private:
  std::uint64_t s_[4];
};

}  // namespace tflp
