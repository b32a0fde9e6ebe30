#include "tflp/rng.hpp"

namespace tflp {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t counter_key(std::uint64_t seed, std::uint64_t stream, std::int64_t counter) {
  std::uint64_t st = seed;
  std::uint64_t h = splitmix64(st);
  st = h ^ (stream * 0xd1b54a32d192ed03ULL);
  h = splitmix64(st);
  st = h ^ static_cast<std::uint64_t>(counter);
  return splitmix64(st);
}

CellEngine::CellEngine(std::uint64_t key) {
  std::uint64_t st = key;
  for (auto& w : s_) w = splitmix64(st);
}

static inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

CellEngine::result_type CellEngine::operator()() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double CellEngine::uniform_open() {
  return ((*this)() >> 11 | 1) * 0x1.0p-53;
}

}  // namespace tflp
