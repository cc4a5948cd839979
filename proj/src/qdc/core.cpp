#include "qdc/core.hpp"

#include <cmath>
#include <stdexcept>

namespace qdc {

JonesVector jones_normalize(Complex h, Complex v) {
  const double n2 = std::norm(h) + std::norm(v);
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw std::invalid_argument("jones_normalize: degenerate amplitude");
  }
  const double inv = 1.0 / std::sqrt(n2);
  return {h * inv, v * inv};
}

bool nearly_unit(const JonesVector& j, double tol) {
  return std::abs(j.norm2() - 1.0) <= tol;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  const std::uint64_t z = splitmix64(s);
  s ^= b;
  return z ^ splitmix64(s);
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const char c : text) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed) {
  std::uint64_t s = seed;
  for (auto& word : state_) word = splitmix64(s);
  // xoshiro forbids the all-zero state; splitmix cannot hit it for all four
  // words, but guard anyway
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
}

std::uint64_t RandomStream::next_u64() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RandomStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

RandomStream RandomStream::child(std::uint64_t key) const {
  return RandomStream(mix64(seed_, key));
}

JonesVector random_unit_jones(RandomStream& stream) {
  const double p = stream.uniform();
  const double th = 2.0 * kPi * stream.uniform();
  const double tv = 2.0 * kPi * stream.uniform();
  return {std::polar(std::sqrt(p), th), std::polar(std::sqrt(1.0 - p), tv)};
}

}  // namespace qdc
