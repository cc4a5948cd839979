#pragma once

#include <complex>
#include <cstdint>
#include <string_view>

namespace qdc {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kInvSqrt2 = 0.707106781186547524400844362104849039;

using Complex = std::complex<double>;

/// Polarization state carried by a messenger: complex field amplitudes on the
/// horizontal/vertical basis. Every message in flight has unit norm.
struct JonesVector {
  Complex h{0.0, 0.0};
  Complex v{0.0, 0.0};

  double norm2() const { return std::norm(h) + std::norm(v); }
};

/// Scales (h, v) to unit norm, preserving direction and phase.
/// Throws std::invalid_argument on a zero vector ("degenerate amplitude").
JonesVector jones_normalize(Complex h, Complex v);
inline JonesVector jones_normalize(const JonesVector& j) { return jones_normalize(j.h, j.v); }

/// True when |h|^2 + |v|^2 is within `tol` of 1.
bool nearly_unit(const JonesVector& j, double tol = 1e-9);

/// Input/output side of a two-port processing unit.
enum class Port : int { p0 = 0, p1 = 1 };

inline constexpr Port other(Port p) { return p == Port::p0 ? Port::p1 : Port::p0; }
inline constexpr int index(Port p) { return static_cast<int>(p); }

/// A single particle in flight: the message plus the (unit, input port) it is
/// about to enter. `unit` indexes the owning topology; -1 means unset.
struct Messenger {
  JonesVector message;
  int unit = -1;
  Port port = Port::p0;
};

// 64-bit seeding/mixing helpers (splitmix64 finalizer, FNV-1a).
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t mix64(std::uint64_t a, std::uint64_t b);
std::uint64_t fnv1a64(std::string_view text);

/// Deterministic uniform random source.
///
/// Generator: xoshiro256** seeded through splitmix64, variates produced as
/// (next_u64() >> 11) * 2^-53. The sequence is a pure function of the seed and
/// is identical on every platform. Single-owner: never share a stream between
/// threads.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Next variate in [0, 1), 53-bit resolution.
  double uniform();

  /// Stream seeded with mix64(seed, key). Depends only on this stream's
  /// original seed and `key`, never on how many variates were drawn.
  RandomStream child(std::uint64_t key) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t state_[4];
  std::uint64_t seed_;
};

/// Random unit Jones vector: |h|^2 uniform on [0, 1], both phases uniform.
JonesVector random_unit_jones(RandomStream& stream);

}  // namespace qdc
