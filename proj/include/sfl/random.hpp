#pragma once

#include <cstdint>

#include "sfl/field.hpp"

namespace sfl {

// xorshift64* seeded through splitmix64. Every randomized routine takes an
// explicit seed so that any run can be replayed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    state_ = z ^ (z >> 31);
    if (state_ == 0) state_ = 0x2545f4914f6cdd1dULL;
  }

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545f4914f6cdd1dULL;
  }

  // Uniform in [0, bound), bound > 0, by rejection.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % bound);
    std::uint64_t x;
    do x = next();
    while (x >= limit);
    return x % bound;
  }

  long long between(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::uint64_t state_;
};

// Random element: uniform over GF(p); over Q an integer in [-range, range].
template <class S>
S random_element(const Field& field, Rng& rng, bool nonzero, long long rational_range = 9);

template <>
inline Fp random_element<Fp>(const Field& field, Rng& rng, bool nonzero, long long) {
  if (nonzero) return field.element<Fp>(rng.between(1, field.p - 1));
  return field.element<Fp>(static_cast<long long>(rng.below(field.p)));
}

template <>
inline Rational random_element<Rational>(const Field& field, Rng& rng, bool nonzero, long long range) {
  require_field<Rational>(field);
  for (;;) {
    long long v = rng.between(-range, range);
    if (!nonzero || v != 0) return Rational(v);
  }
}

}  // namespace sfl
