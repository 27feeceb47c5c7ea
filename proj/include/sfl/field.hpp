#pragma once

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "sfl/errors.hpp"

namespace sfl {

bool is_prime(std::uint64_t p);

// Element of GF(p), p < 2^31. The modulus travels with the value so that
// matrices need no global context. A modulus of 0 marks an unbound integer
// constant; Eigen creates those through Scalar(0) and Scalar(1), and they
// adopt the modulus of whatever bound operand they meet.
class Fp {
 public:
  Fp() = default;
  Fp(int c) : v_(c) {}
  Fp(long c) : v_(c) {}
  Fp(long long c) : v_(c) {}

  static Fp make(long long v, std::uint32_t p) {
    Fp r;
    r.p_ = p;
    long long m = v % static_cast<long long>(p);
    r.v_ = m < 0 ? m + p : m;
    return r;
  }

  std::uint32_t modulus() const { return p_; }
  bool bound() const { return p_ != 0; }
  // Canonical representative in [0, p) for bound values, the raw constant otherwise.
  long long value() const { return v_; }
  long long value_mod(std::uint32_t p) const {
    long long m = v_ % static_cast<long long>(p);
    return m < 0 ? m + p : m;
  }
  bool is_zero() const { return v_ == 0; }

  Fp inverse() const;

  friend Fp operator+(const Fp& a, const Fp& b) {
    std::uint32_t p = common(a, b);
    if (p == 0) return Fp(a.v_ + b.v_);
    return make(a.value_mod(p) + b.value_mod(p), p);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    std::uint32_t p = common(a, b);
    if (p == 0) return Fp(a.v_ - b.v_);
    return make(a.value_mod(p) - b.value_mod(p), p);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    std::uint32_t p = common(a, b);
    if (p == 0) return Fp(a.v_ * b.v_);
    return make(a.value_mod(p) * b.value_mod(p), p);
  }
  friend Fp operator/(const Fp& a, const Fp& b) {
    std::uint32_t p = common(a, b);
    if (p == 0) {
      if (b.v_ == 0 || a.v_ % b.v_ != 0) throw Error("DivisionByZero", "unbound constant division");
      return Fp(a.v_ / b.v_);
    }
    return a * make(b.value_mod(p), p).inverse();
  }
  Fp operator-() const { return p_ == 0 ? Fp(-v_) : make(-v_, p_); }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }

  friend bool operator==(const Fp& a, const Fp& b) {
    std::uint32_t p = common(a, b);
    if (p == 0) return a.v_ == b.v_;
    return a.value_mod(p) == b.value_mod(p);
  }

  // Total order on representatives; only used for deterministic containers.
  friend bool operator<(const Fp& a, const Fp& b) {
    std::uint32_t p = common(a, b);
    if (p == 0) return a.v_ < b.v_;
    return a.value_mod(p) < b.value_mod(p);
  }

  friend std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.v_; }

 private:
  static std::uint32_t common(const Fp& a, const Fp& b) {
    if (a.p_ == b.p_ || b.p_ == 0) return a.p_;
    if (a.p_ == 0) return b.p_;
    throw Error("FieldMismatch", "GF(" + std::to_string(a.p_) + ") vs GF(" + std::to_string(b.p_) + ")");
  }

  long long v_ = 0;
  std::uint32_t p_ = 0;
};

// Exact rational number, always reduced with positive denominator.
class Rational {
 public:
  using Big = boost::multiprecision::cpp_rational;
  using Int = boost::multiprecision::cpp_int;

  Rational() = default;
  Rational(int v) : v_(v) {}
  Rational(long v) : v_(v) {}
  Rational(long long v) : v_(v) {}
  Rational(const Int& num, const Int& den);
  explicit Rational(Big v) : v_(std::move(v)) {}

  // Accepts "a", "-a", "a/b".
  static Rational parse(const std::string& text);

  Int numerator() const { return boost::multiprecision::numerator(v_); }
  Int denominator() const { return boost::multiprecision::denominator(v_); }
  const Big& big() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  std::string str() const;

  Rational inverse() const;

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(Big(a.v_ + b.v_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(Big(a.v_ - b.v_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(Big(a.v_ * b.v_)); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.v_ == 0) throw Error("DivisionByZero", "rational division by zero");
    return Rational(Big(a.v_ / b.v_));
  }
  Rational operator-() const { return Rational(Big(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

 private:
  Big v_;
};

inline bool is_zero(const Fp& x) { return x == Fp(0); }
inline bool is_zero(const Rational& x) { return x.is_zero(); }

struct Field {
  enum class Kind { prime, rational };

  Kind kind = Kind::rational;
  std::uint32_t p = 0;

  static Field gfp(std::uint64_t p);
  static Field rationals() { return Field{}; }

  bool is_prime_field() const { return kind == Kind::prime; }
  std::uint32_t characteristic() const { return kind == Kind::prime ? p : 0; }
  std::string name() const { return is_prime_field() ? "GF(" + std::to_string(p) + ")" : "Q"; }

  template <class S>
  S element(long long v) const;

  friend bool operator==(const Field&, const Field&) = default;
};

template <>
inline Fp Field::element<Fp>(long long v) const {
  if (kind != Kind::prime) throw Error("FieldMismatch", "GF(p) element requested from " + name());
  return Fp::make(v, p);
}

template <>
inline Rational Field::element<Rational>(long long v) const {
  if (kind != Kind::rational) throw Error("FieldMismatch", "rational element requested from " + name());
  return Rational(v);
}

// Field of a scalar type: tells callers which Field::Kind an instantiation needs.
template <class S>
struct ScalarKind;
template <>
struct ScalarKind<Fp> {
  static constexpr Field::Kind kind = Field::Kind::prime;
};
template <>
struct ScalarKind<Rational> {
  static constexpr Field::Kind kind = Field::Kind::rational;
};

template <class S>
void require_field(const Field& field) {
  if (field.kind != ScalarKind<S>::kind) throw Error("FieldMismatch", "scalar type does not match " + field.name());
}

// Brings a scalar into canonical bound form for the given field.
inline Fp canonical(const Fp& x, const Field& field) {
  require_field<Fp>(field);
  if (x.bound() && x.modulus() != field.p) throw Error("FieldMismatch", "element of GF(" + std::to_string(x.modulus()) + ") used in " + field.name());
  return Fp::make(x.value_mod(field.p), field.p);
}
inline Rational canonical(const Rational& x, const Field& field) {
  require_field<Rational>(field);
  return x;
}

inline Fp inverse(const Fp& x) { return x.inverse(); }
inline Fp one_like(const Fp& x) { return x.bound() ? Fp::make(1, x.modulus()) : Fp(1); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline Rational inverse(const Rational& x) { return x.inverse(); }

// x^e with negative exponents through the inverse.
template <class S>
S power(const S& x, long long e) {
  S base = e < 0 ? inverse(x) : x;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  S acc = one_like(x);
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

// A square root if one exists in the field: brute force for p < 2^20,
// Tonelli-Shanks above, exact integer roots for rationals.
std::optional<Fp> square_root(const Fp& x);
std::optional<Rational> square_root(const Rational& x);

}  // namespace sfl

namespace Eigen {

template <>
struct NumTraits<sfl::Fp> : GenericNumTraits<sfl::Fp> {
  using Real = sfl::Fp;
  using NonInteger = sfl::Fp;
  using Literal = sfl::Fp;
  using Nested = sfl::Fp;
  enum { IsComplex = 0, IsInteger = 0, IsSigned = 1, RequireInitialization = 1, ReadCost = 1, AddCost = 2, MulCost = 4 };
  static inline Real epsilon() { return sfl::Fp(0); }
  static inline Real dummy_precision() { return sfl::Fp(0); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<sfl::Rational> : GenericNumTraits<sfl::Rational> {
  using Real = sfl::Rational;
  using NonInteger = sfl::Rational;
  using Literal = sfl::Rational;
  using Nested = sfl::Rational;
  enum { IsComplex = 0, IsInteger = 0, IsSigned = 1, RequireInitialization = 1, ReadCost = 1, AddCost = 8, MulCost = 16 };
  static inline Real epsilon() { return sfl::Rational(0); }
  static inline Real dummy_precision() { return sfl::Rational(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
