#include "sfl/field.hpp"

#include <cctype>

namespace sfl {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Fp Fp::inverse() const {
  if (p_ == 0) {
    if (v_ == 1 || v_ == -1) return Fp(v_);
    throw Error("DivisionByZero", "inverse of unbound constant");
  }
  long long a = value_mod(p_);
  if (a == 0) throw Error("DivisionByZero", "inverse of 0 in GF(" + std::to_string(p_) + ")");
  long long old_r = a, r = p_, old_s = 1, s = 0;
  while (r != 0) {
    long long q = old_r / r;
    long long t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  return make(old_s, p_);
}

Rational::Rational(const Int& num, const Int& den) {
  if (den == 0) throw Error("DivisionByZero", "rational with zero denominator");
  v_ = den < 0 ? Big(Int(-num), Int(-den)) : Big(num, den);
}

Rational Rational::parse(const std::string& text) {
  auto parse_int = [&](const std::string& s) -> Int {
    std::size_t i = 0;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i >= s.size()) throw Error("ParseError", "malformed rational '" + text + "'");
    for (std::size_t k = i; k < s.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(s[k]))) throw Error("ParseError", "malformed rational '" + text + "'");
    return Int(s);
  };
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text), Int(1));
  return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::string Rational::str() const {
  Int d = denominator();
  if (d == 1) return numerator().str();
  return numerator().str() + "/" + d.str();
}

Rational Rational::inverse() const {
  if (v_ == 0) throw Error("DivisionByZero", "inverse of 0 in Q");
  return Rational(Big(1 / v_));
}

Field Field::gfp(std::uint64_t p) {
  if (p < 2 || p >= (std::uint64_t(1) << 31) || !is_prime(p))
    throw Error("InvalidField", std::to_string(p) + " is not a prime in [2, 2^31)");
  Field f;
  f.kind = Kind::prime;
  f.p = static_cast<std::uint32_t>(p);
  return f;
}

std::optional<Fp> square_root(const Fp& x) {
  if (!x.bound()) throw Error("FieldMismatch", "square root of unbound constant");
  const std::uint64_t p = x.modulus();
  const std::uint64_t a = static_cast<std::uint64_t>(x.value());
  if (a == 0) return x;
  if (p == 2) return x;
  if (p < (1u << 20)) {
    for (std::uint64_t r = 1; r <= p / 2; ++r)
      if (r * r % p == a) return Fp::make(static_cast<long long>(r), static_cast<std::uint32_t>(p));
    return std::nullopt;
  }
  auto pw = [p](std::uint64_t b, std::uint64_t e) {
    std::uint64_t acc = 1;
    b %= p;
    while (e) {
      if (e & 1) acc = acc * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return acc;
  };
  if (pw(a, (p - 1) / 2) != 1) return std::nullopt;
  // Tonelli-Shanks.
  std::uint64_t q = p - 1, s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  std::uint64_t z = 2;
  while (pw(z, (p - 1) / 2) != p - 1) ++z;
  std::uint64_t m = s, c = pw(z, q), t = pw(a, q), r = pw(a, (q + 1) / 2);
  while (t != 1) {
    std::uint64_t i = 0, t2 = t;
    while (t2 != 1) {
      t2 = t2 * t2 % p;
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t k = 0; k + 1 < m - i; ++k) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return Fp::make(static_cast<long long>(r), static_cast<std::uint32_t>(p));
}

std::optional<Rational> square_root(const Rational& x) {
  if (x.is_zero()) return x;
  if (x < Rational(0)) return std::nullopt;
  Rational::Int n = x.numerator(), d = x.denominator();
  Rational::Int rn = boost::multiprecision::sqrt(n), rd = boost::multiprecision::sqrt(d);
  if (rn * rn != n || rd * rd != d) return std::nullopt;
  return Rational(rn, rd);
}

}  // namespace sfl
