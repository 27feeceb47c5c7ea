#pragma once

#include <initializer_list>

#include "sfl/field.hpp"
#include "sfl/matrix.hpp"

namespace testing {

inline sfl::Fp fp(long long v, std::uint32_t p) { return sfl::Fp::make(v, p); }

template <class S>
sfl::Mat<S> mat(const sfl::Field& field, std::initializer_list<std::initializer_list<long long>> rows) {
  const int r = static_cast<int>(rows.size());
  const int c = static_cast<int>(rows.begin()->size());
  sfl::Mat<S> m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (long long v : row) m(i, j++) = field.element<S>(v);
    ++i;
  }
  return m;
}

template <class S>
sfl::Vec<S> vec(const sfl::Field& field, std::initializer_list<long long> xs) {
  sfl::Vec<S> v(static_cast<int>(xs.size()));
  int i = 0;
  for (long long x : xs) v(i++) = field.element<S>(x);
  return v;
}

}  // namespace testing
