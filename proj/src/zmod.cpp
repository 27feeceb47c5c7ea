#include "sfl/zmod.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <unordered_map>

#include "sfl/errors.hpp"

namespace sfl {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return r;
}

namespace {

std::uint64_t reduce(std::int64_t x, std::uint64_t m) {
  const auto mm = static_cast<std::int64_t>(m);
  std::int64_t r = x % mm;
  return static_cast<std::uint64_t>(r < 0 ? r + mm : r);
}

// s a + t b = g = gcd(a, b) over the integers.
void bezout(std::int64_t a, std::int64_t b, std::int64_t& g, std::int64_t& s, std::int64_t& t) {
  std::int64_t r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  g = r0;
  s = s0;
  t = t0;
}

std::uint64_t combine(std::int64_t s, std::uint64_t x, std::int64_t t, std::uint64_t y, std::uint64_t m) {
  unsigned __int128 r = static_cast<unsigned __int128>(reduce(s, m)) * x + static_cast<unsigned __int128>(reduce(t, m)) * y;
  return static_cast<std::uint64_t>(r % m);
}

// Inverse of a modulo m, assuming gcd(a, m) = 1.
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  std::int64_t g, s, t;
  bezout(static_cast<std::int64_t>(a % m), static_cast<std::int64_t>(m), g, s, t);
  return reduce(s, m);
}

struct Diagonalizer {
  std::vector<std::vector<std::uint64_t>>& a;
  ModDiagonalForm& out;
  std::uint64_t m;

  void row_op(int i, int j, std::int64_t s, std::int64_t t, std::int64_t u, std::int64_t v) {
    for (int c = 0; c < out.cols; ++c) {
      std::uint64_t x = a[i][c], y = a[j][c];
      a[i][c] = combine(s, x, t, y, m);
      a[j][c] = combine(u, x, v, y, m);
    }
    out.ops.push_back({i, j, s, t, u, v});
  }

  // (col_i, col_j) <- (s col_i + t col_j, u col_i + v col_j), mirrored in V.
  void col_op(int i, int j, std::int64_t s, std::int64_t t, std::int64_t u, std::int64_t v) {
    for (auto* mat : {&a, &out.v}) {
      for (auto& row : *mat) {
        std::uint64_t x = row[i], y = row[j];
        row[i] = combine(s, x, t, y, m);
        row[j] = combine(u, x, v, y, m);
      }
    }
  }

  // Zeroes entry b against pivot p using a unimodular 2x2 step; returns coefficients.
  static void elimination(std::uint64_t p, std::uint64_t b, std::int64_t& s, std::int64_t& t, std::int64_t& u,
                          std::int64_t& v) {
    if (b % p == 0) {
      s = 1, t = 0, u = -static_cast<std::int64_t>(b / p), v = 1;
      return;
    }
    std::int64_t g;
    bezout(static_cast<std::int64_t>(p), static_cast<std::int64_t>(b), g, s, t);
    u = -static_cast<std::int64_t>(b) / g;
    v = static_cast<std::int64_t>(p) / g;
  }

  void run() {
    const int rows = out.rows, cols = out.cols;
    for (int k = 0; k < std::min(rows, cols); ++k) {
      int pr = -1, pc = -1;
      std::uint64_t best = 0;
      for (int i = k; i < rows && best != 1; ++i)
        for (int j = k; j < cols; ++j) {
          if (a[i][j] == 0) continue;
          std::uint64_t g = std::gcd(a[i][j], m);
          if (pr < 0 || g < best) {
            pr = i, pc = j, best = g;
            if (g == 1) break;
          }
        }
      if (pr < 0) break;
      if (pr != k) row_op(k, pr, 0, 1, 1, 0);
      if (pc != k) col_op(k, pc, 0, 1, 1, 0);
      if (std::gcd(a[k][k], m) == 1 && a[k][k] != 1) {
        // Unit pivot: scale it to 1 so later eliminations are exact subtractions.
        if (k + 1 < rows) {
          const auto inv = static_cast<std::int64_t>(inverse_mod(a[k][k], m));
          const auto piv = static_cast<std::int64_t>(a[k][k]);
          // (r_k, r_{k+1}) <- (inv r_k, piv r_{k+1}) has determinant 1 mod m.
          row_op(k, k + 1, inv, 0, 0, piv);
        }
      }
      for (bool dirty = true; dirty;) {
        dirty = false;
        for (int i = k + 1; i < rows; ++i) {
          if (a[i][k] == 0) continue;
          std::int64_t s, t, u, v;
          elimination(a[k][k], a[i][k], s, t, u, v);
          row_op(k, i, s, t, u, v);
        }
        for (int j = k + 1; j < cols; ++j) {
          if (a[k][j] == 0) continue;
          std::int64_t s, t, u, v;
          elimination(a[k][k], a[k][j], s, t, u, v);
          col_op(k, j, s, t, u, v);
        }
        for (int i = k + 1; i < rows; ++i)
          if (a[i][k] != 0) dirty = true;
      }
      out.diag.push_back(a[k][k]);
      out.rank = k + 1;
    }
  }
};

}  // namespace

ModDiagonalForm diagonalize_mod(std::vector<std::vector<std::uint64_t>> a, std::uint64_t m) {
  if (m == 0) throw Error("InvalidArgument", "modulus must be positive");
  ModDiagonalForm out;
  out.m = m;
  out.rows = static_cast<int>(a.size());
  out.cols = a.empty() ? 0 : static_cast<int>(a[0].size());
  for (auto& row : a) {
    if (static_cast<int>(row.size()) != out.cols) throw Error("DimensionMismatch", "ragged matrix");
    for (auto& x : row) x %= m;
  }
  out.v.assign(out.cols, std::vector<std::uint64_t>(out.cols, 0));
  for (int i = 0; i < out.cols; ++i) out.v[i][i] = 1 % m;
  Diagonalizer{a, out, m}.run();
  return out;
}

std::optional<std::vector<std::uint64_t>> solve_mod(const ModDiagonalForm& form, std::vector<std::uint64_t> c) {
  const std::uint64_t m = form.m;
  if (static_cast<int>(c.size()) != form.rows) throw Error("DimensionMismatch", "right-hand side size differs");
  for (auto& x : c) x %= m;
  for (const auto& op : form.ops) {
    std::uint64_t x = c[op.i], y = c[op.j];
    c[op.i] = combine(op.s, x, op.t, y, m);
    c[op.j] = combine(op.u, x, op.v, y, m);
  }
  std::vector<std::uint64_t> y(form.cols, 0);
  for (int i = 0; i < form.rank; ++i) {
    const std::uint64_t d = form.diag[i];
    const std::uint64_t g = std::gcd(d, m);
    if (c[i] % g != 0) return std::nullopt;
    const std::uint64_t mg = m / g;
    y[i] = mul_mod(c[i] / g % mg, inverse_mod(d / g % mg, mg), mg);
  }
  for (int i = form.rank; i < form.rows; ++i)
    if (c[i] != 0) return std::nullopt;
  std::vector<std::uint64_t> x(form.cols, 0);
  for (int r = 0; r < form.cols; ++r) {
    unsigned __int128 acc = 0;
    for (int k = 0; k < form.cols; ++k) acc = (acc + static_cast<unsigned __int128>(form.v[r][k]) * y[k]) % m;
    x[r] = static_cast<std::uint64_t>(acc);
  }
  return x;
}

std::uint64_t primitive_root(std::uint64_t p) {
  if (p == 2) return 1;
  std::vector<std::uint64_t> factors;
  std::uint64_t r = p - 1;
  for (std::uint64_t q = 2; q * q <= r; ++q) {
    if (r % q) continue;
    factors.push_back(q);
    while (r % q == 0) r /= q;
  }
  if (r > 1) factors.push_back(r);
  for (std::uint64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (std::uint64_t q : factors)
      if (pow_mod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw Error("InternalError", "no primitive root found");
}

namespace {

constexpr std::uint64_t kTableLimit = std::uint64_t(1) << 20;

struct LogTable {
  std::uint64_t p = 0;
  std::uint64_t g = 0;
  std::vector<std::uint32_t> table;                    // p < 2^20: table[x] = log x
  std::unordered_map<std::uint64_t, std::uint64_t> baby;  // otherwise g^j -> j
  std::uint64_t step = 0;
  std::uint64_t giant = 0;                              // g^{-step}

  explicit LogTable(std::uint64_t prime) : p(prime), g(primitive_root(prime)) {
    if (p < kTableLimit) {
      table.assign(p, 0);
      std::uint64_t x = 1;
      for (std::uint64_t k = 0; k + 1 < p; ++k) {
        table[x] = static_cast<std::uint32_t>(k);
        x = x * g % p;
      }
      return;
    }
    step = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(p - 1))));
    baby.reserve(step);
    std::uint64_t x = 1;
    for (std::uint64_t j = 0; j < step; ++j) {
      baby.emplace(x, j);
      x = mul_mod(x, g, p);
    }
    giant = pow_mod(pow_mod(g, step, p), p - 2, p);
  }

  std::uint64_t log(std::uint64_t x) const {
    if (!table.empty()) return table[x];
    std::uint64_t y = x;
    for (std::uint64_t i = 0; i <= step; ++i) {
      auto it = baby.find(y);
      if (it != baby.end()) return (i * step + it->second) % (p - 1);
      y = mul_mod(y, giant, p);
    }
    throw Error("InternalError", "discrete logarithm not found");
  }
};

}  // namespace

std::uint64_t discrete_log(std::uint64_t x, std::uint64_t p) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::shared_ptr<const LogTable>> cache;
  x %= p;
  if (x == 0) throw Error("ZeroValue", "discrete logarithm of zero");
  std::shared_ptr<const LogTable> t;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[p];
    if (!slot) slot = std::make_shared<const LogTable>(p);
    t = slot;
  }
  return t->log(x);
}

}  // namespace sfl
