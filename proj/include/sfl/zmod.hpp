#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace sfl {

// Diagonal form U A V = D of an integer matrix over Z/m, built from
// unimodular 2x2 row and column operations. Row operations are kept as a
// replayable list so right-hand sides can be transformed later; V is stored.
struct ModDiagonalForm {
  struct RowOp {
    int i, j;                    // (row_i, row_j) <- (s row_i + t row_j, u row_i + v row_j)
    std::int64_t s, t, u, v;
  };
  std::uint64_t m = 1;
  int rows = 0;
  int cols = 0;
  int rank = 0;
  std::vector<std::uint64_t> diag;            // first `rank` diagonal entries, nonzero mod m
  std::vector<RowOp> ops;
  std::vector<std::vector<std::uint64_t>> v;  // cols x cols
};

ModDiagonalForm diagonalize_mod(std::vector<std::vector<std::uint64_t>> a, std::uint64_t m);

// Some x with A x = c (mod m), or none when the system is inconsistent.
std::optional<std::vector<std::uint64_t>> solve_mod(const ModDiagonalForm& form, std::vector<std::uint64_t> c);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m);

// Smallest generator of GF(p)*.
std::uint64_t primitive_root(std::uint64_t p);

// log_g(x) in [0, p-1) for the primitive root g; x must be nonzero mod p.
// Tables below 2^20, baby-step/giant-step above; both cached per p.
std::uint64_t discrete_log(std::uint64_t x, std::uint64_t p);

}  // namespace sfl
