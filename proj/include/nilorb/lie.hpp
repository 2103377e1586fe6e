#pragma once

#include <string>

#include "nilorb/matrix.hpp"
#include "nilorb/padic.hpp"

namespace nilorb {

/// sl_n (matrices of size n) or sp_2n (size 2n, rank n).
enum class Algebra { SL, SP };

const char* algebra_name(Algebra a) noexcept;  // "sl", "sp"

using PadicMatrix = Matrix<PadicNumber>;

PadicMatrix zero_matrix(const Context& ctx, std::size_t rows, std::size_t cols);
PadicMatrix identity_matrix(const Context& ctx, std::size_t n);
PadicMatrix matrix_power(const PadicMatrix& m, int e);
bool is_zero(const PadicMatrix& m);

/// Element of sl_n(F) or sp_2n(F); n is the rank parameter of the algebra.
struct LieMatrix {
  Algebra algebra = Algebra::SL;
  int n = 0;
  PadicMatrix entries;

  std::size_t size() const noexcept { return entries.rows(); }
};

/// Trace zero for sl_n; X^t J + J X = 0 for sp_2n with J = [[0, I], [-I, 0]].
bool is_in_algebra(const LieMatrix& x);

/// Matrix size for the algebra: n for sl_n, 2n for sp_2n.
inline int matrix_size(Algebra a, int n) { return a == Algebra::SL ? n : 2 * n; }

}  // namespace nilorb
