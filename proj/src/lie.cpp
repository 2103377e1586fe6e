#include "nilorb/lie.hpp"

namespace nilorb {

const char* algebra_name(Algebra a) noexcept { return a == Algebra::SL ? "sl" : "sp"; }

PadicMatrix zero_matrix(const Context& ctx, std::size_t rows, std::size_t cols) {
  return PadicMatrix(rows, cols, PadicNumber(ctx));
}

PadicMatrix identity_matrix(const Context& ctx, std::size_t n) {
  PadicMatrix m = zero_matrix(ctx, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = PadicNumber::from_integer(ctx, 1);
  return m;
}

PadicMatrix matrix_power(const PadicMatrix& m, int e) {
  const Context& ctx = m(0, 0).context();
  PadicMatrix out = identity_matrix(ctx, m.rows());
  const PadicNumber zero(ctx);
  for (int i = 0; i < e; ++i) out = multiply(out, m, zero);
  return out;
}

bool is_zero(const PadicMatrix& m) {
  for (const auto& x : m.data())
    if (!x.is_zero()) return false;
  return true;
}

bool is_in_algebra(const LieMatrix& x) {
  const auto& m = x.entries;
  if (m.rows() != m.cols() || static_cast<int>(m.rows()) != matrix_size(x.algebra, x.n)) return false;
  if (m.rows() == 0) return true;
  const Context& ctx = m(0, 0).context();
  if (x.algebra == Algebra::SL) {
    PadicNumber trace(ctx);
    for (std::size_t i = 0; i < m.rows(); ++i) trace = trace + m(i, i);
    return trace.is_zero();
  }
  // With X = [[A, B], [C, D]]: D = -A^t, B and C symmetric.
  const std::size_t n = x.n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!(m(n + i, n + j) + m(j, i)).is_zero()) return false;
      if (!(m(i, n + j) == m(j, n + i))) return false;
      if (!(m(n + i, j) == m(n + j, i))) return false;
    }
  return true;
}

}  // namespace nilorb
