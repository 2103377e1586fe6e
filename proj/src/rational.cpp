#include "nilorb/rational.hpp"

#include <numeric>

namespace nilorb {

RationalMatrix rational_matrix(std::size_t rows, std::size_t cols) {
  return RationalMatrix(rows, cols, Rational(0));
}

RationalMatrix rref(RationalMatrix m, std::vector<std::size_t>* pivots) {
  if (pivots) pivots->clear();
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(row, c));
    const Rational lead = m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) /= lead;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Rational factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
    }
    if (pivots) pivots->push_back(col);
    ++row;
  }
  return m;
}

std::size_t rank(const RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  rref(m, &pivots);
  return pivots.size();
}

namespace {

RationalVector primitive(RationalVector v) {
  mpz_class den = 1;
  for (const auto& x : v) den = lcm(den, mpz_class(x.get_den()));
  mpz_class g = 0;
  for (auto& x : v) {
    x *= den;
    g = gcd(g, mpz_class(x.get_num()));
  }
  if (g != 0)
    for (auto& x : v) x /= g;
  return v;
}

}  // namespace

std::vector<RationalVector> nullspace(const RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  const RationalMatrix reduced = rref(m, &pivots);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;

  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(m.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -reduced(r, free);
    basis.push_back(primitive(std::move(v)));
  }
  return basis;
}

std::optional<RationalVector> least_norm_solution(const RationalMatrix& a, const RationalVector& b) {
  const std::size_t n = a.cols();
  RationalMatrix aug = rational_matrix(a.rows(), n + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n) = b[r];
  }
  std::vector<std::size_t> pivots;
  const RationalMatrix reduced = rref(aug, &pivots);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;

  // Independent rows of the reduced system span the row space; the least-norm
  // solution lies in that row space: x = R^T y with (R R^T) y = c.
  const std::size_t k = pivots.size();
  if (k == 0) return RationalVector(n, Rational(0));
  RationalMatrix gram = rational_matrix(k, k + 1);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      Rational s = 0;
      for (std::size_t c = 0; c < n; ++c) s += reduced(i, c) * reduced(j, c);
      gram(i, j) = s;
    }
    gram(i, k) = reduced(i, n);
  }
  const RationalMatrix solved = rref(gram);
  RationalVector x(n, Rational(0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c < n; ++c) x[c] += solved(i, k) * reduced(i, c);
  return x;
}

Rational floor_div(const Rational& x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return Rational(q);
}

Rational ceil_div(const Rational& x) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return Rational(q);
}

long floor_long(const Rational& x) { return floor_div(x).get_num().get_si(); }
long ceil_long(const Rational& x) { return ceil_div(x).get_num().get_si(); }

bool is_integral(const Rational& x) { return x.get_den() == 1; }

std::string to_string(const Rational& x) { return x.get_str(); }

}  // namespace nilorb
