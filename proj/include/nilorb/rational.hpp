#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "nilorb/matrix.hpp"

namespace nilorb {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;
using RationalMatrix = Matrix<Rational>;

RationalMatrix rational_matrix(std::size_t rows, std::size_t cols);

/// Reduced row echelon form; `pivots` receives the pivot column of each nonzero row.
RationalMatrix rref(RationalMatrix m, std::vector<std::size_t>* pivots = nullptr);

std::size_t rank(const RationalMatrix& m);

/// Basis of {x : m x = 0}, one vector per free column, scaled to primitive integer vectors.
std::vector<RationalVector> nullspace(const RationalMatrix& m);

/// Minimum Euclidean norm solution of a x = b, or nullopt when the system is inconsistent.
std::optional<RationalVector> least_norm_solution(const RationalMatrix& a, const RationalVector& b);

Rational floor_div(const Rational& x);
Rational ceil_div(const Rational& x);
long floor_long(const Rational& x);
long ceil_long(const Rational& x);
bool is_integral(const Rational& x);

std::string to_string(const Rational& x);

}  // namespace nilorb
