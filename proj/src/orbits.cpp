#include "nilorb/orbits.hpp"

#include "nilorb/building.hpp"
#include "nilorb/error.hpp"
#include "nilorb/rational.hpp"

namespace nilorb {

namespace {

std::string datum_string(int m, const SlDatum& d, const Context& ctx) {
  const auto reps = residue_power_coset_reps(m, ctx);
  const std::string unit = ctx->residue_string(reps.at(d.i).code);
  const int j = d.j;
  if (j == 0) return unit;
  std::string pi = j == 1 ? "pi" : "pi^" + std::to_string(j);
  return unit == "1" ? pi : unit + "*" + pi;
}

}  // namespace

std::string sl_datum_string(const OrbitLabel& label, const Context& ctx) {
  return datum_string(gcd_of(label.lambda), label.sl, ctx);
}

std::string label_string(const OrbitLabel& label, const Context& ctx) {
  std::string out = label.lambda.str();
  if (label.algebra == Algebra::SL) {
    if (gcd_of(label.lambda) > 1) out += " d=" + sl_datum_string(label, ctx);
    return out;
  }
  for (const auto& [i, c] : label.sp) out += " Q" + std::to_string(i) + "=" + c.str();
  return out;
}

std::vector<OrbitLabel> sl_labels(int n, const Context& ctx) {
  if (n < 2) throw Error(Errc::InvalidArgument, "sl_n needs n >= 2");
  std::vector<OrbitLabel> out;
  for (const auto& lambda : enumerate_partitions(n)) {
    const int m = gcd_of(lambda);
    const int units = static_cast<int>(residue_power_coset_reps(m, ctx).size());
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < units; ++i) out.push_back(OrbitLabel{Algebra::SL, n, lambda, SlDatum{j, i}, {}});
  }
  return out;
}

std::vector<OrbitLabel> sp_labels(int n, const Context& ctx) {
  if (n < 1) throw Error(Errc::InvalidArgument, "sp_2n needs n >= 1");
  std::vector<OrbitLabel> out;
  for (const auto& lambda : symplectic_partitions(2 * n))
    for (auto& tuple : enumerate_tuples(lambda, ctx)) out.push_back(OrbitLabel{Algebra::SP, n, lambda, {}, std::move(tuple)});
  return out;
}

std::vector<OrbitLabel> labels(Algebra algebra, int n, const Context& ctx) {
  return algebra == Algebra::SL ? sl_labels(n, ctx) : sp_labels(n, ctx);
}

void validate_label(const OrbitLabel& label, const Context& ctx) {
  const int size = matrix_size(label.algebra, label.n);
  if (label.lambda.n() != size)
    throw Error(Errc::InvalidArgument, "partition " + label.lambda.str() + " does not have size " + std::to_string(size));
  if (label.algebra == Algebra::SL) {
    const int m = gcd_of(label.lambda);
    const int units = static_cast<int>(residue_power_coset_reps(m, ctx).size());
    if (label.sl.j < 0 || label.sl.j >= m || label.sl.i < 0 || label.sl.i >= units)
      throw Error(Errc::InvalidArgument, "coset datum (j=" + std::to_string(label.sl.j) + ", i=" +
                                             std::to_string(label.sl.i) + ") out of range for " + label.lambda.str());
    return;
  }
  if (!is_symplectic_admissible(label.lambda))
    throw Error(Errc::NotAdmissible, label.lambda.str() + " has an odd part of odd multiplicity");
  validate_tuple(label.lambda, label.sp);
  // Each class must be one that the classification produces in this field.
  for (const auto& [i, c] : label.sp)
    if (!(make_class(c.witt, c.aniso, ctx) == c)) throw Error(Errc::InvalidTuple, "class at index " + std::to_string(i) + " has inconsistent invariants");
}

PadicNumber sl_datum_value(const OrbitLabel& label, const Context& ctx) {
  const auto reps = residue_power_coset_reps(gcd_of(label.lambda), ctx);
  return PadicNumber::uniformizer(ctx).pow(label.sl.j) * PadicNumber::lift(reps.at(label.sl.i));
}

LieMatrix sl_representative(const OrbitLabel& label, const Context& ctx) {
  validate_label(label, ctx);
  const int n = label.n;
  LieMatrix x{Algebra::SL, n, zero_matrix(ctx, n, n)};
  const PadicNumber one = PadicNumber::from_integer(ctx, 1);
  int start = 0;
  for (int part : label.lambda.parts()) {
    for (int k = start; k + 1 < start + part; ++k) x.entries(k, k + 1) = one;
    start += part;
  }
  // Right multiplication by diag(1, ..., 1, d) scales the last column.
  if (!x.entries(n - 2, n - 1).is_zero()) x.entries(n - 2, n - 1) = sl_datum_value(label, ctx);
  return x;
}

LieMatrix sp_representative(const OrbitLabel& label, const Context& ctx) {
  validate_label(label, ctx);
  const int n = label.n;
  LieMatrix x{Algebra::SP, n, zero_matrix(ctx, 2 * n, 2 * n)};
  auto& m = x.entries;
  const PadicNumber one = PadicNumber::from_integer(ctx, 1);
  int s = 0;  // s_j: p_{s+1}, ..., q_{s+1}, ... span V(j)
  for (int j = 1; j <= 2 * n; ++j) {
    const int mj = multiplicity(label.lambda, j);
    if (mj == 0) continue;
    const int h = j * mj / 2;
    if (s + h > n) throw Error(Errc::InvalidTuple, "block V(" + std::to_string(j) + ") overruns the basis");
    const auto put_a = [&](int r, int c, const PadicNumber& v) {
      m(s + r, s + c) = v;
      m(n + s + c, n + s + r) = -v;  // D = -A^t
    };
    if (j % 2 == 1) {
      for (int k = 0; k + 1 < h; ++k)
        if ((k + 1) % j != 0) put_a(k, k + 1, one);
    } else {
      const int big_n = j / 2;
      const int mm = (big_n - 1) * mj;
      for (int k = 0; k < mm; ++k) put_a(k, k + mj, one);
      const auto q = minimal_representative(label.sp.at(j), ctx);
      const bool negate = big_n % 2 == 1;
      for (int r = 0; r < mj; ++r)
        for (int c = 0; c < mj; ++c) {
          if (q(r, c).is_zero()) continue;
          m(s + mm + r, n + s + mm + c) = negate ? -q(r, c) : q(r, c);
        }
    }
    s += h;
  }
  return x;
}

LieMatrix representative(const OrbitLabel& label, const Context& ctx) {
  return label.algebra == Algebra::SL ? sl_representative(label, ctx) : sp_representative(label, ctx);
}

bool is_nilpotent(const LieMatrix& x) { return is_zero(matrix_power(x.entries, static_cast<int>(x.size()))); }

int orbit_dimension(const LieMatrix& x) {
  const auto rd = RootDatum::make(x.algebra, x.n);
  const std::size_t size = x.size();
  // Rational specialization: entries outside Q (extension units) become 1, which keeps the geometric orbit.
  RationalMatrix xr = rational_matrix(size, size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) {
      const auto& e = x.entries(i, j);
      if (e.is_zero()) continue;
      const auto r = e.to_rational();
      xr(i, j) = r ? *r : Rational(1);
    }
  const auto& coords = rd->coordinates();
  RationalMatrix ad = rational_matrix(size * size, coords.size());
  for (std::size_t c = 0; c < coords.size(); ++c) {
    RationalMatrix basis = rational_matrix(size, size);
    for (const auto& cell : coords[c].cells) basis(cell.row, cell.col) = cell.sign;
    const RationalMatrix xy = multiply(xr, basis, Rational(0));
    const RationalMatrix yx = multiply(basis, xr, Rational(0));
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j) ad(i * size + j, c) = xy(i, j) - yx(i, j);
  }
  return static_cast<int>(rank(ad));
}

int orbit_dimension(const OrbitLabel& label, const Context& ctx) { return orbit_dimension(representative(label, ctx)); }

long weyl_discriminant_valuation(const LieMatrix& x) {
  const auto rd = RootDatum::make(x.algebra, x.n);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (i != j && !x.entries(i, j).is_zero()) throw Error(Errc::InvalidArgument, "Weyl discriminant needs a diagonal matrix");
  const Context& ctx = x.entries(0, 0).context();
  long total = 0;
  for (const auto& r : rd->roots()) {
    PadicNumber value(ctx);
    for (int i = 0; i < rd->coordinate_count(); ++i)
      if (r.coeffs[i] != 0) value = value + PadicNumber::from_integer(ctx, r.coeffs[i]) * x.entries(i, i);
    if (value.is_zero()) throw Error(Errc::NotRegular, "root " + root_name(r) + " vanishes on X");
    total += *value.valuation();
  }
  return total;
}

}  // namespace nilorb
