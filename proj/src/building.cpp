#include "nilorb/building.hpp"

#include <cctype>
#include <sstream>

#include "nilorb/error.hpp"

namespace nilorb {

namespace {

Root unit_root(int n, std::initializer_list<std::pair<int, int>> terms) {
  Root r{std::vector<int>(n, 0)};
  for (auto [i, c] : terms) r.coeffs[i] += c;
  return r;
}

}  // namespace

std::string root_name(const Root& r) {
  std::string out;
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
    const int c = r.coeffs[i];
    if (c == 0) continue;
    if (c < 0)
      out += "-";
    else if (!out.empty())
      out += "+";
    if (std::abs(c) != 1) out += std::to_string(std::abs(c));
    out += "e" + std::to_string(i + 1);
  }
  return out.empty() ? "0" : out;
}

RootDatumPtr RootDatum::make(Algebra algebra, int n) {
  if (algebra == Algebra::SL && n < 2) throw Error(Errc::InvalidArgument, "sl_n needs n >= 2");
  if (algebra == Algebra::SP && n < 1) throw Error(Errc::InvalidArgument, "sp_2n needs n >= 1");
  std::shared_ptr<RootDatum> rd(new RootDatum());
  rd->algebra_ = algebra;
  rd->n_ = n;
  auto& roots = rd->roots_;
  auto& coords = rd->coordinates_;
  const auto add_root = [&](Root r, std::vector<Cell> cells) {
    roots.push_back(std::move(r));
    coords.push_back(Coordinate{static_cast<int>(roots.size()) - 1, std::move(cells), root_name(roots.back())});
  };

  if (algebra == Algebra::SL) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) add_root(unit_root(n, {{i, 1}, {j, -1}}), {{i, j, 1}});
    for (int k = 0; k + 1 < n; ++k) {
      coords.push_back(Coordinate{-1, {{k, k, 1}, {k + 1, k + 1, -1}}, "h" + std::to_string(k + 1)});
      rd->simple_.push_back(rd->find_root(unit_root(n, {{k, 1}, {k + 1, -1}})));
    }
    rd->highest_ = rd->find_root(unit_root(n, {{0, 1}, {n - 1, -1}}));
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) add_root(unit_root(n, {{i, 1}, {j, -1}}), {{i, j, 1}, {n + j, n + i, -1}});
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) add_root(unit_root(n, {{i, 1}, {j, 1}}), {{i, n + j, 1}, {j, n + i, 1}});
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) add_root(unit_root(n, {{i, -1}, {j, -1}}), {{n + i, j, 1}, {n + j, i, 1}});
    for (int i = 0; i < n; ++i) add_root(unit_root(n, {{i, 2}}), {{i, n + i, 1}});
    for (int i = 0; i < n; ++i) add_root(unit_root(n, {{i, -2}}), {{n + i, i, 1}});
    for (int i = 0; i < n; ++i) coords.push_back(Coordinate{-1, {{i, i, 1}, {n + i, n + i, -1}}, "h" + std::to_string(i + 1)});
    for (int k = 0; k + 1 < n; ++k) rd->simple_.push_back(rd->find_root(unit_root(n, {{k, 1}, {k + 1, -1}})));
    rd->simple_.push_back(rd->find_root(unit_root(n, {{n - 1, 2}})));
    rd->highest_ = rd->find_root(unit_root(n, {{0, 2}}));
  }
  rd->root_coordinate_.assign(roots.size(), -1);
  for (std::size_t c = 0; c < coords.size(); ++c)
    if (!coords[c].cartan()) rd->root_coordinate_[coords[c].root] = static_cast<int>(c);
  return rd;
}

int RootDatum::find_root(const Root& r) const {
  for (std::size_t i = 0; i < roots_.size(); ++i)
    if (roots_[i] == r) return static_cast<int>(i);
  return -1;
}

RationalVector coroot(const Root& r) {
  long norm = 0;
  for (int c : r.coeffs) norm += c * c;
  RationalVector out;
  for (int c : r.coeffs) out.emplace_back(2 * c, norm);
  for (auto& x : out) x.canonicalize();
  return out;
}

std::string ApartmentPoint::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out += ", ";
    out += coords[i].get_str();
  }
  return out + ")";
}

void validate_point(const ApartmentPoint& x, const RootDatum& rd) {
  if (static_cast<int>(x.coords.size()) != rd.coordinate_count())
    throw Error(Errc::InvalidArgument, "point needs " + std::to_string(rd.coordinate_count()) + " coordinates");
  if (rd.algebra() == Algebra::SL) {
    Rational sum = 0;
    for (const auto& c : x.coords) sum += c;
    if (sum != 0) throw Error(Errc::InvalidArgument, "sl_n apartment coordinates must sum to zero");
  }
}

ApartmentPoint parse_point(const std::string& text, const RootDatum& rd) {
  ApartmentPoint x;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::string t;
    for (char ch : item)
      if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    Rational r;
    if (t.empty() || r.set_str(t, 10) != 0 || r.get_den() == 0)
      throw Error(Errc::InvalidArgument, "bad coordinate '" + item + "'");
    r.canonicalize();
    x.coords.push_back(r);
  }
  validate_point(x, rd);
  return x;
}

Rational evaluate(const Root& r, const ApartmentPoint& x) {
  Rational s = 0;
  for (std::size_t i = 0; i < r.coeffs.size(); ++i)
    if (r.coeffs[i] != 0) s += r.coeffs[i] * x.coords[i];
  return s;
}

std::vector<int> phi_x(const ApartmentPoint& x, const RootDatum& rd) {
  std::vector<int> out;
  for (std::size_t i = 0; i < rd.roots().size(); ++i)
    if (is_integral(evaluate(rd.roots()[i], x))) out.push_back(static_cast<int>(i));
  return out;
}

int facet_dimension(const ApartmentPoint& x, const RootDatum& rd) {
  const auto phi = phi_x(x, rd);
  RationalMatrix m = rational_matrix(phi.size(), rd.coordinate_count());
  for (std::size_t r = 0; r < phi.size(); ++r)
    for (int c = 0; c < rd.coordinate_count(); ++c) m(r, c) = rd.roots()[phi[r]].coeffs[c];
  return rd.rank() - static_cast<int>(rank(m));
}

// ---------------------------------------------------------------------------
// Affine subspaces

std::string AffineSubspace::str() const {
  if (constraints.empty()) return "A";
  std::string out;
  for (const auto& c : constraints) {
    if (!out.empty()) out += " ∩ ";
    out += "H(" + root_name(c.root);
    if (c.offset > 0) out += "+" + std::to_string(c.offset);
    if (c.offset < 0) out += std::to_string(c.offset);
    out += ")";
  }
  return out;
}

namespace {

RationalMatrix constraint_matrix(const AffineSubspace& h, RationalVector* rhs) {
  const std::size_t extra = h.algebra == Algebra::SL ? 1 : 0;
  RationalMatrix a = rational_matrix(h.constraints.size() + extra, h.n);
  if (rhs) rhs->assign(a.rows(), Rational(0));
  for (std::size_t r = 0; r < h.constraints.size(); ++r) {
    for (int c = 0; c < h.n; ++c) a(r, c) = h.constraints[r].root.coeffs[c];
    if (rhs) (*rhs)[r] = -h.constraints[r].offset;
  }
  if (extra)
    for (int c = 0; c < h.n; ++c) a(h.constraints.size(), c) = 1;
  return a;
}

}  // namespace

std::optional<ApartmentPoint> AffineSubspace::solve() const {
  RationalVector rhs;
  const RationalMatrix a = constraint_matrix(*this, &rhs);
  auto x = least_norm_solution(a, rhs);
  if (!x) return std::nullopt;
  return ApartmentPoint{*x};
}

std::vector<RationalVector> AffineSubspace::direction_basis() const { return nullspace(constraint_matrix(*this, nullptr)); }

bool AffineSubspace::contains(const ApartmentPoint& x) const {
  for (const auto& c : constraints)
    if (evaluate(c.root, x) + c.offset != 0) return false;
  if (algebra == Algebra::SL) {
    Rational sum = 0;
    for (const auto& v : x.coords) sum += v;
    if (sum != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Lattices

MoyPrasadLattice moy_prasad(const ApartmentPoint& x, const RootDatumPtr& rd) {
  validate_point(x, *rd);
  MoyPrasadLattice l;
  l.rd = rd;
  for (const auto& c : rd->coordinates()) {
    if (c.cartan()) {
      l.bounds.push_back(0);
      l.plus_bounds.push_back(1);
      continue;
    }
    const Rational v = evaluate(rd->roots()[c.root], x);
    l.bounds.push_back(-floor_long(v));
    l.plus_bounds.push_back(1 - ceil_long(v));
  }
  return l;
}

namespace {

Matrix<long> spread(const RootDatum& rd, const std::vector<long>& per_coordinate) {
  Matrix<long> m(rd.matrix_size(), rd.matrix_size(), 0);
  for (std::size_t c = 0; c < rd.coordinates().size(); ++c)
    for (const auto& cell : rd.coordinates()[c].cells) m(cell.row, cell.col) = per_coordinate[c];
  return m;
}

}  // namespace

Matrix<long> MoyPrasadLattice::bound_matrix() const { return spread(*rd, bounds); }
Matrix<long> MoyPrasadLattice::plus_bound_matrix() const { return spread(*rd, plus_bounds); }

int quotient_dimension(const MoyPrasadLattice& l) {
  int count = 0;
  for (std::size_t c = 0; c < l.bounds.size(); ++c)
    if (l.bounds[c] < l.plus_bounds[c]) ++count;
  return count;
}

std::string lattice_symbol(long exponent) {
  if (exponent == 0) return "O";
  if (exponent == 1) return "P";
  return "P^" + std::to_string(exponent);
}

std::string render_exponents(const Matrix<long>& m) {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out += " ";
      out += lattice_symbol(m(r, c));
    }
    out += "\n";
  }
  return out;
}

PadicNumber coordinate_value(const LieMatrix& x, const RootDatum& rd, int coordinate) {
  const auto& coord = rd.coordinates()[coordinate];
  const auto& m = x.entries;
  if (coord.cartan() && rd.algebra() == Algebra::SL) {
    // h_k = E_kk - E_{k+1,k+1}; the diagonal of X is sum_k c_k h_k, so c_k = X_11 + ... + X_kk.
    const int k = coord.cells.front().row;
    PadicNumber s = m(0, 0);
    for (int i = 1; i <= k; ++i) s = s + m(i, i);
    return s;
  }
  const auto& cell = coord.cells.front();
  return cell.sign > 0 ? m(cell.row, cell.col) : -m(cell.row, cell.col);
}

ResidueQuotientElement residue_project(const LieMatrix& x, const MoyPrasadLattice& l) {
  const auto& rd = *l.rd;
  if (x.algebra != rd.algebra() || x.n != rd.n()) throw Error(Errc::InvalidArgument, "algebra mismatch in projection");
  ResidueQuotientElement v;
  v.rd = l.rd;
  v.ctx = x.entries(0, 0).context();
  for (int c = 0; c < rd.dimension(); ++c) {
    const PadicNumber value = coordinate_value(x, rd, c);
    if (!value.is_zero() && *value.valuation() < l.bounds[c])
      throw Error(Errc::NotInLattice, "coordinate " + rd.coordinates()[c].name + " has valuation " +
                                          std::to_string(*value.valuation()) + " below the bound " +
                                          std::to_string(l.bounds[c]));
    if (l.bounds[c] >= l.plus_bounds[c]) continue;
    const bool on_bound = !value.is_zero() && *value.valuation() == l.bounds[c];
    v.values.emplace(c, on_bound ? ac(value) : residue(v.ctx, 0));
  }
  return v;
}

bool lies_in(const LieMatrix& x, const MoyPrasadLattice& l) {
  for (int c = 0; c < l.rd->dimension(); ++c) {
    const PadicNumber value = coordinate_value(x, *l.rd, c);
    if (!value.is_zero() && *value.valuation() < l.bounds[c]) return false;
  }
  return true;
}

Matrix<std::uint32_t> ResidueQuotientElement::matrix() const {
  Matrix<std::uint32_t> m(rd->matrix_size(), rd->matrix_size(), 0);
  for (const auto& [c, r] : values)
    for (const auto& cell : rd->coordinates()[c].cells) {
      const std::uint32_t term = cell.sign > 0 ? r.code : ctx->neg(r.code);
      m(cell.row, cell.col) = ctx->add(m(cell.row, cell.col), term);
    }
  return m;
}

bool is_nilpotent_residue(const Matrix<std::uint32_t>& m, const FieldContext& ctx) {
  const std::size_t n = m.rows();
  Matrix<std::uint32_t> power = m;
  for (std::size_t step = 1; step < n; ++step) {
    Matrix<std::uint32_t> next(n, n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        if (power(i, k) == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
          if (m(k, j) != 0) next(i, j) = ctx.add(next(i, j), ctx.mul(power(i, k), m(k, j)));
      }
    power = std::move(next);
  }
  for (auto e : power.data())
    if (e != 0) return false;
  return true;
}

bool is_degenerate(const ResidueQuotientElement& v) { return is_nilpotent_residue(v.matrix(), *v.ctx); }

std::string render_residues(const Matrix<std::uint32_t>& m, const FieldContext& ctx) {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out += " ";
      out += ctx.residue_string(m(r, c));
    }
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Alcove reduction and facet points

bool in_fundamental_alcove(const ApartmentPoint& x, const RootDatum& rd) {
  for (int s : rd.simple_roots())
    if (evaluate(rd.roots()[s], x) < 0) return false;
  return evaluate(rd.roots()[rd.highest_root()], x) <= 1;
}

namespace {

void reflect(ApartmentPoint& x, const Root& r, const Rational& shift) {
  const RationalVector cr = coroot(r);
  for (std::size_t i = 0; i < x.coords.size(); ++i) x.coords[i] -= shift * cr[i];
}

}  // namespace

AlcoveReduction reduce_to_alcove(const ApartmentPoint& x, const RootDatum& rd) {
  validate_point(x, rd);
  AlcoveReduction out{x, {}};
  for (;;) {
    bool moved = false;
    for (std::size_t k = 0; k < rd.simple_roots().size(); ++k) {
      const Root& a = rd.roots()[rd.simple_roots()[k]];
      const Rational v = evaluate(a, out.point);
      if (v < 0) {
        reflect(out.point, a, v);
        out.word.push_back("s" + std::to_string(k + 1));
        moved = true;
        break;
      }
    }
    if (moved) continue;
    const Root& theta = rd.roots()[rd.highest_root()];
    const Rational t = evaluate(theta, out.point);
    if (t > 1) {
      reflect(out.point, theta, t - 1);
      out.word.push_back("s0");
      continue;
    }
    return out;
  }
}

ApartmentPoint maximal_facet_point(const AffineSubspace& h, const RootDatumPtr& rd) {
  const auto base = h.solve();
  if (!base) throw Error(Errc::EmptySubspace, "inconsistent constraints " + h.str());
  const auto basis = h.direction_basis();
  if (basis.empty()) return *base;

  // Roots that are constant and integral on all of H.
  const auto forced = [&] {
    std::vector<int> out;
    for (std::size_t i = 0; i < rd->roots().size(); ++i) {
      const Root& r = rd->roots()[i];
      bool constant = true;
      for (const auto& b : basis) {
        Rational s = 0;
        for (std::size_t c = 0; c < b.size(); ++c) s += r.coeffs[c] * b[c];
        if (s != 0) constant = false;
      }
      if (constant && is_integral(evaluate(r, *base))) out.push_back(static_cast<int>(i));
    }
    return out;
  }();

  long max_offset = 0;
  for (const auto& c : h.constraints) max_offset = std::max(max_offset, std::abs(c.offset));
  long m = 4L * (rd->n() + 2) * (1 + max_offset) + 1;
  for (;; ++m) {
    if (!is_prime(m)) continue;
    ApartmentPoint x = *base;
    Rational scale = 1;
    for (const auto& b : basis) {
      scale /= m;
      for (std::size_t c = 0; c < b.size(); ++c) x.coords[c] += b[c] * scale;
    }
    if (phi_x(x, *rd) == forced) return x;
  }
}

}  // namespace nilorb
