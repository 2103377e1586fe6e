#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <memory>
#include <string>
#include <vector>

#include "nilorb/lie.hpp"
#include "nilorb/rational.hpp"

namespace nilorb {

/// Integer linear functional on apartment coordinates.
struct Root {
  std::vector<int> coeffs;
  friend bool operator==(const Root& a, const Root& b) { return a.coeffs == b.coeffs; }
};

/// "e1-e2", "e1+e2", "-e1-e2", "2e1", "-2e1".
std::string root_name(const Root& r);

/// A matrix position carrying a coordinate with the given sign.
struct Cell {
  int row;
  int col;
  int sign;
};

/// One independent coordinate of the Lie algebra: a root space or a Cartan direction.
struct Coordinate {
  int root = -1;  // index into RootDatum::roots, or -1 for Cartan coordinates
  std::vector<Cell> cells;
  std::string name;
  bool cartan() const noexcept { return root < 0; }
};

class RootDatum;
using RootDatumPtr = std::shared_ptr<const RootDatum>;

/// Root system, alcove data and coordinate map of sl_n (type A_{n-1}) or sp_2n (type C_n).
class RootDatum {
 public:
  static RootDatumPtr make(Algebra algebra, int n);

  Algebra algebra() const noexcept { return algebra_; }
  int n() const noexcept { return n_; }
  int rank() const noexcept { return algebra_ == Algebra::SL ? n_ - 1 : n_; }
  int matrix_size() const noexcept { return nilorb::matrix_size(algebra_, n_); }
  /// Number of apartment coordinates (n in both types).
  int coordinate_count() const noexcept { return n_; }
  /// dim g: the number of coordinates.
  int dimension() const noexcept { return static_cast<int>(coordinates_.size()); }

  const std::vector<Root>& roots() const noexcept { return roots_; }
  const std::vector<int>& simple_roots() const noexcept { return simple_; }
  int highest_root() const noexcept { return highest_; }
  const std::vector<Coordinate>& coordinates() const noexcept { return coordinates_; }
  /// Coordinate index carrying the given root.
  int coordinate_of_root(int root) const { return root_coordinate_[root]; }
  int find_root(const Root& r) const;  // -1 if absent

 private:
  RootDatum() = default;
  Algebra algebra_ = Algebra::SL;
  int n_ = 0;
  std::vector<Root> roots_;
  std::vector<int> simple_;
  int highest_ = -1;
  std::vector<Coordinate> coordinates_;
  std::vector<int> root_coordinate_;
};

/// 2 alpha / (alpha, alpha).
RationalVector coroot(const Root& r);

/// Point of the standard apartment; type A points lie in the sum-zero hyperplane.
struct ApartmentPoint {
  RationalVector coords;
  friend bool operator==(const ApartmentPoint& a, const ApartmentPoint& b) { return a.coords == b.coords; }
  /// "(0, 0)", "(-1/2, -1/2)".
  std::string str() const;
};

/// Parses "a,b,..." of rationals; throws Error(InvalidArgument) on bad input or a type A point off the hyperplane.
ApartmentPoint parse_point(const std::string& text, const RootDatum& rd);
void validate_point(const ApartmentPoint& x, const RootDatum& rd);

Rational evaluate(const Root& r, const ApartmentPoint& x);

/// { alpha : alpha(x) in Z }, as root indices.
std::vector<int> phi_x(const ApartmentPoint& x, const RootDatum& rd);
int facet_dimension(const ApartmentPoint& x, const RootDatum& rd);

/// The constraint alpha(x) + offset = 0, i.e. x lies on the affine hyperplane H_{alpha + offset}.
struct Constraint {
  Root root;
  long offset = 0;
};

struct AffineSubspace {
  Algebra algebra = Algebra::SL;
  int n = 0;
  std::vector<Constraint> constraints;

  /// "H(e1-e2) ∩ H(2e2+1)", or "A" for the whole apartment.
  std::string str() const;
  /// Least-norm point, or nullopt when the constraints are inconsistent.
  std::optional<ApartmentPoint> solve() const;
  /// Primitive integer basis of the direction space.
  std::vector<RationalVector> direction_basis() const;
  bool contains(const ApartmentPoint& x) const;
};

/// Entrywise valuation bounds of g_x and g_x^+: entry c lies in P^bounds[c].
struct MoyPrasadLattice {
  RootDatumPtr rd;
  std::vector<long> bounds;       // per coordinate
  std::vector<long> plus_bounds;  // per coordinate

  /// Exponent matrices with each cell carrying its coordinate's bound.
  Matrix<long> bound_matrix() const;
  Matrix<long> plus_bound_matrix() const;
  friend bool operator==(const MoyPrasadLattice& a, const MoyPrasadLattice& b) {
    return a.bounds == b.bounds && a.plus_bounds == b.plus_bounds;
  }
};

MoyPrasadLattice moy_prasad(const ApartmentPoint& x, const RootDatumPtr& rd);
int quotient_dimension(const MoyPrasadLattice& l);

/// "O", "P", "P^2", "P^-1".
std::string lattice_symbol(long exponent);
/// Rows of space-separated symbols, one per line.
std::string render_exponents(const Matrix<long>& m);

/// Element of V_F = g_F / g_F^+, stored by coordinate.
struct ResidueQuotientElement {
  RootDatumPtr rd;
  Context ctx;
  std::map<int, ResidueElement> values;  // one entry per coordinate surviving in V_F, zeros included

  /// Residue matrix over F_q assembled through the coordinate map.
  Matrix<std::uint32_t> matrix() const;
};

/// Coordinate value of X (the Cartan coordinates of sl_n are partial sums of the diagonal).
PadicNumber coordinate_value(const LieMatrix& x, const RootDatum& rd, int coordinate);

/// Throws Error(NotInLattice) naming the first coordinate outside g_F.
ResidueQuotientElement residue_project(const LieMatrix& x, const MoyPrasadLattice& l);
bool lies_in(const LieMatrix& x, const MoyPrasadLattice& l);

bool is_degenerate(const ResidueQuotientElement& v);
bool is_nilpotent_residue(const Matrix<std::uint32_t>& m, const FieldContext& ctx);

/// Matrix of residues rendered with FieldContext::residue_string, rows on separate lines.
std::string render_residues(const Matrix<std::uint32_t>& m, const FieldContext& ctx);

struct AlcoveReduction {
  ApartmentPoint point;
  std::vector<std::string> word;  // "s1", ..., "s0" for the affine reflection, in application order
};

bool in_fundamental_alcove(const ApartmentPoint& x, const RootDatum& rd);
AlcoveReduction reduce_to_alcove(const ApartmentPoint& x, const RootDatum& rd);

/// Point of H with exactly the integral roots forced by H.
ApartmentPoint maximal_facet_point(const AffineSubspace& h, const RootDatumPtr& rd);

}  // namespace nilorb
