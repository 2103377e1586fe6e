#pragma once

#include <string>
#include <vector>

#include "nilorb/lie.hpp"
#include "nilorb/partitions.hpp"
#include "nilorb/quadforms.hpp"

namespace nilorb {

/// d = pi^j * lift(u_i), with u_i the i-th residue coset representative for m = gcd(lambda).
struct SlDatum {
  int j = 0;
  int i = 0;
  friend bool operator==(const SlDatum& a, const SlDatum& b) { return a.j == b.j && a.i == b.i; }
};

/// A rational nilpotent orbit: (lambda, d) for sl_n, (lambda, Q-tuple) for sp_2n.
struct OrbitLabel {
  Algebra algebra = Algebra::SL;
  int n = 0;
  Partition lambda;
  SlDatum sl;  // sl_n only
  QTuple sp;   // sp_2n only

  friend bool operator==(const OrbitLabel& a, const OrbitLabel& b) {
    return a.algebra == b.algebra && a.n == b.n && a.lambda == b.lambda && a.sl == b.sl && a.sp == b.sp;
  }
};

/// "(3) d=3*pi", "(4) Q4=diag(pi)".
std::string label_string(const OrbitLabel& label, const Context& ctx);
/// Symbolic name of the sl datum: "1", "3", "pi", "3*pi^2".
std::string sl_datum_string(const OrbitLabel& label, const Context& ctx);

std::vector<OrbitLabel> sl_labels(int n, const Context& ctx);
std::vector<OrbitLabel> sp_labels(int n, const Context& ctx);
std::vector<OrbitLabel> labels(Algebra algebra, int n, const Context& ctx);

/// Throws Error(InvalidArgument / NotAdmissible / InvalidTuple) for labels outside the index set.
void validate_label(const OrbitLabel& label, const Context& ctx);

PadicNumber sl_datum_value(const OrbitLabel& label, const Context& ctx);

/// J_lambda D(d), D(d) = diag(1, ..., 1, d).
LieMatrix sl_representative(const OrbitLabel& label, const Context& ctx);
/// Block construction on the subspaces V(j) of the symplectic basis p_1..p_n, q_1..q_n.
LieMatrix sp_representative(const OrbitLabel& label, const Context& ctx);
LieMatrix representative(const OrbitLabel& label, const Context& ctx);

/// X^N = 0 for the matrix size N.
bool is_nilpotent(const LieMatrix& x);

/// dim g - dim of the centralizer of X, by exact rank of ad(X) over Q.
int orbit_dimension(const LieMatrix& x);
int orbit_dimension(const OrbitLabel& label, const Context& ctx);

/// Sum over all roots of ord(alpha(X)) for diagonal regular semisimple X; throws Error(NotRegular).
long weyl_discriminant_valuation(const LieMatrix& x);

}  // namespace nilorb
