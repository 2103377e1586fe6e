#pragma once

#include <map>
#include <string>
#include <vector>

#include "nilorb/building.hpp"
#include "nilorb/orbits.hpp"

namespace nilorb {

/// {1, ..., n} minus the partial sums of lambda: positions of the ones in J_lambda.
std::vector<int> i_lambda(const Partition& lambda);

/// Intersection of H_{alpha_i + val(d_{i+1})} over i in I_lambda.
AffineSubspace h_subspace_sl(const Partition& lambda, const PadicNumber& d);

/// Intersection of H_alpha over S_j^1 and H_{alpha + val(a_i)} over S_j^2, all j.
/// Throws Error(InvalidTuple) if a root index leaves the basis or a root is produced twice.
AffineSubspace h_subspace_sp(const Partition& lambda, const QTuple& tuple, const Context& ctx);

AffineSubspace h_subspace(const OrbitLabel& label, const Context& ctx);

struct MatchChecks {
  bool in_subspace = false;    // the chosen point lies on H
  bool maximal_facet = false;  // every integral root at the point is forced by H
  bool in_lattice = false;     // representative lies in g_x
  bool degenerate = false;     // its image in V_x is nilpotent
  bool nilpotent = false;      // the representative itself is nilpotent

  bool all() const noexcept { return in_subspace && maximal_facet && in_lattice && degenerate && nilpotent; }
};

struct MatchResult {
  OrbitLabel label;
  LieMatrix representative;
  AffineSubspace subspace;
  ApartmentPoint point;       // maximal facet point of H; the lattice is taken here
  AlcoveReduction reduction;  // the same point moved into the closed fundamental alcove
  MoyPrasadLattice lattice;
  ResidueQuotientElement v;
  MatchChecks checks;
  int orbit_dimension = 0;
};

/// Throws Error(NotInLattice) if the representative misses the lattice, which would be a bug.
MatchResult match(const OrbitLabel& label, const Context& ctx);

struct MatchFailure {
  std::string label;
  std::string message;
};

struct MatchSweep {
  std::vector<MatchResult> results;  // canonical label order
  std::vector<MatchFailure> failures;
  /// Orbit dimension -> indices into results, largest dimension first.
  std::map<int, std::vector<std::size_t>, std::greater<int>> strata;
};

MatchSweep match_all(Algebra algebra, int n, const Context& ctx);

}  // namespace nilorb
