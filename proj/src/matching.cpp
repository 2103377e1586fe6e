#include "nilorb/matching.hpp"

#include "nilorb/error.hpp"

namespace nilorb {

std::vector<int> i_lambda(const Partition& lambda) {
  std::vector<bool> boundary(lambda.n() + 1, false);
  int sum = 0;
  for (int part : lambda.parts()) boundary[sum += part] = true;
  std::vector<int> out;
  for (int i = 1; i <= lambda.n(); ++i)
    if (!boundary[i]) out.push_back(i);
  return out;
}

namespace {

// Roots on 1-indexed apartment coordinates.
Root make_root(int n, std::initializer_list<std::pair<int, int>> terms) {
  Root r{std::vector<int>(n, 0)};
  for (const auto& [index, coeff] : terms) r.coeffs[index - 1] += coeff;
  return r;
}

class ConstraintSet {
 public:
  ConstraintSet(Algebra algebra, int n) : h_{algebra, n, {}} {}

  void add(std::initializer_list<std::pair<int, int>> terms, long offset) {
    for (const auto& [index, coeff] : terms)
      if (index < 1 || index > h_.n)
        throw Error(Errc::InvalidTuple, "root index " + std::to_string(index) + " outside 1.." + std::to_string(h_.n));
    Root r = make_root(h_.n, terms);
    for (const auto& c : h_.constraints)
      if (c.root == r) throw Error(Errc::InvalidTuple, "root " + root_name(r) + " produced twice");
    h_.constraints.push_back(Constraint{std::move(r), offset});
  }

  AffineSubspace take() { return std::move(h_); }

 private:
  AffineSubspace h_;
};

}  // namespace

AffineSubspace h_subspace_sl(const Partition& lambda, const PadicNumber& d) {
  const int n = lambda.n();
  if (d.is_zero()) throw Error(Errc::InvalidArgument, "the datum d must be nonzero");
  const long val_d = static_cast<long>(*d.valuation());
  ConstraintSet h(Algebra::SL, n);
  // Only the last superdiagonal entry of J_lambda D(d) carries d.
  for (int i : i_lambda(lambda)) h.add({{i, 1}, {i + 1, -1}}, i == n - 1 ? val_d : 0);
  return h.take();
}

AffineSubspace h_subspace_sp(const Partition& lambda, const QTuple& tuple, const Context& ctx) {
  if (!is_symplectic_admissible(lambda))
    throw Error(Errc::NotAdmissible, lambda.str() + " has an odd part of odd multiplicity");
  validate_tuple(lambda, tuple);
  const int n = lambda.n() / 2;
  ConstraintSet h(Algebra::SP, n);
  int s = 0;
  for (int j = 1; j <= lambda.n(); ++j) {
    const int mj = multiplicity(lambda, j);
    if (mj == 0) continue;
    const int half = j * mj / 2;
    if (j % 2 == 1) {
      for (int k = 1; k < half; ++k)
        if (k % j != 0) h.add({{s + k, 1}, {s + k + 1, -1}}, 0);
    } else {
      const QFormClass& q = tuple.at(j);
      const int big_m = (j / 2 - 1) * mj;
      for (int k = 1; k <= big_m; ++k) h.add({{s + k, 1}, {s + k + mj, -1}}, 0);
      for (int i = 1; i <= q.witt; ++i) h.add({{s + big_m + 2 * i - 1, 1}, {s + big_m + 2 * i, 1}}, 0);
      const auto aniso = aniso_entries(q.aniso, ctx);
      for (int i = 2 * q.witt + 1; i <= mj; ++i) {
        const auto& a = aniso.at(i - 2 * q.witt - 1);
        h.add({{s + big_m + i, 2}}, static_cast<long>(*a.valuation()));
      }
    }
    s += half;
  }
  return h.take();
}

AffineSubspace h_subspace(const OrbitLabel& label, const Context& ctx) {
  validate_label(label, ctx);
  if (label.algebra == Algebra::SL) return h_subspace_sl(label.lambda, sl_datum_value(label, ctx));
  return h_subspace_sp(label.lambda, label.sp, ctx);
}

namespace {

// Every root integral at x must be constant on H, i.e. orthogonal to its directions.
bool only_forced_roots(const ApartmentPoint& x, const AffineSubspace& h, const RootDatum& rd) {
  const auto directions = h.direction_basis();
  for (int index : phi_x(x, rd)) {
    const auto& r = rd.roots()[index];
    for (const auto& b : directions) {
      Rational dot = 0;
      for (std::size_t i = 0; i < b.size(); ++i) dot += r.coeffs[i] * b[i];
      if (dot != 0) return false;
    }
  }
  return true;
}

}  // namespace

MatchResult match(const OrbitLabel& label, const Context& ctx) {
  const auto rd = RootDatum::make(label.algebra, label.n);
  MatchResult out{label,
                  representative(label, ctx),
                  h_subspace(label, ctx),
                  {},
                  {},
                  {},
                  ResidueQuotientElement{rd, ctx, {}},
                  {},
                  0};
  out.point = maximal_facet_point(out.subspace, rd);
  out.reduction = reduce_to_alcove(out.point, *rd);
  // The lattice stays at the unreduced point: the quotient does not change along the Weyl orbit.
  out.lattice = moy_prasad(out.point, rd);
  out.v = residue_project(out.representative, out.lattice);
  out.checks.in_subspace = out.subspace.contains(out.point);
  out.checks.maximal_facet = only_forced_roots(out.point, out.subspace, *rd);
  out.checks.in_lattice = lies_in(out.representative, out.lattice);
  out.checks.degenerate = is_degenerate(out.v);
  out.checks.nilpotent = is_nilpotent(out.representative);
  out.orbit_dimension = orbit_dimension(out.representative);
  return out;
}

MatchSweep match_all(Algebra algebra, int n, const Context& ctx) {
  MatchSweep sweep;
  for (const auto& label : labels(algebra, n, ctx)) {
    try {
      auto result = match(label, ctx);
      if (!result.checks.all()) {
        sweep.failures.push_back({label_string(label, ctx), "verification checks failed"});
        continue;
      }
      sweep.strata[result.orbit_dimension].push_back(sweep.results.size());
      sweep.results.push_back(std::move(result));
    } catch (const Error& e) {
      sweep.failures.push_back({label_string(label, ctx), e.what()});
    }
  }
  return sweep;
}

}  // namespace nilorb
