#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "nilorb/lie.hpp"
#include "nilorb/padic.hpp"

namespace nilorb::dp {

/// Valued field, residue field, value group.
enum class Sort { VF, RF, Z };

const char* sort_name(Sort s) noexcept;

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { Var, Literal, Constant, Add, Sub, Neg, Mul, Pow, Ord, Ac };
  Kind kind;
  Sort sort;
  std::string name;   // Var
  long value = 0;     // Literal value, Constant index (1-based), Pow exponent
  std::vector<TermPtr> args;
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind { True, False, Eq, Le, Lt, Cong, Not, And, Or, Exists, Forall };
  Kind kind;
  TermPtr lhs, rhs;                 // atoms
  long modulus = 0;                 // Cong
  std::vector<FormulaPtr> args;     // Not: 1, And/Or: 2, quantifiers: body
  std::string var;                  // quantifiers
  Sort var_sort = Sort::VF;
};

bool equal(const TermPtr& a, const TermPtr& b);
bool equal(const FormulaPtr& a, const FormulaPtr& b);

/// A sort-checked formula together with its free variables.
class DPFormula {
 public:
  DPFormula(FormulaPtr root, std::map<std::string, Sort> free) : root_(std::move(root)), free_(std::move(free)) {}

  const FormulaPtr& root() const noexcept { return root_; }
  const std::map<std::string, Sort>& free_variables() const noexcept { return free_; }
  bool has_vf_quantifier() const;
  /// Largest coset constant index used, 0 if none.
  int max_constant() const;

  std::string str() const;

 private:
  FormulaPtr root_;
  std::map<std::string, Sort> free_;
};

/// Sort-checks a hand-built tree. Free variables whose sort is not fixed by
/// their use default to VF; `declared` pins sorts explicitly.
DPFormula check(const FormulaPtr& root, const std::map<std::string, Sort>& declared = {});

/// Throws Error(SyntaxError) with the offending position, Error(SortError) naming the subterm.
DPFormula parse(const std::string& text, const std::map<std::string, Sort>& declared = {});

std::string to_string(const TermPtr& t);
std::string to_string(const FormulaPtr& f);

// Builders.
TermPtr var(const std::string& name, Sort s);
TermPtr literal(long value, Sort s);
TermPtr constant(int index);  // d_index, VF sort
TermPtr add(TermPtr a, TermPtr b);
TermPtr sub(TermPtr a, TermPtr b);
TermPtr mul(TermPtr a, TermPtr b);
TermPtr neg(TermPtr a);
TermPtr power(TermPtr a, long e);
TermPtr ord_of(TermPtr a);
TermPtr ac_of(TermPtr a);
FormulaPtr truth(bool value);
FormulaPtr eq(TermPtr a, TermPtr b);
FormulaPtr le(TermPtr a, TermPtr b);
FormulaPtr lt(TermPtr a, TermPtr b);
FormulaPtr cong(TermPtr a, TermPtr b, long d);
FormulaPtr negate(FormulaPtr f);
FormulaPtr conj(FormulaPtr a, FormulaPtr b);
FormulaPtr disj(FormulaPtr a, FormulaPtr b);
FormulaPtr conj(const std::vector<FormulaPtr>& parts);  // empty: true
FormulaPtr disj(const std::vector<FormulaPtr>& parts);  // empty: false
FormulaPtr exists(const std::string& v, Sort s, FormulaPtr body);
FormulaPtr forall(const std::string& v, Sort s, FormulaPtr body);

std::set<std::string> free_names(const FormulaPtr& f);

/// Negation normal form: negations only directly above atoms.
FormulaPtr to_nnf(const FormulaPtr& f);

/// Pushes existential blocks inward over conjunctions; an equivalent formula.
FormulaPtr miniscope(const FormulaPtr& f);

struct Window {
  long lo = 0;
  long hi = 0;
};

/// Interpretation of the language with coset constants in F.
struct DPStructure {
  Context ctx;
  int m = 1;
  int ell = 1;                     // number of m-th power cosets of the residue units
  std::vector<PadicNumber> constants;  // d_1, ..., d_m
  Window z_window{-16, 16};
  Window vf_valuations{-2, 2};     // valuations enumerated by VF quantifiers
  int vf_digits = 2;               // unit digits enumerated, also the relative precision of VF equality
  bool ring_mode = false;          // VF quantifiers over the valuation ring only

  /// d_1..d_ell lift coset representatives of (k^x)^m, the rest are 1; verified against phi_{ell,m}.
  static DPStructure make(const Context& ctx, int m);
};

enum class Truth { False, True, Unbounded };

const char* truth_name(Truth t) noexcept;

struct EvalResult {
  Truth truth = Truth::False;
  bool exact = true;
  /// "ord-of-zero", "vf-bounded", "z-window", "precision".
  std::set<std::string> flags;
};

using Value = std::variant<PadicNumber, ResidueElement, long>;
using Assignment = std::map<std::string, Value>;

/// Throws Error(UnassignedVariable) for a missing free variable, Error(SortError) for a wrongly sorted value.
EvalResult evaluate(const DPFormula& f, const DPStructure& s, const Assignment& assignment = {});

/// phi_{ell,m}(y1..y_ell): the y_i are nonzero, pairwise in distinct m-th power
/// cosets, and cover the residue field. Throws Error(InvalidDivisor) unless ell | m.
DPFormula build_phi_lm(int ell, int m);
/// exists y1..y_ell : RF. phi_{ell,m}, miniscoped.
DPFormula build_psi_lm(int ell, int m);

/// X^N = 0 on the entries x_i_j (1-based) of an N x N matrix, N = n for sl_n and 2n for sp_2n.
DPFormula nilpotency_formula(int n, Algebra algebra);
Assignment matrix_assignment(const LieMatrix& x);

}  // namespace nilorb::dp
