#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nilorb {

class FieldContext;
using Context = std::shared_ptr<const FieldContext>;

/// Ambient data of the local field F and its residue field F_q, q = p^k.
///
/// F is the unramified extension of Q_p of degree k (Q_p itself when k = 1)
/// with uniformizer p. Its valuation ring is Z_p[t]/(f) for the monic integer
/// lift f of `modulus()`, so the residue field is F_p[t]/(f mod p).
///
/// Residue field elements are handled as codes in [0, q): the code of
/// c_0 + c_1 t + ... + c_{k-1} t^{k-1} is sum c_i p^i. Code order is the fixed
/// enumeration order of F_q used everywhere a "smallest" element is chosen.
class FieldContext {
 public:
  static constexpr int kDefaultPrecision = 32;

  /// Throws Error(InvalidArgument) unless p is an odd prime, k >= 1,
  /// precision >= 1 and q fits the residue tables. An empty `modulus` picks
  /// the lexicographically smallest monic irreducible of degree k.
  static Context make(std::int64_t p, int k = 1, int precision = kDefaultPrecision,
                      std::vector<std::int64_t> modulus = {});

  std::int64_t p() const noexcept { return p_; }
  int k() const noexcept { return k_; }
  int precision() const noexcept { return precision_; }
  std::int64_t q() const noexcept { return q_; }

  /// Coefficients of the monic defining polynomial, lowest degree first (size k + 1).
  /// For k = 1 this is t, i.e. {0, 1}.
  const std::vector<std::int64_t>& modulus() const noexcept { return modulus_; }

  /// p^precision, the modulus for stored unit parts.
  const mpz_class& unit_modulus() const noexcept { return unit_modulus_; }

  // Residue field arithmetic on codes.
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const;  // a != 0
  std::uint32_t pow(std::uint32_t a, std::int64_t e) const;
  std::uint32_t from_integer(std::int64_t n) const;
  std::uint32_t one() const noexcept { return 1; }

  /// Discrete logarithm base the fixed generator of F_q^x; a != 0.
  std::uint32_t log(std::uint32_t a) const { return log_[a]; }
  std::uint32_t generator() const noexcept { return exp_[1 % exp_.size()]; }

  bool is_square(std::uint32_t a) const;
  /// The smallest non-square of F_q^x in code order; its lift is the fixed epsilon.
  std::uint32_t nonresidue() const noexcept { return nonresidue_; }

  std::vector<std::int64_t> coefficients(std::uint32_t code) const;
  std::uint32_t code(const std::vector<std::int64_t>& coefficients) const;

  /// Residue rendered for display: a balanced integer when k = 1, a polynomial in t otherwise.
  std::string residue_string(std::uint32_t code) const;

  friend bool operator==(const FieldContext& a, const FieldContext& b) {
    return a.p_ == b.p_ && a.k_ == b.k_ && a.precision_ == b.precision_ && a.modulus_ == b.modulus_;
  }

 private:
  FieldContext() = default;

  std::int64_t p_ = 0;
  int k_ = 1;
  int precision_ = kDefaultPrecision;
  std::int64_t q_ = 0;
  std::vector<std::int64_t> modulus_;
  mpz_class unit_modulus_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  std::uint32_t nonresidue_ = 0;
};

bool is_prime(std::int64_t n);

/// True iff the monic polynomial (lowest coefficient first) is irreducible over F_p.
bool is_irreducible_mod_p(const std::vector<std::int64_t>& monic, std::int64_t p);

/// Smallest monic irreducible polynomial of degree k over F_p, ordered by its
/// non-leading coefficients read as a base-p number (c_0 least significant).
std::vector<std::int64_t> smallest_irreducible(std::int64_t p, int k);

/// An element of the residue field k_F = F_q.
struct ResidueElement {
  std::uint32_t code = 0;
  Context ctx;

  bool is_zero() const noexcept { return code == 0; }
  friend bool operator==(const ResidueElement& a, const ResidueElement& b) { return a.code == b.code; }
};

ResidueElement residue(const Context& ctx, std::uint32_t code);

/// Truncated element of F: p^v * u with u a unit known to `precision` p-adic digits.
///
/// A number is *exact* when the balanced lift of its stored unit is the true
/// value (integers, and ring operations on them that stay inside the
/// window |u| <= (p^N - 1)/2). Exactness lets 1 + (-1) return 0 while a
/// cancellation of truncated values reports PrecisionLoss.
class PadicNumber {
 public:
  explicit PadicNumber(Context ctx);  // zero

  static PadicNumber from_integer(const Context& ctx, const mpz_class& n);
  static PadicNumber from_integer(const Context& ctx, long n) { return from_integer(ctx, mpz_class(n)); }
  static PadicNumber from_rational(const Context& ctx, const mpq_class& x);
  static PadicNumber uniformizer(const Context& ctx);
  /// The fixed non-square unit: the lift of FieldContext::nonresidue().
  static PadicNumber epsilon(const Context& ctx);
  /// Lift of a residue with integer coefficients in [0, p).
  static PadicNumber lift(const ResidueElement& r);
  /// p^valuation times the given unit coefficients (reduced mod p^N); the
  /// coefficients must not all be divisible by p.
  static PadicNumber from_unit(const Context& ctx, std::int64_t valuation,
                               std::vector<mpz_class> unit, bool exact);

  const Context& context() const noexcept { return ctx_; }
  bool is_zero() const noexcept { return !valuation_.has_value(); }
  /// nullopt encodes INFINITY, the valuation of 0.
  std::optional<std::int64_t> valuation() const noexcept { return valuation_; }
  bool exact() const noexcept { return exact_; }

  /// Unit part coefficients in [0, p^N), one per power of t; empty for zero.
  const std::vector<mpz_class>& unit() const noexcept { return unit_; }

  /// Base-p digits of the unit part; digit i holds the k coefficients of p^i.
  std::vector<std::vector<std::int64_t>> digits() const;

  PadicNumber operator+(const PadicNumber& other) const;
  PadicNumber operator-(const PadicNumber& other) const;
  PadicNumber operator-() const;
  PadicNumber operator*(const PadicNumber& other) const;
  PadicNumber operator/(const PadicNumber& other) const;
  PadicNumber inverse() const;
  PadicNumber pow(std::int64_t e) const;

  /// Equality of stored data (valuation and unit digits); exactness is ignored.
  friend bool operator==(const PadicNumber& a, const PadicNumber& b);

  /// The exact rational value, when the number is exact and lies in Q_p.
  std::optional<mpq_class> to_rational() const;

  /// "p^v * (d0 + d1*p + ...)"; "0" for zero.
  std::string str() const;
  /// Short form for exact numbers in Q ("-1", "10", "1/3"), otherwise str().
  std::string display() const;

 private:
  Context ctx_;
  std::optional<std::int64_t> valuation_;
  std::vector<mpz_class> unit_;
  bool exact_ = true;
};

std::optional<std::int64_t> ord(const PadicNumber& x);
ResidueElement ac(const PadicNumber& x);

/// gcd(m, q - 1) residues, pairwise in distinct (F_q^x)^m cosets, the
/// smallest possible in code order.
std::vector<ResidueElement> residue_power_coset_reps(std::int64_t m, const Context& ctx);

/// { p^j * lift(u_i) : 0 <= j < m }, ordered by j then i.
std::vector<PadicNumber> field_power_coset_reps(std::int64_t m, const Context& ctx);

/// +1 if u is a square in F_q^x, else -1; throws ZeroInput for u = 0.
int legendre(const ResidueElement& u);

/// Parses products like "eps*pi", "-3", "1/2", "pi^2", "eps*pi^-1".
PadicNumber parse_scalar(const Context& ctx, std::string_view text);

}  // namespace nilorb
