#include "nilorb/padic.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "nilorb/error.hpp"

namespace nilorb {

namespace {

constexpr std::int64_t kMaxResidueFieldSize = std::int64_t{1} << 24;

using Poly = std::vector<std::int64_t>;

// Polynomial product mod (f, p), f monic of degree k; inputs have degree < k.
Poly mulmod(const Poly& a, const Poly& b, const Poly& f, std::int64_t p) {
  const std::size_t k = f.size() - 1;
  Poly r(2 * k - 1, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < k; ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  for (std::size_t deg = r.size() - 1; deg >= k; --deg) {
    const std::int64_t c = r[deg];
    if (c != 0)
      for (std::size_t i = 0; i < k; ++i) r[deg - k + i] = ((r[deg - k + i] - c * f[i]) % p + p) % p;
    r[deg] = 0;
  }
  r.resize(k);
  return r;
}

// Remainder of a modulo monic b over F_p; both lowest coefficient first.
Poly polyrem(Poly a, const Poly& b, std::int64_t p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::int64_t c = a.back() % p;
    if (c != 0) {
      const std::size_t shift = a.size() - 1 - db;
      for (std::size_t i = 0; i <= db; ++i) a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
    }
    a.pop_back();
  }
  return a;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

mpz_class mpz_pow(std::int64_t p, std::int64_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
  return r;
}

std::int64_t vp(const mpz_class& n, std::int64_t p) {
  mpz_class t = n;
  std::int64_t v = 0;
  while (t != 0 && mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(p));
    ++v;
  }
  return v;
}

mpz_class canonical(const mpz_class& r, const mpz_class& mod) {
  mpz_class out;
  mpz_mod(out.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
  return out;
}

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible_mod_p(const std::vector<std::int64_t>& monic, std::int64_t p) {
  const int k = static_cast<int>(monic.size()) - 1;
  if (k < 1 || monic.back() % p != 1) return false;
  if (k == 1) return true;
  // Trial division by every monic polynomial of degree 1..k/2.
  for (int d = 1; d <= k / 2; ++d) {
    std::int64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (std::int64_t idx = 0; idx < count; ++idx) {
      Poly g(d + 1, 0);
      std::int64_t t = idx;
      for (int i = 0; i < d; ++i) {
        g[i] = t % p;
        t /= p;
      }
      g[d] = 1;
      const Poly r = polyrem(monic, g, p);
      if (std::all_of(r.begin(), r.end(), [](std::int64_t c) { return c == 0; })) return false;
    }
  }
  return true;
}

std::vector<std::int64_t> smallest_irreducible(std::int64_t p, int k) {
  if (k == 1) return {0, 1};
  std::int64_t count = 1;
  for (int i = 0; i < k; ++i) count *= p;
  for (std::int64_t idx = 0; idx < count; ++idx) {
    Poly f(k + 1, 0);
    std::int64_t t = idx;
    for (int i = 0; i < k; ++i) {
      f[i] = t % p;
      t /= p;
    }
    f[k] = 1;
    if (is_irreducible_mod_p(f, p)) return f;
  }
  throw Error(Errc::InvalidArgument, "no irreducible polynomial found");
}

Context FieldContext::make(std::int64_t p, int k, int precision, std::vector<std::int64_t> modulus) {
  if (!is_prime(p)) throw Error(Errc::InvalidArgument, "p = " + std::to_string(p) + " is not prime");
  if (p == 2) throw Error(Errc::InvalidArgument, "residue characteristic 2 is not supported");
  if (k < 1) throw Error(Errc::InvalidArgument, "k must be >= 1");
  if (precision < 1) throw Error(Errc::InvalidArgument, "precision must be >= 1");
  std::int64_t q = 1;
  for (int i = 0; i < k; ++i) {
    q *= p;
    if (q > kMaxResidueFieldSize) throw Error(Errc::InvalidArgument, "residue field too large");
  }

  std::shared_ptr<FieldContext> ctx(new FieldContext());
  ctx->p_ = p;
  ctx->k_ = k;
  ctx->precision_ = precision;
  ctx->q_ = q;
  if (k == 1) {
    ctx->modulus_ = {0, 1};
  } else if (modulus.empty()) {
    ctx->modulus_ = smallest_irreducible(p, k);
  } else {
    if (static_cast<int>(modulus.size()) != k + 1)
      throw Error(Errc::InvalidArgument, "modulus must have degree k");
    for (auto& c : modulus) c = ((c % p) + p) % p;
    if (!is_irreducible_mod_p(modulus, p))
      throw Error(Errc::InvalidArgument, "modulus is not irreducible over F_p");
    ctx->modulus_ = std::move(modulus);
  }
  ctx->unit_modulus_ = mpz_pow(p, precision);

  // Discrete log tables from a generator of F_q^x.
  const auto slow_mul = [&](std::uint32_t a, std::uint32_t b) {
    return ctx->code(mulmod(ctx->coefficients(a), ctx->coefficients(b), ctx->modulus_, p));
  };
  const auto slow_pow = [&](std::uint32_t a, std::int64_t e) {
    std::uint32_t r = 1;
    while (e > 0) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  };
  const std::int64_t order = q - 1;
  const auto factors = prime_factors(order);
  std::uint32_t gen = 0;
  for (std::uint32_t g = 1; g < static_cast<std::uint32_t>(q); ++g) {
    bool ok = true;
    for (auto r : factors)
      if (slow_pow(g, order / r) == 1) {
        ok = false;
        break;
      }
    if (ok) {
      gen = g;
      break;
    }
  }
  ctx->exp_.resize(static_cast<std::size_t>(order));
  ctx->log_.assign(static_cast<std::size_t>(q), 0);
  std::uint32_t cur = 1;
  for (std::int64_t i = 0; i < order; ++i) {
    ctx->exp_[i] = cur;
    ctx->log_[cur] = static_cast<std::uint32_t>(i);
    cur = slow_mul(cur, gen);
  }
  for (std::uint32_t c = 1; c < static_cast<std::uint32_t>(q); ++c)
    if (ctx->log_[c] % 2 == 1) {
      ctx->nonresidue_ = c;
      break;
    }
  return ctx;
}

std::vector<std::int64_t> FieldContext::coefficients(std::uint32_t code) const {
  std::vector<std::int64_t> out(k_, 0);
  std::int64_t t = code;
  for (int i = 0; i < k_; ++i) {
    out[i] = t % p_;
    t /= p_;
  }
  return out;
}

std::uint32_t FieldContext::code(const std::vector<std::int64_t>& coefficients) const {
  std::int64_t c = 0;
  for (int i = k_ - 1; i >= 0; --i) {
    const std::int64_t v = i < static_cast<int>(coefficients.size()) ? coefficients[i] : 0;
    c = c * p_ + ((v % p_) + p_) % p_;
  }
  return static_cast<std::uint32_t>(c);
}

std::uint32_t FieldContext::add(std::uint32_t a, std::uint32_t b) const {
  if (k_ == 1) return static_cast<std::uint32_t>((a + static_cast<std::int64_t>(b)) % p_);
  std::int64_t out = 0, scale = 1;
  std::int64_t x = a, y = b;
  for (int i = 0; i < k_; ++i) {
    out += ((x % p_ + y % p_) % p_) * scale;
    x /= p_;
    y /= p_;
    scale *= p_;
  }
  return static_cast<std::uint32_t>(out);
}

std::uint32_t FieldContext::neg(std::uint32_t a) const {
  if (k_ == 1) return static_cast<std::uint32_t>((p_ - a) % p_);
  std::int64_t out = 0, scale = 1;
  std::int64_t x = a;
  for (int i = 0; i < k_; ++i) {
    out += ((p_ - x % p_) % p_) * scale;
    x /= p_;
    scale *= p_;
  }
  return static_cast<std::uint32_t>(out);
}

std::uint32_t FieldContext::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t FieldContext::mul(std::uint32_t a, std::uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[(static_cast<std::uint64_t>(log_[a]) + log_[b]) % exp_.size()];
}

std::uint32_t FieldContext::inv(std::uint32_t a) const {
  if (a == 0) throw Error(Errc::InversionOfZero, "residue 0 has no inverse");
  const std::uint64_t n = exp_.size();
  return exp_[(n - log_[a]) % n];
}

std::uint32_t FieldContext::pow(std::uint32_t a, std::int64_t e) const {
  if (a == 0) {
    if (e == 0) return 1;
    if (e < 0) throw Error(Errc::InversionOfZero, "negative power of residue 0");
    return 0;
  }
  const std::int64_t n = static_cast<std::int64_t>(exp_.size());
  std::int64_t idx = static_cast<std::int64_t>((static_cast<__int128>(log_[a]) * e) % n);
  if (idx < 0) idx += n;
  return exp_[static_cast<std::size_t>(idx)];
}

std::uint32_t FieldContext::from_integer(std::int64_t n) const {
  return static_cast<std::uint32_t>(((n % p_) + p_) % p_);
}

bool FieldContext::is_square(std::uint32_t a) const { return a == 0 || log_[a] % 2 == 0; }

std::string FieldContext::residue_string(std::uint32_t code) const {
  if (k_ == 1) {
    const std::int64_t c = code;
    return std::to_string(c > p_ / 2 ? c - p_ : c);
  }
  if (code == 0) return "0";
  const auto coeffs = coefficients(code);
  std::string out;
  for (int i = 0; i < k_; ++i) {
    if (coeffs[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0 || coeffs[i] != 1) out += std::to_string(coeffs[i]);
    if (i >= 1) out += "t";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

ResidueElement residue(const Context& ctx, std::uint32_t code) { return ResidueElement{code, ctx}; }

// ---------------------------------------------------------------------------
// PadicNumber

namespace {

struct Window {
  const mpz_class& mod;
  mpz_class half;
  explicit Window(const FieldContext& ctx) : mod(ctx.unit_modulus()), half((ctx.unit_modulus() - 1) / 2) {}
  mpz_class balanced(const mpz_class& c) const { return c > half ? mpz_class(c - mod) : c; }
  bool fits(const mpz_class& v) const { return abs(v) <= half; }
};

using Coeffs = std::vector<mpz_class>;

Coeffs poly_mul_reduce(const Coeffs& a, const Coeffs& b, const std::vector<std::int64_t>& f) {
  const std::size_t k = f.size() - 1;
  Coeffs r(2 * k - 1, mpz_class(0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) r[i + j] += a[i] * b[j];
  for (std::size_t deg = r.size() - 1; deg >= k; --deg) {
    const mpz_class c = r[deg];
    if (c != 0)
      for (std::size_t i = 0; i < k; ++i) r[deg - k + i] -= c * f[i];
    r[deg] = 0;
  }
  r.resize(k);
  return r;
}

}  // namespace

PadicNumber::PadicNumber(Context ctx) : ctx_(std::move(ctx)) {}

PadicNumber PadicNumber::from_unit(const Context& ctx, std::int64_t valuation, std::vector<mpz_class> unit,
                                   bool exact) {
  const std::int64_t p = ctx->p();
  unit.resize(ctx->k(), mpz_class(0));
  bool is_unit = false;
  for (const auto& c : unit)
    if (!mpz_divisible_ui_p(c.get_mpz_t(), static_cast<unsigned long>(p))) is_unit = true;
  if (!is_unit) throw Error(Errc::InvalidArgument, "unit part is divisible by p");
  Window w(*ctx);
  PadicNumber out(ctx);
  out.valuation_ = valuation;
  out.exact_ = exact;
  for (auto& c : unit) {
    if (exact && !w.fits(c)) out.exact_ = false;
    c = canonical(c, w.mod);
  }
  out.unit_ = std::move(unit);
  return out;
}

PadicNumber PadicNumber::from_integer(const Context& ctx, const mpz_class& n) {
  if (n == 0) return PadicNumber(ctx);
  const std::int64_t v = vp(n, ctx->p());
  mpz_class u = n;
  for (std::int64_t i = 0; i < v; ++i) u /= ctx->p();
  return from_unit(ctx, v, {u}, true);
}

PadicNumber PadicNumber::from_rational(const Context& ctx, const mpq_class& x) {
  if (x == 0) return PadicNumber(ctx);
  mpz_class num = x.get_num(), den = x.get_den();
  const std::int64_t a = vp(num, ctx->p()), b = vp(den, ctx->p());
  for (std::int64_t i = 0; i < a; ++i) num /= ctx->p();
  for (std::int64_t i = 0; i < b; ++i) den /= ctx->p();
  if (abs(den) == 1) return from_unit(ctx, a - b, {num * den}, true);
  mpz_class inv;
  const mpz_class& mod = ctx->unit_modulus();
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
  return from_unit(ctx, a - b, {canonical(num * inv, mod)}, false);
}

PadicNumber PadicNumber::uniformizer(const Context& ctx) { return from_integer(ctx, mpz_class(ctx->p())); }

PadicNumber PadicNumber::epsilon(const Context& ctx) { return lift(residue(ctx, ctx->nonresidue())); }

PadicNumber PadicNumber::lift(const ResidueElement& r) {
  if (r.is_zero()) return PadicNumber(r.ctx);
  std::vector<mpz_class> unit;
  for (auto c : r.ctx->coefficients(r.code)) unit.emplace_back(static_cast<long>(c));
  return from_unit(r.ctx, 0, std::move(unit), true);
}

std::vector<std::vector<std::int64_t>> PadicNumber::digits() const {
  std::vector<std::vector<std::int64_t>> out;
  if (is_zero()) return out;
  const int n = ctx_->precision();
  std::vector<mpz_class> rest = unit_;
  out.assign(n, std::vector<std::int64_t>(ctx_->k(), 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < ctx_->k(); ++j) {
      out[i][j] = mpz_fdiv_q_ui(rest[j].get_mpz_t(), rest[j].get_mpz_t(), static_cast<unsigned long>(ctx_->p()));
    }
  return out;
}

PadicNumber PadicNumber::operator+(const PadicNumber& other) const {
  if (is_zero()) return other;
  if (other.is_zero()) return *this;
  const PadicNumber* a = this;
  const PadicNumber* b = &other;
  if (*a->valuation_ > *b->valuation_) std::swap(a, b);
  const std::int64_t p = ctx_->p();
  const int n = ctx_->precision();
  const std::int64_t d = *b->valuation_ - *a->valuation_;
  Window w(*ctx_);

  bool exact = a->exact_ && b->exact_ && d <= 2 * static_cast<std::int64_t>(n) + 2;
  Coeffs r(ctx_->k());
  if (exact) {
    const mpz_class pd = mpz_pow(p, d);
    for (int i = 0; i < ctx_->k(); ++i) r[i] = w.balanced(a->unit_[i]) + pd * w.balanced(b->unit_[i]);
  } else if (d < n) {
    const mpz_class pd = mpz_pow(p, d);
    for (int i = 0; i < ctx_->k(); ++i) r[i] = canonical(a->unit_[i] + pd * b->unit_[i], w.mod);
  } else {
    r = a->unit_;
  }

  std::int64_t t = -1;
  for (const auto& c : r) {
    if (c == 0) continue;
    const std::int64_t v = vp(c, p);
    if (t < 0 || v < t) t = v;
  }
  if (t < 0) {
    if (exact) return PadicNumber(ctx_);
    throw Error(Errc::PrecisionLoss, "additive cancellation consumed all stored digits");
  }
  if (t > 0) {
    const mpz_class pt = mpz_pow(p, t);
    for (auto& c : r) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pt.get_mpz_t());
  }
  return from_unit(ctx_, *a->valuation_ + t, std::move(r), exact);
}

PadicNumber PadicNumber::operator-() const {
  if (is_zero()) return *this;
  Window w(*ctx_);
  Coeffs r(unit_.size());
  for (std::size_t i = 0; i < unit_.size(); ++i) r[i] = exact_ ? mpz_class(-w.balanced(unit_[i])) : mpz_class(-unit_[i]);
  return from_unit(ctx_, *valuation_, std::move(r), exact_);
}

PadicNumber PadicNumber::operator-(const PadicNumber& other) const { return *this + (-other); }

PadicNumber PadicNumber::operator*(const PadicNumber& other) const {
  if (is_zero() || other.is_zero()) return PadicNumber(ctx_);
  Window w(*ctx_);
  const bool exact = exact_ && other.exact_;
  Coeffs a(unit_.size()), b(other.unit_.size());
  for (std::size_t i = 0; i < unit_.size(); ++i) {
    a[i] = exact ? w.balanced(unit_[i]) : unit_[i];
    b[i] = exact ? w.balanced(other.unit_[i]) : other.unit_[i];
  }
  Coeffs r = poly_mul_reduce(a, b, ctx_->modulus());
  return from_unit(ctx_, *valuation_ + *other.valuation_, std::move(r), exact);
}

PadicNumber PadicNumber::inverse() const {
  if (is_zero()) throw Error(Errc::InversionOfZero, "0 has no inverse");
  const Context& c = ctx_;
  const mpz_class& mod = c->unit_modulus();
  Window w(*c);
  Coeffs y;
  if (c->k() == 1) {
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), unit_[0].get_mpz_t(), mod.get_mpz_t());
    y = {inv};
  } else {
    std::vector<std::int64_t> res(c->k());
    for (int i = 0; i < c->k(); ++i) res[i] = mpz_fdiv_ui(unit_[i].get_mpz_t(), static_cast<unsigned long>(c->p()));
    for (auto v : c->coefficients(c->inv(c->code(res)))) y.emplace_back(static_cast<long>(v));
    // Newton iteration y <- y (2 - u y), doubling the number of correct digits.
    for (int prec = 1; prec < c->precision();) {
      prec = std::min(2 * prec, c->precision());
      const mpz_class m = mpz_pow(c->p(), prec);
      Coeffs uy = poly_mul_reduce(unit_, y, c->modulus());
      for (auto& v : uy) v = -v;
      uy[0] += 2;
      y = poly_mul_reduce(y, uy, c->modulus());
      for (auto& v : y) v = canonical(v, m);
    }
  }
  bool exact = false;
  if (exact_) {
    const mpz_class u0 = w.balanced(unit_[0]);
    bool constant = true;
    for (std::size_t i = 1; i < unit_.size(); ++i)
      if (unit_[i] != 0) constant = false;
    exact = constant && abs(u0) == 1;
  }
  return from_unit(c, -*valuation_, std::move(y), exact);
}

PadicNumber PadicNumber::operator/(const PadicNumber& other) const { return *this * other.inverse(); }

PadicNumber PadicNumber::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  PadicNumber result = from_integer(ctx_, 1);
  PadicNumber base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

bool operator==(const PadicNumber& a, const PadicNumber& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return a.valuation_ == b.valuation_ && a.unit_ == b.unit_;
}

std::optional<mpq_class> PadicNumber::to_rational() const {
  if (is_zero()) return mpq_class(0);
  if (!exact_) return std::nullopt;
  for (std::size_t i = 1; i < unit_.size(); ++i)
    if (unit_[i] != 0) return std::nullopt;
  Window w(*ctx_);
  mpq_class out(w.balanced(unit_[0]));
  const mpz_class pv = mpz_pow(ctx_->p(), std::abs(*valuation_));
  if (*valuation_ >= 0)
    out *= pv;
  else
    out /= pv;
  out.canonicalize();
  return out;
}

std::string PadicNumber::str() const {
  if (is_zero()) return "0";
  const auto ds = digits();
  const std::string p = std::to_string(ctx_->p());
  std::ostringstream os;
  os << p << "^" << *valuation_ << " * (";
  bool first = true;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    std::string digit;
    if (ctx_->k() == 1) {
      if (ds[i][0] == 0) continue;
      digit = std::to_string(ds[i][0]);
    } else {
      const std::uint32_t code = ctx_->code(ds[i]);
      if (code == 0) continue;
      digit = "(" + ctx_->residue_string(code) + ")";
    }
    if (!first) os << " + ";
    first = false;
    os << digit;
    if (i >= 1) os << "*" << p;
    if (i >= 2) os << "^" << i;
  }
  os << ")";
  return os.str();
}

std::string PadicNumber::display() const {
  if (auto r = to_rational()) return r->get_str();
  return str();
}

std::optional<std::int64_t> ord(const PadicNumber& x) { return x.valuation(); }

ResidueElement ac(const PadicNumber& x) {
  const Context& ctx = x.context();
  if (x.is_zero()) return residue(ctx, 0);
  std::vector<std::int64_t> res(ctx->k());
  for (int i = 0; i < ctx->k(); ++i)
    res[i] = mpz_fdiv_ui(x.unit()[i].get_mpz_t(), static_cast<unsigned long>(ctx->p()));
  return residue(ctx, ctx->code(res));
}

std::vector<ResidueElement> residue_power_coset_reps(std::int64_t m, const Context& ctx) {
  if (m < 1) throw Error(Errc::InvalidArgument, "m must be >= 1");
  const std::int64_t ell = std::gcd(m, ctx->q() - 1);
  // (F_q^x)^m is the subgroup of index ell, i.e. the elements whose log is divisible by ell.
  std::vector<ResidueElement> reps;
  for (std::uint32_t c = 1; c < static_cast<std::uint32_t>(ctx->q()) && static_cast<std::int64_t>(reps.size()) < ell;
       ++c) {
    const bool fresh = std::none_of(reps.begin(), reps.end(), [&](const ResidueElement& r) {
      const std::int64_t diff = static_cast<std::int64_t>(ctx->log(c)) - ctx->log(r.code);
      return diff % ell == 0;
    });
    if (fresh) reps.push_back(residue(ctx, c));
  }
  return reps;
}

std::vector<PadicNumber> field_power_coset_reps(std::int64_t m, const Context& ctx) {
  const auto units = residue_power_coset_reps(m, ctx);
  std::vector<PadicNumber> out;
  const PadicNumber pi = PadicNumber::uniformizer(ctx);
  PadicNumber scale = PadicNumber::from_integer(ctx, 1);
  for (std::int64_t j = 0; j < m; ++j) {
    for (const auto& u : units) out.push_back(scale * PadicNumber::lift(u));
    scale = scale * pi;
  }
  return out;
}

int legendre(const ResidueElement& u) {
  if (u.is_zero()) throw Error(Errc::ZeroInput, "legendre symbol of 0");
  const auto& ctx = *u.ctx;
  return ctx.pow(u.code, (ctx.q() - 1) / 2) == 1 ? 1 : -1;
}

PadicNumber parse_scalar(const Context& ctx, std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw Error(Errc::SyntaxError, "empty scalar");
  bool negative = false;
  while (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    if (s[0] == '-') negative = !negative;
    s.erase(0, 1);
  }
  PadicNumber value = PadicNumber::from_integer(ctx, negative ? -1 : 1);
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t star = s.find('*', start);
    std::string factor = s.substr(start, star == std::string::npos ? std::string::npos : star - start);
    if (factor.empty()) throw Error(Errc::SyntaxError, "malformed scalar '" + std::string(text) + "'");
    long exponent = 1;
    if (const auto caret = factor.find('^'); caret != std::string::npos) {
      try {
        exponent = std::stol(factor.substr(caret + 1));
      } catch (const std::exception&) {
        throw Error(Errc::SyntaxError, "bad exponent in '" + factor + "'");
      }
      factor = factor.substr(0, caret);
    }
    PadicNumber base(ctx);
    if (factor == "eps" || factor == "ε") {
      base = PadicNumber::epsilon(ctx);
    } else if (factor == "pi" || factor == "ϖ" || factor == "varpi") {
      base = PadicNumber::uniformizer(ctx);
    } else {
      mpq_class r;
      if (r.set_str(factor, 10) != 0) throw Error(Errc::SyntaxError, "unknown scalar factor '" + factor + "'");
      r.canonicalize();
      base = PadicNumber::from_rational(ctx, r);
    }
    value = value * base.pow(exponent);
    if (star == std::string::npos) break;
    start = star + 1;
  }
  return value;
}

}  // namespace nilorb
