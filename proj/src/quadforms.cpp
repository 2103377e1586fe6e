#include "nilorb/quadforms.hpp"

#include <array>

#include "nilorb/error.hpp"

namespace nilorb {

namespace {

struct TagInfo {
  AnisoTag tag;
  const char* name;
  int dim;
};

// Representative entries are spelled with the symbols 1, eps, pi, alpha and a sign.
constexpr std::array<TagInfo, 16> kTags{{
    {AnisoTag::Zero, "zero", 0},
    {AnisoTag::One, "1", 1},
    {AnisoTag::Eps, "eps", 1},
    {AnisoTag::Pi, "pi", 1},
    {AnisoTag::EpsPi, "eps*pi", 1},
    {AnisoTag::One_Alpha, "1,alpha", 2},
    {AnisoTag::Pi_AlphaPi, "pi,alpha*pi", 2},
    {AnisoTag::One_Pi, "1,pi", 2},
    {AnisoTag::One_EpsPi, "1,eps*pi", 2},
    {AnisoTag::Eps_Pi, "eps,pi", 2},
    {AnisoTag::Eps_EpsPi, "eps,eps*pi", 2},
    {AnisoTag::Alpha_Pi_AlphaPi, "alpha,pi,alpha*pi", 3},
    {AnisoTag::AlphaEps_Pi_AlphaPi, "alpha*eps,pi,alpha*pi", 3},
    {AnisoTag::One_Alpha_Pi, "1,alpha,pi", 3},
    {AnisoTag::One_Alpha_EpsPi, "1,alpha,eps*pi", 3},
    {AnisoTag::One_MinusEps_MinusPi_EpsPi, "1,-eps,-pi,eps*pi", 4},
}};

const TagInfo& info(AnisoTag tag) { return kTags[static_cast<std::size_t>(tag)]; }

PadicNumber symbol_product(const std::string& word, const Context& ctx) {
  PadicNumber out = PadicNumber::from_integer(ctx, 1);
  std::string rest = word;
  if (!rest.empty() && rest[0] == '-') {
    out = -out;
    rest.erase(0, 1);
  }
  std::size_t start = 0;
  while (start <= rest.size()) {
    const std::size_t star = rest.find('*', start);
    const std::string sym = rest.substr(start, star == std::string::npos ? std::string::npos : star - start);
    if (sym == "eps")
      out = out * PadicNumber::epsilon(ctx);
    else if (sym == "pi")
      out = out * PadicNumber::uniformizer(ctx);
    else if (sym == "alpha")
      out = out * alpha(ctx);
    if (star == std::string::npos) break;
    start = star + 1;
  }
  return out;
}

}  // namespace

const char* square_class_name(SquareClass c) noexcept {
  switch (c) {
    case SquareClass::One: return "1";
    case SquareClass::Eps: return "eps";
    case SquareClass::Pi: return "pi";
    case SquareClass::EpsPi: return "eps*pi";
  }
  return "?";
}

std::optional<SquareClass> square_class_from_name(std::string_view name) {
  for (auto c : {SquareClass::One, SquareClass::Eps, SquareClass::Pi, SquareClass::EpsPi})
    if (name == square_class_name(c)) return c;
  return std::nullopt;
}

SquareClass square_class(const PadicNumber& x) {
  if (x.is_zero()) throw Error(Errc::ZeroInput, "0 has no square class");
  const bool odd = (*x.valuation() % 2 + 2) % 2 == 1;
  const bool square_unit = legendre(ac(x)) == 1;
  if (odd) return square_unit ? SquareClass::Pi : SquareClass::EpsPi;
  return square_unit ? SquareClass::One : SquareClass::Eps;
}

PadicNumber square_class_representative(SquareClass c, const Context& ctx) {
  return symbol_product(square_class_name(c), ctx);
}

PadicNumber alpha(const Context& ctx) {
  const auto minus_one = residue(ctx, ctx->neg(1));
  return legendre(minus_one) == 1 ? PadicNumber::epsilon(ctx) : PadicNumber::from_integer(ctx, 1);
}

const std::vector<AnisoTag>& all_aniso_tags() {
  static const std::vector<AnisoTag> tags = [] {
    std::vector<AnisoTag> out;
    for (const auto& t : kTags) out.push_back(t.tag);
    return out;
  }();
  return tags;
}

const char* aniso_name(AnisoTag tag) noexcept { return info(tag).name; }

std::optional<AnisoTag> aniso_from_name(std::string_view name) {
  for (const auto& t : kTags)
    if (name == t.name) return t.tag;
  return std::nullopt;
}

int aniso_dimension(AnisoTag tag) noexcept { return info(tag).dim; }

std::vector<PadicNumber> aniso_entries(AnisoTag tag, const Context& ctx) {
  std::vector<PadicNumber> out;
  if (tag == AnisoTag::Zero) return out;
  const std::string name = info(tag).name;
  std::size_t start = 0;
  while (start <= name.size()) {
    const std::size_t comma = name.find(',', start);
    out.push_back(symbol_product(name.substr(start, comma == std::string::npos ? std::string::npos : comma - start), ctx));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

DiagonalForm::DiagonalForm(std::vector<PadicNumber> entries) : entries_(std::move(entries)) {
  for (const auto& e : entries_)
    if (e.is_zero()) throw Error(Errc::DegenerateForm, "diagonal form has a zero entry");
}

int hilbert_symbol(const PadicNumber& a, const PadicNumber& b) {
  if (a.is_zero() || b.is_zero()) throw Error(Errc::ZeroInput, "Hilbert symbol of 0");
  const std::int64_t va = *a.valuation(), vb = *b.valuation();
  const auto& ctx = a.context();
  const int minus_one = legendre(residue(ctx, ctx->neg(1)));
  int out = 1;
  if ((va * vb) % 2 != 0) out *= minus_one;
  if (vb % 2 != 0) out *= legendre(ac(a));
  if (va % 2 != 0) out *= legendre(ac(b));
  return out;
}

SquareClass discriminant(const DiagonalForm& f) {
  if (f.dim() == 0) return SquareClass::One;
  PadicNumber prod = f.entries().front();
  for (std::size_t i = 1; i < f.dim(); ++i) prod = prod * f.entries()[i];
  return square_class(prod);
}

int hasse(const DiagonalForm& f) {
  int out = 1;
  for (std::size_t i = 0; i < f.dim(); ++i)
    for (std::size_t j = i + 1; j < f.dim(); ++j) out *= hilbert_symbol(f.entries()[i], f.entries()[j]);
  return out;
}

std::string QFormClass::str() const {
  std::string out;
  if (witt > 0) out = "q0^" + std::to_string(witt);
  if (aniso != AnisoTag::Zero) {
    if (!out.empty()) out += " + ";
    out += "diag(" + std::string(aniso_name(aniso)) + ")";
  }
  return out.empty() ? "0" : out;
}

namespace {

std::vector<PadicNumber> diagonal_entries(int witt, AnisoTag tag, const Context& ctx) {
  std::vector<PadicNumber> out;
  for (int i = 0; i < witt; ++i) {
    out.push_back(PadicNumber::from_integer(ctx, 1));
    out.push_back(PadicNumber::from_integer(ctx, -1));
  }
  for (auto& e : aniso_entries(tag, ctx)) out.push_back(std::move(e));
  return out;
}

}  // namespace

QFormClass make_class(int witt, AnisoTag tag, const Context& ctx) {
  if (witt < 0) throw Error(Errc::InvalidArgument, "negative Witt index");
  const DiagonalForm f(diagonal_entries(witt, tag, ctx));
  QFormClass c;
  c.dim = static_cast<int>(f.dim());
  c.disc = discriminant(f);
  c.hasse = hasse(f);
  c.witt = witt;
  c.aniso = tag;
  return c;
}

QFormClass witt_decompose(const DiagonalForm& f) {
  if (f.dim() == 0) return QFormClass{};
  const Context& ctx = f.entries().front().context();
  const int dim = static_cast<int>(f.dim());
  const SquareClass disc = discriminant(f);
  const int h = hasse(f);
  for (AnisoTag tag : all_aniso_tags()) {
    const int rest = dim - aniso_dimension(tag);
    if (rest < 0 || rest % 2 != 0) continue;
    const QFormClass c = make_class(rest / 2, tag, ctx);
    if (c.disc == disc && c.hasse == h) return c;
  }
  throw Error(Errc::NoMatch, "no quadratic form class with dim " + std::to_string(dim) + ", disc " +
                                 square_class_name(disc) + ", Hasse " + std::to_string(h));
}

QFormClass classify_gram(const RationalMatrix& gram, const Context& ctx) {
  if (gram.rows() != gram.cols()) throw Error(Errc::InvalidArgument, "Gram matrix must be square");
  const std::size_t n = gram.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (gram(i, j) != gram(j, i)) throw Error(Errc::InvalidArgument, "Gram matrix must be symmetric");

  RationalMatrix g = gram;
  std::vector<PadicNumber> diag;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pivot = n;
    for (std::size_t i = 0; i < n && pivot == n; ++i)
      if (!done[i] && g(i, i) != 0) pivot = i;
    if (pivot == n) {
      // All remaining diagonal entries vanish: replace e_i by e_i + e_j for a nonzero g(i, j).
      for (std::size_t i = 0; i < n && pivot == n; ++i)
        for (std::size_t j = 0; j < n && pivot == n; ++j)
          if (!done[i] && !done[j] && i != j && g(i, j) != 0) {
            for (std::size_t c = 0; c < n; ++c) g(i, c) += g(j, c);
            for (std::size_t r = 0; r < n; ++r) g(r, i) += g(r, j);
            pivot = i;
          }
      if (pivot == n) throw Error(Errc::DegenerateForm, "Gram matrix is singular");
    }
    const Rational a = g(pivot, pivot);
    for (std::size_t r = 0; r < n; ++r) {
      if (done[r] || r == pivot || g(r, pivot) == 0) continue;
      const Rational factor = g(r, pivot) / a;
      for (std::size_t c = 0; c < n; ++c) g(r, c) -= factor * g(pivot, c);
      for (std::size_t c = 0; c < n; ++c) g(c, r) = g(r, c);
    }
    done[pivot] = true;
    diag.push_back(PadicNumber::from_rational(ctx, a));
  }
  return witt_decompose(DiagonalForm(std::move(diag)));
}

std::vector<QFormClass> enumerate_classes(int dim, const Context& ctx) {
  if (dim < 0) throw Error(Errc::InvalidArgument, "negative dimension");
  std::vector<QFormClass> out;
  for (AnisoTag tag : all_aniso_tags()) {
    const int rest = dim - aniso_dimension(tag);
    if (rest >= 0 && rest % 2 == 0) out.push_back(make_class(rest / 2, tag, ctx));
  }
  return out;
}

Matrix<PadicNumber> minimal_representative(const QFormClass& c, const Context& ctx) {
  const PadicNumber zero(ctx);
  Matrix<PadicNumber> m(c.dim, c.dim, zero);
  for (int i = 0; i < c.witt; ++i) {
    m(2 * i, 2 * i + 1) = PadicNumber::from_integer(ctx, 1);
    m(2 * i + 1, 2 * i) = PadicNumber::from_integer(ctx, 1);
  }
  const auto entries = aniso_entries(c.aniso, ctx);
  for (std::size_t i = 0; i < entries.size(); ++i) m(2 * c.witt + i, 2 * c.witt + i) = entries[i];
  return m;
}

DiagonalForm diagonal_representative(const QFormClass& c, const Context& ctx) {
  return DiagonalForm(diagonal_entries(c.witt, c.aniso, ctx));
}

std::vector<QTuple> enumerate_tuples(const Partition& lambda, const Context& ctx) {
  if (!is_symplectic_admissible(lambda))
    throw Error(Errc::NotAdmissible, lambda.str() + " has an odd part of odd multiplicity");
  std::vector<QTuple> out{QTuple{}};
  for (int i = 2; i <= lambda.n(); i += 2) {
    const int m = multiplicity(lambda, i);
    if (m == 0) continue;
    std::vector<QTuple> next;
    for (const auto& partial : out)
      for (const auto& c : enumerate_classes(m, ctx)) {
        QTuple t = partial;
        t[i] = c;
        next.push_back(std::move(t));
      }
    out = std::move(next);
  }
  return out;
}

void validate_tuple(const Partition& lambda, const QTuple& tuple) {
  for (const auto& [i, c] : tuple) {
    if (i <= 0 || i % 2 != 0) throw Error(Errc::InvalidTuple, "tuple index " + std::to_string(i) + " is not even");
    if (c.dim != multiplicity(lambda, i))
      throw Error(Errc::InvalidTuple, "class at index " + std::to_string(i) + " has dimension " + std::to_string(c.dim) +
                                          ", expected " + std::to_string(multiplicity(lambda, i)));
    if (c.dim != 2 * c.witt + aniso_dimension(c.aniso))
      throw Error(Errc::InvalidTuple, "class at index " + std::to_string(i) + " is inconsistent");
  }
  for (int i = 2; i <= lambda.n(); i += 2)
    if (multiplicity(lambda, i) > 0 && !tuple.count(i))
      throw Error(Errc::InvalidTuple, "missing class for part size " + std::to_string(i));
}

}  // namespace nilorb
