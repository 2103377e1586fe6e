#include <catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include "nilorb/error.hpp"
#include "nilorb/quadforms.hpp"
#include "oracles.hpp"

using namespace nilorb;

namespace {

PadicNumber num(const Context& c, long n) { return PadicNumber::from_integer(c, n); }

// Integer representatives 1, eps, p, eps*p of the square classes (k = 1).
std::vector<long> class_integers(const Context& c) {
  const long eps = c->nonresidue();
  return {1, eps, c->p(), eps * c->p()};
}

RationalMatrix to_rational(const Matrix<PadicNumber>& m) {
  RationalMatrix out = rational_matrix(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = *m(i, j).to_rational();
  return out;
}

}  // namespace

TEST_CASE("square classes") {
  auto c = FieldContext::make(7);
  CHECK(square_class(num(c, 1)) == SquareClass::One);
  CHECK(square_class(num(c, 3)) == SquareClass::Eps);
  CHECK(square_class(num(c, 7 * 4)) == SquareClass::Pi);
  CHECK(square_class(num(c, 49 * 5)) == SquareClass::Eps);
  CHECK_THROWS_AS(square_class(PadicNumber(c)), Error);
  // -1 is a non-square mod 7, a square mod 5.
  CHECK(alpha(c) == num(c, 1));
  auto c5 = FieldContext::make(5);
  CHECK(alpha(c5) == PadicNumber::epsilon(c5));
}

TEST_CASE("Hilbert symbol examples") {
  for (long p : {3, 5, 7}) {
    auto c = FieldContext::make(p);
    const auto eps = PadicNumber::epsilon(c), pi = PadicNumber::uniformizer(c);
    for (long b : class_integers(c)) CHECK(hilbert_symbol(num(c, 1), num(c, b)) == 1);
    CHECK(hilbert_symbol(eps, pi) == -1);
  }
  auto c5 = FieldContext::make(5);
  CHECK(hilbert_symbol(PadicNumber::uniformizer(c5), PadicNumber::uniformizer(c5)) == 1);
  CHECK_THROWS_AS(hilbert_symbol(PadicNumber(c5), num(c5, 1)), Error);
}

TEST_CASE("Hilbert symbol laws and conic oracle") {
  for (long p : {3, 5, 7}) {
    auto c = FieldContext::make(p);
    const auto ints = class_integers(c);
    for (long a : ints)
      for (long b : ints) {
        const auto A = num(c, a), B = num(c, b);
        CHECK(hilbert_symbol(A, B) == oracle::hilbert_by_conic(a, b, p));
        CHECK(hilbert_symbol(A, B) == hilbert_symbol(B, A));
        CHECK(hilbert_symbol(A, -A) == 1);
        for (long d : ints) CHECK(hilbert_symbol(A, B * num(c, d)) == hilbert_symbol(A, B) * hilbert_symbol(A, num(c, d)));
      }
  }
}

TEST_CASE("discriminant and Hasse examples") {
  auto c = FieldContext::make(7);
  const auto eps = PadicNumber::epsilon(c), pi = PadicNumber::uniformizer(c), a = alpha(c);
  CHECK(discriminant(DiagonalForm({num(c, 1), a})) == square_class(a));
  CHECK(discriminant(DiagonalForm({pi})) == SquareClass::Pi);
  CHECK(discriminant(DiagonalForm({pi, pi})) == SquareClass::One);
  CHECK(hasse(DiagonalForm({pi, a * pi})) == -1);
  CHECK(hasse(DiagonalForm({eps * pi})) == 1);
  CHECK(hasse(DiagonalForm({num(c, 1), -eps, -pi, eps * pi})) == -1);
  CHECK_THROWS_AS(DiagonalForm({num(c, 1), PadicNumber(c)}), Error);
}

TEST_CASE("Witt decomposition examples") {
  auto c = FieldContext::make(5);
  const auto eps = PadicNumber::epsilon(c), pi = PadicNumber::uniformizer(c);
  const auto hyp = witt_decompose(DiagonalForm({num(c, 1), num(c, -1)}));
  CHECK(hyp.witt == 1);
  CHECK(hyp.aniso == AnisoTag::Zero);
  const auto four = witt_decompose(DiagonalForm({num(c, 1), -eps, -pi, eps * pi}));
  CHECK(four.witt == 0);
  CHECK(four.aniso == AnisoTag::One_MinusEps_MinusPi_EpsPi);
  const auto split = witt_decompose(DiagonalForm({num(c, 1), num(c, 1), num(c, -1), num(c, -1)}));
  CHECK(split.witt == 2);
  CHECK(split.aniso == AnisoTag::Zero);
  CHECK(oracle::witt_index({num(c, 1), num(c, 1), num(c, -1), num(c, -1)}) == 2);
}

TEST_CASE("anisotropic table") {
  for (long p : {3, 5, 7, 13}) {
    auto c = FieldContext::make(p);
    const auto eps = PadicNumber::epsilon(c), pi = PadicNumber::uniformizer(c), a = alpha(c);
    const long eps_i = c->nonresidue();
    const long alpha_i = p % 4 == 1 ? eps_i : 1;
    const auto hilbert = [&](long x, long y) { return oracle::hilbert_by_conic(x, y, p); };

    // Expected (disc, Hasse) read off the table; its Hilbert-symbol entries go through the conic oracle.
    struct Row {
      AnisoTag tag;
      PadicNumber disc;
      int hasse;
    };
    const std::vector<Row> rows{
        {AnisoTag::One, num(c, 1), 1},
        {AnisoTag::Eps, eps, 1},
        {AnisoTag::Pi, pi, 1},
        {AnisoTag::EpsPi, eps * pi, 1},
        {AnisoTag::One_Alpha, a, 1},
        {AnisoTag::Pi_AlphaPi, a, -1},
        {AnisoTag::One_Pi, pi, hilbert(1, p)},
        {AnisoTag::One_EpsPi, eps * pi, hilbert(1, eps_i * p)},
        {AnisoTag::Eps_Pi, eps * pi, hilbert(eps_i, p)},
        {AnisoTag::Eps_EpsPi, eps * eps * pi, hilbert(eps_i, eps_i * p)},
        {AnisoTag::Alpha_Pi_AlphaPi, num(c, 1), -1},
        {AnisoTag::AlphaEps_Pi_AlphaPi, eps, -1},
        {AnisoTag::One_Alpha_Pi, a * pi, hilbert(alpha_i, p)},
        {AnisoTag::One_Alpha_EpsPi, a * eps * pi, hilbert(alpha_i, p)},
        {AnisoTag::One_MinusEps_MinusPi_EpsPi, num(c, 1), -1},
    };
    std::map<int, std::set<std::pair<SquareClass, int>>> seen;
    for (const auto& row : rows) {
      const auto cls = make_class(0, row.tag, c);
      INFO("p = " << p << ", tag " << aniso_name(row.tag));
      CHECK(cls.disc == square_class(row.disc));
      CHECK(cls.hasse == row.hasse);
      CHECK(oracle::witt_index(aniso_entries(row.tag, c)) == 0);
      CHECK(seen[cls.dim].insert({cls.disc, cls.hasse}).second);
    }
  }
}

TEST_CASE("class enumeration counts") {
  for (long p : {3, 5, 7, 13}) {
    auto c = FieldContext::make(p);
    CHECK(enumerate_classes(0, c).size() == 1);
    CHECK(enumerate_classes(1, c).size() == 4);
    CHECK(enumerate_classes(2, c).size() == 7);
    CHECK(enumerate_classes(3, c).size() == 8);
    CHECK(enumerate_classes(4, c).size() == 8);
    CHECK(enumerate_classes(5, c).size() == 8);
    CHECK(enumerate_classes(6, c).size() == 8);
  }
}

TEST_CASE("minimal representatives round-trip") {
  for (long p : {3, 5, 7}) {
    auto c = FieldContext::make(p);
    for (int d = 0; d <= 6; ++d)
      for (const auto& cls : enumerate_classes(d, c)) {
        INFO("p = " << p << ", class " << cls.str());
        const auto rep = minimal_representative(cls, c);
        CHECK(rep.rows() == static_cast<std::size_t>(d));
        if (d > 0) CHECK(classify_gram(to_rational(rep), c) == cls);
        CHECK(witt_decompose(diagonal_representative(cls, c)) == cls);
        CHECK(oracle::witt_index(diagonal_representative(cls, c).entries()) == cls.witt);
      }
  }
  auto c = FieldContext::make(5);
  const auto q0 = minimal_representative(make_class(1, AnisoTag::Zero, c), c);
  CHECK(q0(0, 1) == num(c, 1));
  CHECK(q0(0, 0).is_zero());
  const auto pi_class = enumerate_classes(1, c)[2];
  CHECK(pi_class.disc == SquareClass::Pi);
  CHECK(minimal_representative(pi_class, c)(0, 0) == PadicNumber::uniformizer(c));
}

TEST_CASE("Gram equivalence under unimodular change of basis") {
  std::mt19937 rng(7);
  auto c = FieldContext::make(7);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 5);
    const auto classes = enumerate_classes(d, c);
    const auto cls = classes[rng() % classes.size()];
    const RationalMatrix g = to_rational(minimal_representative(cls, c));
    RationalMatrix u = rational_matrix(d, d);
    for (int i = 0; i < d; ++i) u(i, i) = 1;
    for (int step = 0; step < 6 && d > 1; ++step) {
      const int i = static_cast<int>(rng() % d), j = static_cast<int>(rng() % d);
      if (i == j) continue;
      const long f = static_cast<long>(rng() % 7) - 3;
      for (int r = 0; r < d; ++r) u(r, i) += f * u(r, j);
    }
    const RationalMatrix t = multiply(multiply(u.transposed(), g, Rational(0)), u, Rational(0));
    CHECK(classify_gram(t, c) == cls);
  }
}

TEST_CASE("tuples") {
  auto c = FieldContext::make(5);
  CHECK(enumerate_tuples(Partition({4}), c).size() == 4);
  CHECK(enumerate_tuples(Partition({1, 1, 1, 1}), c).size() == 1);
  CHECK(enumerate_tuples(Partition({2, 2}), c).size() == 7);
  CHECK_THROWS_AS(enumerate_tuples(Partition({3, 1}), c), Error);
  const auto t = enumerate_tuples(Partition({4, 2}), c);
  CHECK(t.size() == 16);
  for (const auto& tuple : t) CHECK_NOTHROW(validate_tuple(Partition({4, 2}), tuple));
  CHECK_THROWS_AS(validate_tuple(Partition({4}), QTuple{}), Error);
}
