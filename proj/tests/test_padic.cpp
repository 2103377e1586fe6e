#include <catch_amalgamated.hpp>

#include <numeric>
#include <set>

#include "nilorb/error.hpp"
#include "nilorb/padic.hpp"

using namespace nilorb;

namespace {

PadicNumber num(const Context& c, long n) { return PadicNumber::from_integer(c, n); }

// Brute-force count of the cosets of (F_q^x)^m: |F_q^x| / |image of u -> u^m|.
std::int64_t coset_count_oracle(const Context& c, std::int64_t m) {
  std::set<std::uint32_t> image;
  for (std::uint32_t u = 1; u < c->q(); ++u) {
    std::uint32_t r = 1;
    for (std::int64_t i = 0; i < m; ++i) r = c->mul(r, u);
    image.insert(r);
  }
  return (c->q() - 1) / static_cast<std::int64_t>(image.size());
}

}  // namespace

TEST_CASE("context validation") {
  CHECK_THROWS_AS(FieldContext::make(2), Error);
  CHECK_THROWS_AS(FieldContext::make(9), Error);
  CHECK_THROWS_AS(FieldContext::make(7, 0), Error);
  CHECK_THROWS_AS(FieldContext::make(7, 1, 0), Error);
  try {
    FieldContext::make(2);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidArgument);
  }
  auto c9 = FieldContext::make(3, 2);
  CHECK(c9->q() == 9);
  // t^2 + 1 is the smallest irreducible quadratic over F_3.
  CHECK(c9->modulus() == std::vector<std::int64_t>{1, 0, 1});
}

TEST_CASE("ord and ac") {
  auto c = FieldContext::make(7);
  const auto pi = PadicNumber::uniformizer(c);
  CHECK(ord(pi) == 1);
  CHECK(ord(num(c, 1)) == 0);
  CHECK_FALSE(ord(PadicNumber(c)).has_value());
  CHECK(ac(PadicNumber(c)).code == 0);
  CHECK(ac(pi).code == 1);
  CHECK(ac(num(c, 7 + 49)).code == 1);
  CHECK(ac(num(c, -3 * 49)).code == 4);
}

TEST_CASE("basic arithmetic") {
  auto c = FieldContext::make(5);
  const auto zero = num(c, 1) + num(c, -1);
  CHECK(zero.is_zero());
  const auto pi = PadicNumber::uniformizer(c);
  const auto pi2 = pi * pi;
  CHECK(ord(pi2) == 2);
  CHECK(ac(pi2).code == 1);
  const auto prod = (num(c, 1) + pi) * (num(c, 1) - pi);
  CHECK(prod == num(c, 1 - 25));
  CHECK(ord(prod) == 0);
  CHECK(prod.to_rational() == mpq_class(-24));
  CHECK_THROWS_AS(PadicNumber(c).inverse(), Error);

  const auto third = num(c, 1) / num(c, 3);
  CHECK_FALSE(third.exact());
  CHECK(third * num(c, 3) == num(c, 1));
  // Truncated values that cancel completely cannot be decided.
  CHECK_THROWS_AS(third - third, Error);
  CHECK(PadicNumber::from_rational(c, mpq_class(3, 25)).valuation() == -2);
}

TEST_CASE("string forms") {
  auto c = FieldContext::make(7, 1, 4);
  CHECK(num(c, 10).str() == "7^0 * (3 + 1*7)");
  CHECK(num(c, -1).str() == "7^0 * (6 + 6*7 + 6*7^2 + 6*7^3)");
  CHECK(num(c, 49).display() == "49");
  CHECK(num(c, -1).display() == "-1");
  CHECK(PadicNumber(c).str() == "0");
}

TEST_CASE("coset representatives") {
  auto c7 = FieldContext::make(7);
  auto c5 = FieldContext::make(5);
  CHECK(residue_power_coset_reps(1, c7).size() == 1);
  CHECK(residue_power_coset_reps(3, c7).size() == 3);
  CHECK(residue_power_coset_reps(3, c5).size() == 1);
  CHECK(field_power_coset_reps(3, c7).size() == 9);
  CHECK(field_power_coset_reps(3, c5).size() == 3);
  CHECK(field_power_coset_reps(2, c5).size() == 4);

  for (std::int64_t p : {3, 5, 7, 11, 13}) {
    for (int k = 1; k <= 2; ++k) {
      auto c = FieldContext::make(p, k);
      if (c->q() > 49) continue;
      for (std::int64_t m = 1; m <= 6; ++m) {
        const auto reps = residue_power_coset_reps(m, c);
        CHECK(static_cast<std::int64_t>(reps.size()) == coset_count_oracle(c, m));
        CHECK(static_cast<std::int64_t>(reps.size()) == std::gcd(m, c->q() - 1));
        // Pairwise distinct cosets: u/v is not an m-th power.
        std::set<std::uint32_t> powers;
        for (std::uint32_t z = 1; z < c->q(); ++z) powers.insert(c->pow(z, m));
        for (std::size_t i = 0; i < reps.size(); ++i)
          for (std::size_t j = i + 1; j < reps.size(); ++j)
            CHECK(powers.count(c->mul(reps[i].code, c->inv(reps[j].code))) == 0);
      }
    }
  }
}

TEST_CASE("legendre symbol") {
  auto c7 = FieldContext::make(7);
  auto c5 = FieldContext::make(5);
  CHECK(legendre(residue(c7, 1)) == 1);
  CHECK(legendre(residue(c7, 3)) == -1);
  CHECK(legendre(residue(c5, 4)) == 1);
  CHECK_THROWS_AS(legendre(residue(c7, 0)), Error);
  // Squares mod 7 are {1, 2, 4}.
  for (std::uint32_t u = 1; u < 7; ++u) CHECK((legendre(residue(c7, u)) == 1) == (u == 1 || u == 2 || u == 4));
  // epsilon is the smallest non-square.
  CHECK(c7->nonresidue() == 3);
  CHECK(c5->nonresidue() == 2);
}

TEST_CASE("extension residue field") {
  auto c = FieldContext::make(3, 2);
  for (std::uint32_t a = 1; a < 9; ++a) CHECK(c->mul(a, c->inv(a)) == 1);
  const auto eps = PadicNumber::epsilon(c);
  CHECK(legendre(ac(eps)) == -1);
  const auto x = PadicNumber::lift(residue(c, 5)) + PadicNumber::uniformizer(c);
  CHECK(x * x.inverse() == num(c, 1));
}

TEST_CASE("scalar parsing") {
  auto c = FieldContext::make(5);
  CHECK(parse_scalar(c, "eps*pi") == PadicNumber::epsilon(c) * PadicNumber::uniformizer(c));
  CHECK(parse_scalar(c, "-3") == num(c, -3));
  CHECK(parse_scalar(c, "pi^2") == num(c, 25));
  CHECK(parse_scalar(c, "1/2") * num(c, 2) == num(c, 1));
  CHECK_THROWS_AS(parse_scalar(c, "foo"), Error);
  CHECK_THROWS_AS(parse_scalar(c, ""), Error);
}
