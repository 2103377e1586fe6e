#include <catch_amalgamated.hpp>

#include <random>

#include "nilorb/error.hpp"
#include "nilorb/serialize.hpp"

using namespace nilorb;

TEST_CASE("p-adic JSON") {
  auto c = FieldContext::make(7, 1, 6);
  const auto minus_one = PadicNumber::from_integer(c, -1);
  const Json j = to_json(minus_one);
  CHECK(j["val"] == 0);
  CHECK(j["digits"] == Json::array({6, 6, 6, 6, 6, 6}));
  CHECK(j["exact"] == true);
  const auto back = padic_from_json(j, c);
  CHECK(back == minus_one);
  CHECK(back.exact());
  CHECK(back.display() == "-1");

  CHECK(to_json(PadicNumber(c))["val"].is_null());
  CHECK(padic_from_json(to_json(PadicNumber(c)), c).is_zero());

  const auto x = PadicNumber::from_integer(c, 3 * 49 + 2 * 343);
  CHECK(to_json(x)["val"] == 2);
  CHECK(to_json(x)["digits"] == Json::array({3, 2}));

  CHECK_THROWS_AS(padic_from_json(Json{{"val", 0}, {"digits", {7}}}, c), Error);
  CHECK_THROWS_AS(padic_from_json(Json{{"digits", {1}}}, c), Error);
  CHECK_THROWS_AS(padic_from_json(Json{{"val", 0}, {"digits", {1, 1, 1, 1, 1, 1, 1}}}, c), Error);
}

TEST_CASE("p-adic JSON round trip, random") {
  std::mt19937_64 rng(20261016);
  for (auto [p, k] : {std::pair{3, 1}, {5, 1}, {7, 1}, {3, 2}, {5, 2}}) {
    auto c = FieldContext::make(p, k, 8);
    std::uniform_int_distribution<long> num(-5000, 5000), den(1, 400);
    for (int trial = 0; trial < 200; ++trial) {
      const auto x = PadicNumber::from_rational(c, mpq_class(num(rng), den(rng)));
      const auto y = padic_from_json(to_json(x), c);
      INFO("p=" << p << " k=" << k << " x=" << x.str());
      CHECK(y == x);
      CHECK(y.exact() == x.exact());
      CHECK(to_json(y) == to_json(x));
    }
  }
}

TEST_CASE("partition and class JSON") {
  CHECK(to_json(Partition({2, 1, 1})) == Json::array({2, 1, 1}));
  CHECK(partition_from_json(Json::array({2, 1, 1})) == Partition({2, 1, 1}));
  CHECK_THROWS_AS(partition_from_json(Json{{"a", 1}}), Error);

  for (auto [p, k] : {std::pair{3, 1}, {5, 1}, {7, 1}, {3, 2}}) {
    auto c = FieldContext::make(p, k);
    for (int dim = 0; dim <= 6; ++dim) {
      for (const auto& cls : enumerate_classes(dim, c)) {
        const Json j = to_json(cls);
        CHECK(j["dim"] == dim);
        CHECK(qform_from_json(j, c) == cls);
      }
    }
  }
  auto c = FieldContext::make(5);
  const Json bad_disc{{"dim", 1}, {"disc", "eps"}, {"hasse", 1}, {"witt", 0}, {"aniso", "1"}};
  CHECK_THROWS_AS(qform_from_json(bad_disc, c), Error);
  CHECK_THROWS_AS(qform_from_json(Json{{"witt", 0}, {"aniso", "nope"}}, c), Error);
}

TEST_CASE("label JSON round trip") {
  for (int p : {5, 7}) {
    auto c = FieldContext::make(p);
    for (int n = 2; n <= 4; ++n) {
      for (const auto& l : sl_labels(n, c)) CHECK(label_from_json(to_json(l), c) == l);
    }
    for (int n = 1; n <= 3; ++n) {
      for (const auto& l : sp_labels(n, c)) {
        const Json j = to_json(l);
        CHECK(j["alg"] == "sp");
        // The text form is what the CLI reads back.
        CHECK(label_from_json(Json::parse(j.dump()), c) == l);
      }
    }
  }
  auto c = FieldContext::make(7);
  const Json sl3{{"alg", "sl"}, {"lambda", {3}}, {"datum", {{"j", 2}, {"i", 1}}}};
  const auto l = label_from_json(sl3, c);
  CHECK(l.n == 3);
  CHECK(label_string(l, c) == "(3) d=2*pi^2");
  CHECK_THROWS_AS(label_from_json(Json{{"alg", "so"}, {"lambda", {3}}}, c), Error);
  CHECK_THROWS_AS(label_from_json(Json{{"alg", "sl"}, {"lambda", {3}}, {"datum", {{"j", 3}, {"i", 0}}}}, c), Error);
  // Odd parts of a symplectic partition need even multiplicity.
  CHECK_THROWS_AS(label_from_json(Json{{"alg", "sp"}, {"lambda", {3, 1}}, {"datum", Json::object()}}, c), Error);
}

TEST_CASE("lattice, match and evaluation JSON") {
  const auto rd = RootDatum::make(Algebra::SP, 2);
  const ApartmentPoint x{{Rational(-1, 2), Rational(-1, 2)}};
  CHECK(to_json(x) == Json::array({"-1/2", "-1/2"}));
  const Json l = to_json(moy_prasad(x, rd));
  CHECK(l["bounds"] == Json::parse("[[0,0,1,1],[0,0,1,1],[-1,-1,0,0],[-1,-1,0,0]]"));
  CHECK(l["plus_bounds"] == Json::parse("[[1,1,2,2],[1,1,2,2],[0,0,1,1],[0,0,1,1]]"));

  auto c = FieldContext::make(5);
  const auto label = sp_labels(2, c).front();
  const Json r = to_json(match(label, c), c);
  for (const char* key : {"label", "name", "representative", "subspace", "point", "lattice", "v", "checks"})
    CHECK(r.contains(key));
  CHECK(r["checks"]["degenerate"] == true);

  dp::EvalResult e;
  e.truth = dp::Truth::Unbounded;
  e.exact = false;
  e.flags = {"z-window"};
  CHECK(to_json(e) == Json::parse(R"({"result":"unbounded","exact":false,"flags":["z-window"]})"));
}
