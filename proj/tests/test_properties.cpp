#include <catch_amalgamated.hpp>

#include "properties.hpp"

namespace {

void require_ok(const props::Outcome& o, int cases) {
  INFO(o.first_failure);
  CHECK(o.cases == cases);
  CHECK(o.failures == 0);
}

}  // namespace

TEST_CASE("property: p-adic arithmetic laws") { require_ok(props::padic_laws(1000, 101), 1000); }
TEST_CASE("property: quadratic form round trips") { require_ok(props::qform_round_trips(1000, 202), 1000); }
TEST_CASE("property: lattices are constant on facets") { require_ok(props::facet_constancy(1000, 303), 1000); }
TEST_CASE("property: negation normal form") { require_ok(props::nnf_equivalence(1000, 404), 1000); }
