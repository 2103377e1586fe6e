#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "nilorb/error.hpp"
#include "nilorb/partitions.hpp"

using namespace nilorb;

namespace {

// Partition numbers from the recurrence p(n) = sum_k p(n, k) over the largest part.
long partition_count_oracle(int n) {
  std::vector<std::vector<long>> t(n + 1, std::vector<long>(n + 1, 0));
  for (int k = 0; k <= n; ++k) t[0][k] = 1;
  for (int m = 1; m <= n; ++m)
    for (int k = 1; k <= n; ++k) t[m][k] = t[m][k - 1] + (m >= k ? t[m - k][k] : 0);
  return t[n][n];
}

}  // namespace

TEST_CASE("enumeration order and counts") {
  const auto p3 = enumerate_partitions(3);
  REQUIRE(p3.size() == 3);
  CHECK(p3[0] == Partition({3}));
  CHECK(p3[1] == Partition({2, 1}));
  CHECK(p3[2] == Partition({1, 1, 1}));
  CHECK(enumerate_partitions(1).size() == 1);
  CHECK(enumerate_partitions(4).size() == 5);
  for (int n = 1; n <= 12; ++n) {
    const auto all = enumerate_partitions(n);
    CHECK(static_cast<long>(all.size()) == partition_count_oracle(n));
    CHECK(std::is_sorted(all.rbegin(), all.rend()));
  }
  CHECK_THROWS_AS(Partition({1, 2}), Error);
  CHECK_THROWS_AS(Partition({2, 0}), Error);
}

TEST_CASE("multiplicities") {
  CHECK(multiplicity(Partition({2, 1, 1}), 1) == 2);
  CHECK(multiplicity(Partition({4}), 4) == 1);
  CHECK(multiplicity(Partition({2, 2}), 2) == 2);
  for (int n = 1; n <= 10; ++n)
    for (const auto& lambda : enumerate_partitions(n)) {
      int sum = 0;
      for (int j = 1; j <= n; ++j) sum += j * multiplicity(lambda, j);
      CHECK(sum == n);
    }
}

TEST_CASE("symplectic admissibility") {
  CHECK(is_symplectic_admissible(Partition({4})));
  CHECK_FALSE(is_symplectic_admissible(Partition({3, 1})));
  CHECK(is_symplectic_admissible(Partition({2, 1, 1})));
  CHECK(is_symplectic_admissible(Partition({1, 1})));
  const auto four = symplectic_partitions(4);
  CHECK(four == std::vector<Partition>{Partition({4}), Partition({2, 2}), Partition({2, 1, 1}),
                                       Partition({1, 1, 1, 1})});
  CHECK(symplectic_partitions(6).size() == 8);
  // Brute-force filter: count parts of each odd size directly.
  for (int n = 1; n <= 6; ++n) {
    std::size_t expected = 0;
    for (const auto& lambda : enumerate_partitions(2 * n)) {
      bool ok = true;
      for (int part : lambda.parts())
        if (part % 2 == 1 && std::count(lambda.parts().begin(), lambda.parts().end(), part) % 2 == 1) ok = false;
      if (ok) ++expected;
    }
    CHECK(symplectic_partitions(2 * n).size() == expected);
  }
}

TEST_CASE("transpose") {
  CHECK(transpose(Partition({3})) == Partition({1, 1, 1}));
  CHECK(transpose(Partition({2, 1})) == Partition({2, 1}));
  CHECK(transpose(Partition({2, 2})) == Partition({2, 2}));
  for (int n = 1; n <= 12; ++n)
    for (const auto& lambda : enumerate_partitions(n)) CHECK(transpose(transpose(lambda)) == lambda);
}

TEST_CASE("count bound") {
  CHECK(count_bound(enumerate_partitions(3)) == 11);
  CHECK(count_bound({Partition({1, 1, 1})}) == 1);
  CHECK(count_bound(enumerate_partitions(2)) == 5);
}
