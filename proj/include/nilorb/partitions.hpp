#pragma once

#include <string>
#include <vector>

namespace nilorb {

/// Weakly decreasing sequence of positive integers.
class Partition {
 public:
  Partition() = default;
  /// Throws Error(InvalidArgument) unless parts are positive and non-increasing.
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const noexcept { return parts_; }
  int n() const noexcept { return n_; }
  std::size_t length() const noexcept { return parts_.size(); }
  int operator[](std::size_t i) const { return parts_[i]; }

  friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
  friend bool operator<(const Partition& a, const Partition& b) { return a.parts_ < b.parts_; }

  /// "(2,1,1)".
  std::string str() const;

 private:
  std::vector<int> parts_;
  int n_ = 0;
};

/// All partitions of n, reverse-lexicographic: (n) first, (1,...,1) last.
std::vector<Partition> enumerate_partitions(int n);

/// m_j(lambda) = #{i : lambda_i = j}.
int multiplicity(const Partition& lambda, int j);

/// Every odd part occurs with even multiplicity.
bool is_symplectic_admissible(const Partition& lambda);

std::vector<Partition> symplectic_partitions(int two_n);

Partition transpose(const Partition& lambda);

int gcd_of(const Partition& lambda);

/// Sum of gcd(lambda)^2 over the given partitions.
long count_bound(const std::vector<Partition>& partitions);

/// n^2 - sum of squared transpose parts: the sl_n orbit dimension formula used as a cross-check.
int sl_dimension_formula(const Partition& lambda);

}  // namespace nilorb
