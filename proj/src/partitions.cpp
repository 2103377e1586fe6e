#include "nilorb/partitions.hpp"

#include <numeric>

#include "nilorb/error.hpp"

namespace nilorb {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 1) throw Error(Errc::InvalidArgument, "partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw Error(Errc::InvalidArgument, "partition parts must be non-increasing");
    n_ += parts_[i];
  }
}

std::string Partition::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(parts_[i]);
  }
  return out + ")";
}

namespace {

void enumerate_into(int remaining, int max_part, std::vector<int>& prefix, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    prefix.push_back(part);
    enumerate_into(remaining - part, part, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Partition> enumerate_partitions(int n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "n must be >= 1");
  std::vector<Partition> out;
  std::vector<int> prefix;
  enumerate_into(n, n, prefix, out);
  return out;
}

int multiplicity(const Partition& lambda, int j) {
  int m = 0;
  for (int part : lambda.parts())
    if (part == j) ++m;
  return m;
}

bool is_symplectic_admissible(const Partition& lambda) {
  for (int j = 1; j <= lambda.n(); j += 2)
    if (multiplicity(lambda, j) % 2 != 0) return false;
  return true;
}

std::vector<Partition> symplectic_partitions(int two_n) {
  if (two_n < 2 || two_n % 2 != 0) throw Error(Errc::InvalidArgument, "symplectic rank must be even and positive");
  std::vector<Partition> out;
  for (auto& lambda : enumerate_partitions(two_n))
    if (is_symplectic_admissible(lambda)) out.push_back(std::move(lambda));
  return out;
}

Partition transpose(const Partition& lambda) {
  std::vector<int> parts;
  const int first = lambda.length() ? lambda[0] : 0;
  for (int i = 1; i <= first; ++i) {
    int count = 0;
    for (int part : lambda.parts())
      if (part >= i) ++count;
    parts.push_back(count);
  }
  return Partition(parts);
}

int gcd_of(const Partition& lambda) {
  int g = 0;
  for (int part : lambda.parts()) g = std::gcd(g, part);
  return g;
}

long count_bound(const std::vector<Partition>& partitions) {
  long total = 0;
  for (const auto& lambda : partitions) {
    const long g = gcd_of(lambda);
    total += g * g;
  }
  return total;
}

int sl_dimension_formula(const Partition& lambda) {
  int sum = 0;
  for (int part : transpose(lambda).parts()) sum += part * part;
  return lambda.n() * lambda.n() - sum;
}

}  // namespace nilorb
