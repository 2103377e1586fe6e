// Acceptance runner: one PASS/FAIL line per criterion, each with its time budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "nilorb/matching.hpp"
#include "nilorb/orbits.hpp"
#include "nilorb/quadforms.hpp"
#include "nilorb/serialize.hpp"
#include "oracles.hpp"
#include "properties.hpp"
#include "repro.hpp"

using namespace nilorb;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Cli {
  int code;
  std::string out;
  std::string err;
};

Cli cli_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

int run_criterion(int number, const std::string& title, double budget_seconds, const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v.ok = false;
    v.detail = std::string("exception: ") + e.what();
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (v.ok && seconds >= budget_seconds) {
    v.ok = false;
    v.detail = "over time budget";
  }
  std::printf("criterion %d: %s  %s  [%.3f s / %.0f s]%s%s\n", number, v.ok ? "PASS" : "FAIL", title.c_str(), seconds,
              budget_seconds, v.detail.empty() ? "" : "  ", v.detail.c_str());
  std::fflush(stdout);
  return v.ok ? 0 : 1;
}

Verdict sl3_counts() {
  Verdict v;
  for (auto [p, expected] : {std::pair{"7", 11}, {"5", 5}}) {
    const auto r = cli_run({"orbits", "list", "--algebra", "sl", "--n", "3", "--p", p, "--json"});
    v.require(r.code == 0, r.err);
    const auto n = static_cast<int>(Json::parse(r.out).size());
    v.require(n == expected, std::string("p=") + p + ": " + std::to_string(n) + " labels");
  }
  return v;
}

Verdict sl3_golden() {
  Verdict v;
  const auto r = cli_run({"repro", "sl3", "--p", "7"});
  v.require(r.code == 0, "golden mismatch\n" + r.err);

  // v_d carries ac(d) computed from the rational value of d, over all nine cube classes.
  const auto c = FieldContext::make(7);
  int regular = 0;
  for (const auto& label : sl_labels(3, c)) {
    const auto m = match(label, c);
    const auto vm = m.v.matrix();
    if (label.lambda == Partition({3})) {
      ++regular;
      const mpq_class d = *m.representative.entries(1, 2).to_rational();
      v.require(vm(0, 1) == 1, "v_d(1,2) != 1 for " + label_string(label, c));
      v.require(vm(1, 2) == props::detail::rational_ac(d, 7), "v_d(2,3) != ac(d) for d=" + d.get_str());
    } else if (label.lambda == Partition({2, 1})) {
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) v.require(vm(i, j) == (i == 0 && j == 1 ? 1u : 0u), "v_(2,1) differs");
    }
  }
  v.require(regular == 9, "expected 9 regular orbits, found " + std::to_string(regular));
  return v;
}

Verdict sp4_golden() {
  Verdict v;
  for (const char* p : {"5", "7"}) {
    const auto r = cli_run({"repro", "sp4", "--p", p});
    v.require(r.code == 0, std::string("golden mismatch at p=") + p + "\n" + r.err);
    v.require(r.out.find("H H(e1-e2) ∩ H(2e2)\nfacet (0, 0)\n") != std::string::npos, "val 0 subspace or point");
    v.require(r.out.find("H H(e1-e2) ∩ H(2e2+1)\nfacet (-1/2, -1/2)\n") != std::string::npos, "val 1 subspace or point");
  }
  return v;
}

Verdict table1() {
  Verdict v;
  for (long p : {3, 5, 7, 13}) {
    const auto c = FieldContext::make(p);
    const long eps = c->nonresidue();
    const long alpha = p % 4 == 1 ? eps : 1;  // -alpha is a non-square
    const auto cls = [&](long x) { return props::detail::integer_square_class(x, p); };
    const auto h = [&](long a, long b) { return oracle::hilbert_by_conic(a, b, p); };
    const auto prod = [&](long a, long b) { return props::detail::class_product(cls(a), cls(b)); };

    // (dim, disc, Hasse) rows of the table.
    std::set<std::tuple<int, SquareClass, int>> expected;
    for (long t : {1L, eps}) expected.insert({1, cls(t), 1});
    for (long t : {p, eps * p}) expected.insert({1, cls(t), 1});
    expected.insert({2, cls(alpha), 1});
    expected.insert({2, cls(alpha), -1});
    for (long t : {1L, eps})
      for (long u : {1L, eps}) expected.insert({2, prod(t * u, p), h(t, u * p)});
    for (long t : {1L, eps}) {
      expected.insert({3, cls(t), -1});
      expected.insert({3, prod(alpha * t, p), h(alpha, p)});
    }
    expected.insert({4, SquareClass::One, -1});

    std::set<std::tuple<int, SquareClass, int>> found;
    const int counts[] = {0, 4, 6, 4, 1};
    int total = 0;
    for (int dim = 1; dim <= 4; ++dim) {
      int n = 0;
      for (const auto& k : enumerate_classes(dim, c)) {
        if (k.witt != 0) continue;
        ++n;
        found.insert({k.dim, k.disc, k.hasse});
        v.require(oracle::witt_index(diagonal_representative(k, c).entries()) == 0,
                  "representative is isotropic: " + k.str());
      }
      v.require(n == counts[dim], "p=" + std::to_string(p) + " dim " + std::to_string(dim) + ": " +
                                      std::to_string(n) + " anisotropic classes");
      total += n;
    }
    v.require(total == 15, "p=" + std::to_string(p) + ": total " + std::to_string(total));
    v.require(found == expected, "p=" + std::to_string(p) + ": (disc, Hasse) pairs differ from the table");
  }
  return v;
}

Verdict hilbert_oracle() {
  Verdict v;
  int pairs = 0;
  for (long p : {3, 5, 7}) {
    const auto c = FieldContext::make(p);
    const long eps = c->nonresidue();
    const std::vector<long> reps{1, eps, p, eps * p};
    for (long a : reps)
      for (long b : reps) {
        ++pairs;
        const int tame = hilbert_symbol(PadicNumber::from_integer(c, a), PadicNumber::from_integer(c, b));
        v.require(tame == (oracle::conic_solvable(a, b, p, 5) ? 1 : -1),
                  "p=" + std::to_string(p) + " (" + std::to_string(a) + "," + std::to_string(b) + ")");
      }
  }
  v.require(pairs == 48, "pair count");
  return v;
}

Verdict matching_sweep() {
  Verdict v;
  int matched = 0;
  for (long q : {5, 7, 11}) {
    const auto c = FieldContext::make(q);
    const std::vector<std::pair<Algebra, int>> types{{Algebra::SL, 2}, {Algebra::SL, 3}, {Algebra::SL, 4},
                                                     {Algebra::SP, 1}, {Algebra::SP, 2}, {Algebra::SP, 3}};
    for (auto [alg, n] : types) {
      const auto sweep = match_all(alg, n, c);
      for (const auto& f : sweep.failures) v.require(false, "q=" + std::to_string(q) + " " + f.label + ": " + f.message);
      for (const auto& r : sweep.results) {
        ++matched;
        v.require(r.checks.in_lattice && r.checks.degenerate && r.checks.all(),
                  "q=" + std::to_string(q) + " " + label_string(r.label, c) + ": checks failed");
      }
      v.require(sweep.results.size() == labels(alg, n, c).size(), "sweep skipped labels");
    }
  }
  v.require(matched > 0, "nothing matched");
  return v;
}

Verdict orbit_dimensions() {
  Verdict v;
  for (long p : {5, 7}) {
    const auto c = FieldContext::make(p);
    for (int n = 2; n <= 6; ++n) {
      std::map<std::vector<int>, std::set<int>> dims;
      for (const auto& label : sl_labels(n, c)) dims[label.lambda.parts()].insert(orbit_dimension(label, c));
      v.require(dims.size() == static_cast<std::size_t>(enumerate_partitions(n).size()), "missing partitions");
      for (const auto& [parts, ds] : dims) {
        // Column lengths of the Young diagram, counted directly.
        int sum = 0;
        for (int i = 1; i <= parts.front(); ++i) {
          int col = 0;
          for (int part : parts) col += part >= i;
          sum += col * col;
        }
        v.require(ds.size() == 1, "dimension varies across labels of one partition");
        v.require(*ds.begin() == n * n - sum, "dimension differs from n^2 - sum of squared columns");
      }
    }
  }
  return v;
}

Verdict psi_trichotomy() {
  Verdict v;
  for (int q : {5, 7, 9, 11, 13}) {
    const auto c = q == 9 ? FieldContext::make(3, 2) : FieldContext::make(q);
    for (int m = 1; m <= 6; ++m) {
      const auto s = dp::DPStructure::make(c, m);
      std::vector<int> truths;
      for (int ell = 1; ell <= m; ++ell) {
        if (m % ell) continue;
        const auto r = dp::evaluate(dp::build_psi_lm(ell, m), s);
        v.require(r.exact, "psi evaluation was not exact");
        if (r.truth == dp::Truth::True) truths.push_back(ell);
      }
      const std::string where = "q=" + std::to_string(q) + " m=" + std::to_string(m);
      v.require(truths.size() == 1, where + ": " + std::to_string(truths.size()) + " true statements");
      v.require(!truths.empty() && truths.front() == std::gcd(m, q - 1), where + ": wrong ell");
    }
  }
  return v;
}

Verdict property_suites() {
  Verdict v;
  const std::vector<std::pair<std::string, props::Outcome>> suites{
      {"p-adic laws", props::padic_laws(1000, 9001)},
      {"quadratic forms", props::qform_round_trips(1000, 9002)},
      {"facet constancy", props::facet_constancy(1000, 9003)},
      {"NNF", props::nnf_equivalence(1000, 9004)}};
  for (const auto& [name, o] : suites) {
    v.require(o.cases == 1000, name + ": only " + std::to_string(o.cases) + " cases");
    v.require(o.failures == 0, name + ": " + std::to_string(o.failures) + " failures, first " + o.first_failure);
  }
  return v;
}

}  // namespace

int main() {
  int failed = 0;
  failed += run_criterion(1, "sl3 label counts (11 at p=7, 5 at p=5)", 1, sl3_counts);
  failed += run_criterion(2, "sl3 facet lattices and v matrices against the golden table", 1, sl3_golden);
  failed += run_criterion(3, "sp4 subspaces, points, lattices, X_a and v_a against the golden data", 1, sp4_golden);
  failed += run_criterion(4, "anisotropic classes 4/6/4/1 with (disc, Hasse), p in {3,5,7,13}", 1, table1);
  failed += run_criterion(5, "Hilbert symbol equals conic solvability mod P^5, p in {3,5,7}", 30, hilbert_oracle);
  failed += run_criterion(6, "matching sweep sl_n (n<=4), sp_2n (2n<=6), q in {5,7,11}", 120, matching_sweep);
  failed += run_criterion(7, "sl orbit dimensions equal n^2 - sum of squared columns, n<=6", 30, orbit_dimensions);
  failed += run_criterion(8, "psi trichotomy with ell = gcd(m, q-1), q<=13, m<=6", 10, psi_trichotomy);
  failed += run_criterion(9, "property suites at 1000 cases each", 120, property_suites);
  std::printf("%s: %d of 9 criteria failed\n", failed ? "FAIL" : "PASS", failed);
  return failed ? 1 : 0;
}
