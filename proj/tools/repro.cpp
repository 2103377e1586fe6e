#include "repro.hpp"

#include <sstream>

#include "golden_data.hpp"
#include "nilorb/building.hpp"
#include "nilorb/error.hpp"
#include "nilorb/matching.hpp"
#include "nilorb/orbits.hpp"

namespace nilorb::cli {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::string substitute(std::string line, const std::map<std::string, std::string>& values) {
  for (const auto& [key, value] : values) {
    const std::string token = "{" + key + "}";
    for (std::size_t pos = line.find(token); pos != std::string::npos; pos = line.find(token, pos + value.size()))
      line.replace(pos, token.size(), value);
  }
  return line;
}

std::string offset_suffix(long v) { return v == 0 ? "" : (v > 0 ? "+" : "") + std::to_string(v); }

std::string entries_block(const PadicMatrix& m) {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out += " ";
      out += m(r, c).display();
    }
    out += "\n";
  }
  return out;
}

// k where the quotient g/g+ is nonzero, 0 elsewhere.
std::string quotient_shape(const MoyPrasadLattice& l) {
  const auto g = l.bound_matrix();
  const auto gp = l.plus_bound_matrix();
  std::string out;
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t c = 0; c < g.cols(); ++c) {
      if (c) out += " ";
      out += g(r, c) < gp(r, c) ? "k" : "0";
    }
    out += "\n";
  }
  return out;
}

std::string lattice_block(const MoyPrasadLattice& l) {
  return "g\n" + render_exponents(l.bound_matrix()) + "g+\n" + render_exponents(l.plus_bound_matrix()) + "V\n" +
         quotient_shape(l);
}

std::string v_block(const MatchResult& r, const Context& ctx) {
  return "v\n" + render_residues(r.v.matrix(), *ctx);
}

// Representative points of the facets of the fundamental sl3 alcove used in the worked example.
const std::vector<std::pair<std::string, std::string>>& sl3_facets() {
  static const std::vector<std::pair<std::string, std::string>> facets = {
      {"F1", "1/3,0,-1/3"}, {"F2", "1/3,-1/6,-1/6"}, {"F3", "0,0,0"}, {"F4", "2/3,-1/3,-1/3"}, {"F5", "1/3,1/3,-2/3"}};
  return facets;
}

// Facets of the closed alcove are told apart by their lattice pair (phi_x alone
// does not separate the vertices).
std::string facet_name(const ApartmentPoint& x, const RootDatumPtr& rd) {
  const auto lattice = moy_prasad(x, rd);
  for (const auto& [name, text] : sl3_facets())
    if (moy_prasad(parse_point(text, *rd), rd) == lattice) return name;
  return "?";
}

const MatchResult& find_match(const std::vector<MatchResult>& results, const std::string& name, const Context& ctx) {
  for (const auto& r : results)
    if (label_string(r.label, ctx) == name) return r;
  throw Error(Errc::NoMatch, "no matched orbit named " + name);
}

}  // namespace

const std::string& golden_sl3() {
  static const std::string text = golden::sl3;
  return text;
}

const std::string& golden_sp4() {
  static const std::string text = golden::sp4;
  return text;
}

std::string expand_template(const std::string& text, const std::vector<std::map<std::string, std::string>>& items) {
  std::string out;
  std::vector<std::string> block;
  bool in_block = false;
  for (const auto& line : split_lines(text)) {
    if (line == "@each") {
      in_block = true;
      block.clear();
    } else if (line == "@end") {
      in_block = false;
      for (const auto& item : items)
        for (const auto& b : block) out += substitute(b, item) + "\n";
    } else if (in_block) {
      block.push_back(line);
    } else {
      out += line + "\n";
    }
  }
  return out;
}

Repro repro_sl3(const Context& ctx) {
  const auto rd = RootDatum::make(Algebra::SL, 3);
  Repro rep;

  // Expected: the golden table, one block per d = pi^b * u over cube classes.
  std::vector<std::map<std::string, std::string>> items;
  const auto units = residue_power_coset_reps(3, ctx);
  for (int b = 0; b < 3; ++b) {
    for (const auto& u : units) {
      PadicNumber d = PadicNumber::lift(u) * PadicNumber::uniformizer(ctx).pow(b);
      std::string name = ctx->residue_string(u.code);
      if (b > 0) name = (name == "1" ? "" : name + "*") + (b == 1 ? "pi" : "pi^" + std::to_string(b));
      items.push_back({{"d", name},
                       {"off", offset_suffix(b)},
                       {"facet", std::to_string(b + 3)},
                       {"x", d.display()},
                       {"ac", ctx->residue_string(ac(d).code)}});
    }
  }
  rep.expected = expand_template(golden_sl3(), items);

  // Actual: lattices at the facet points, then the matching of every orbit.
  std::string out = "sl3 facets\n";
  for (const auto& [name, text] : sl3_facets()) {
    const auto x = parse_point(text, *rd);
    out += name + " " + x.str() + "\n" + lattice_block(moy_prasad(x, rd)) + "\n";
  }
  out += "sl3 orbits\n";
  const auto sweep = match_all(Algebra::SL, 3, ctx);
  if (!sweep.failures.empty()) throw Error(Errc::NoMatch, sweep.failures.front().message);
  for (const char* name : {"(1,1,1)", "(2,1)"}) {
    const auto& r = find_match(sweep.results, name, ctx);
    out += std::string("X ") + name + "\nH " + r.subspace.str() + "\nfacet " + facet_name(r.reduction.point, rd) +
           "\n" + v_block(r, ctx) + "\n";
  }
  for (const auto& r : sweep.results) {
    if (r.label.lambda.parts() != std::vector<int>{3}) continue;
    out += "X " + label_string(r.label, ctx) + "\nH " + r.subspace.str() + "\nfacet " +
           facet_name(r.reduction.point, rd) + "\nX\n" + entries_block(r.representative.entries) + v_block(r, ctx) +
           "\n";
  }
  rep.actual = out;
  return rep;
}

Repro repro_sp4(const Context& ctx) {
  const auto rd = RootDatum::make(Algebra::SP, 2);
  Repro rep;

  const PadicNumber eps = PadicNumber::epsilon(ctx);
  const PadicNumber pi = PadicNumber::uniformizer(ctx);
  const std::vector<std::pair<std::string, PadicNumber>> scalars = {
      {"1", PadicNumber::from_integer(ctx, 1)}, {"eps", eps}, {"pi", pi}, {"eps*pi", eps * pi}};

  std::vector<std::map<std::string, std::string>> items;
  for (const auto& [name, a] : scalars) {
    const long v = *ord(a);
    items.push_back({{"a", name},
                     {"off", offset_suffix(v)},
                     {"point", v == 0 ? "(0, 0)" : "(-1/2, -1/2)"},
                     {"x", a.display()},
                     {"ac", ctx->residue_string(ac(a).code)},
                     {"neg1", ctx->residue_string(ctx->neg(1))}});
  }
  rep.expected = expand_template(golden_sp4(), items);

  std::string out = "sp4 facets\n";
  for (const char* text : {"0,0", "-1/2,-1/2"}) {
    const auto x = parse_point(text, *rd);
    out += x.str() + "\n" + lattice_block(moy_prasad(x, rd)) + "\n";
  }
  out += "sp4 orbits\n";
  // Orbits in O_(4) are labelled by the class of the rank one form <a>.
  for (const auto& [name, a] : scalars) {
    const QFormClass cls = witt_decompose(DiagonalForm({a}));
    OrbitLabel label;
    label.algebra = Algebra::SP;
    label.n = 2;
    label.lambda = Partition({4});
    label.sp[4] = cls;
    const auto r = match(label, ctx);
    if (!r.checks.all()) throw Error(Errc::NoMatch, "matching checks failed for " + label_string(label, ctx));
    out += "X (4) a=" + name + "\nH " + r.subspace.str() + "\nfacet " + r.point.str() + "\nX\n" +
           entries_block(r.representative.entries) + v_block(r, ctx) + "\n";
  }
  rep.actual = out;
  return rep;
}

std::string line_diff(const std::string& expected, const std::string& actual) {
  const auto e = split_lines(expected);
  const auto a = split_lines(actual);
  std::string out;
  for (std::size_t i = 0; i < std::max(e.size(), a.size()); ++i) {
    const std::string* el = i < e.size() ? &e[i] : nullptr;
    const std::string* al = i < a.size() ? &a[i] : nullptr;
    if (el && al && *el == *al) continue;
    out += "line " + std::to_string(i + 1) + ":\n";
    if (el) out += "- " + *el + "\n";
    if (al) out += "+ " + *al + "\n";
  }
  return out;
}

}  // namespace nilorb::cli
