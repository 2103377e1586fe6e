#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "nilorb/building.hpp"
#include "nilorb/denefpas.hpp"
#include "nilorb/error.hpp"
#include "nilorb/matching.hpp"
#include "nilorb/orbits.hpp"
#include "nilorb/quadforms.hpp"
#include "nilorb/serialize.hpp"
#include "repro.hpp"
#include "svg.hpp"

namespace nilorb::cli {

namespace {

struct Options {
  long p = 7;
  int k = 1;
  int precision = FieldContext::kDefaultPrecision;

  std::string algebra = "sl";
  int n = 3;
  bool json = false;
  bool table = false;
  bool svg = false;

  std::string label;
  std::string entries;
  int dim = 1;
  std::string point;

  std::string formula;
  int m = 1;
  std::string z_window;
  std::string vf_window;
  int vf_digits = 2;
  bool ring = false;
  std::vector<std::string> assignments;
  bool nnf = false;
  bool mini = false;

  std::string example;
};

// Errors in user-supplied text that the library does not see.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Algebra parse_algebra(const std::string& s) {
  if (s == "sl") return Algebra::SL;
  if (s == "sp") return Algebra::SP;
  throw UsageError("--algebra must be sl or sp");
}

dp::Window parse_window(const std::string& text, const char* flag) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) throw std::invalid_argument(text);
    std::size_t used = 0;
    dp::Window w{std::stol(text.substr(0, colon), &used), 0};
    if (used != colon) throw std::invalid_argument(text);
    const std::string hi = text.substr(colon + 1);
    w.hi = std::stol(hi, &used);
    if (used != hi.size() || w.lo > w.hi) throw std::invalid_argument(text);
    return w;
  } catch (const std::exception&) {
    throw UsageError(std::string(flag) + " expects lo:hi with lo <= hi, got '" + text + "'");
  }
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("invalid JSON: ") + e.what());
  }
}

std::string matrix_text(const PadicMatrix& m) {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out += (c ? " " : "") + m(r, c).display();
    out += "\n";
  }
  return out;
}

std::string lattice_text(const MoyPrasadLattice& l) {
  return "g\n" + render_exponents(l.bound_matrix()) + "g+\n" + render_exponents(l.plus_bound_matrix());
}

std::string word_text(const std::vector<std::string>& word) {
  if (word.empty()) return "";
  std::string out = " via";
  for (const auto& s : word) out += " " + s;
  return out;
}

void cmd_orbits_list(const Options& o, const Context& ctx, std::ostream& out) {
  const auto all = labels(parse_algebra(o.algebra), o.n, ctx);
  if (o.json) {
    Json arr = Json::array();
    for (const auto& l : all) {
      Json j = to_json(l);
      j["name"] = label_string(l, ctx);
      j["orbit_dimension"] = orbit_dimension(l, ctx);
      arr.push_back(j);
    }
    out << arr.dump(2) << "\n";
    return;
  }
  for (const auto& l : all) out << label_string(l, ctx) << "  dim " << orbit_dimension(l, ctx) << "\n";
}

void cmd_orbits_rep(const Options& o, const Context& ctx, std::ostream& out) {
  const OrbitLabel label = label_from_json(parse_json(o.label), ctx);
  const LieMatrix x = representative(label, ctx);
  if (o.json) {
    out << Json{{"label", to_json(label)},
                {"name", label_string(label, ctx)},
                {"representative", to_json(x.entries)},
                {"nilpotent", is_nilpotent(x)},
                {"orbit_dimension", orbit_dimension(x)}}
               .dump(2)
        << "\n";
    return;
  }
  out << label_string(label, ctx) << "\n" << matrix_text(x.entries);
}

void cmd_qform_classify(const Options& o, const Context& ctx, std::ostream& out) {
  std::vector<PadicNumber> diag;
  std::stringstream in(o.entries);
  for (std::string item; std::getline(in, item, ',');) diag.push_back(parse_scalar(ctx, item));
  if (diag.empty()) throw UsageError("--entries needs at least one diagonal entry");
  const QFormClass c = witt_decompose(DiagonalForm(diag));
  if (o.json) out << to_json(c).dump(2) << "\n";
  else out << c.str() << "\n";
}

void cmd_qform_list(const Options& o, const Context& ctx, std::ostream& out) {
  const auto classes = enumerate_classes(o.dim, ctx);
  if (o.json) {
    Json arr = Json::array();
    for (const auto& c : classes) arr.push_back(to_json(c));
    out << arr.dump(2) << "\n";
    return;
  }
  for (const auto& c : classes) out << c.str() << "\n";
}

void cmd_building_lattice(const Options& o, std::ostream& out) {
  const auto rd = RootDatum::make(parse_algebra(o.algebra), o.n);
  const ApartmentPoint x = parse_point(o.point, *rd);
  const auto l = moy_prasad(x, rd);
  if (o.svg) {
    out << render_apartment_svg(*rd, {{x, x.str()}});
    return;
  }
  if (o.json) {
    Json j = to_json(l);
    j["point"] = to_json(x);
    j["facet_dimension"] = facet_dimension(x, *rd);
    out << j.dump(2) << "\n";
    return;
  }
  out << "point " << x.str() << "\nfacet dimension " << facet_dimension(x, *rd) << "\n" << lattice_text(l);
}

int cmd_match(const Options& o, const Context& ctx, std::ostream& out, std::ostream& err) {
  const Algebra alg = parse_algebra(o.algebra);
  std::vector<MatchResult> results;
  if (!o.label.empty()) {
    const OrbitLabel label = label_from_json(parse_json(o.label), ctx);
    results.push_back(match(label, ctx));
  } else {
    auto sweep = match_all(alg, o.n, ctx);
    for (const auto& f : sweep.failures) err << "match failed for " << f.label << ": " << f.message << "\n";
    if (!sweep.failures.empty()) return kInternal;
    results = std::move(sweep.results);
  }
  bool ok = true;
  for (const auto& r : results) ok = ok && r.checks.all();

  if (o.svg) {
    const auto& rd = results.front().lattice.rd;
    std::vector<SvgMark> marks;
    std::vector<AffineSubspace> walls;
    for (const auto& r : results) marks.push_back({r.point, label_string(r.label, ctx)});
    if (results.size() == 1) walls.push_back(results.front().subspace);
    out << render_apartment_svg(*rd, marks, walls);
  } else if (o.json) {
    Json arr = Json::array();
    for (const auto& r : results) arr.push_back(to_json(r, ctx));
    out << (o.label.empty() ? arr : arr.front()).dump(2) << "\n";
  } else {
    for (const auto& r : results) {
      out << "X " << label_string(r.label, ctx) << "\n"
          << "H " << r.subspace.str() << "\n"
          << "point " << r.point.str() << "\n"
          << "alcove " << r.reduction.point.str() << word_text(r.reduction.word) << "\n"
          << lattice_text(r.lattice) << "v\n"
          << render_residues(r.v.matrix(), *ctx) << "dim " << r.orbit_dimension << "\n\n";
    }
  }
  if (!ok) {
    err << "matching checks failed\n";
    return kInternal;
  }
  return kOk;
}

std::string read_formula(const std::string& text) {
  std::error_code ec;
  if (!text.empty() && std::filesystem::is_regular_file(text, ec)) {
    std::ifstream in(text);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return text;
}

dp::Assignment parse_assignments(const std::vector<std::string>& items, const dp::DPFormula& f, const Context& ctx) {
  dp::Assignment a;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--assign expects name=value, got '" + item + "'");
    const std::string name = item.substr(0, eq), value = item.substr(eq + 1);
    const auto it = f.free_variables().find(name);
    if (it == f.free_variables().end()) throw UsageError("'" + name + "' is not a free variable of the formula");
    try {
      switch (it->second) {
        case dp::Sort::VF:
          a.emplace(name, parse_scalar(ctx, value));
          break;
        case dp::Sort::RF:
          a.emplace(name, residue(ctx, ctx->from_integer(std::stol(value))));
          break;
        case dp::Sort::Z:
          a.emplace(name, std::stol(value));
          break;
      }
    } catch (const std::logic_error&) {
      throw UsageError("bad value '" + value + "' for " + name);
    }
  }
  return a;
}

void cmd_dp_eval(const Options& o, const Context& ctx, std::ostream& out) {
  const auto f = dp::parse(read_formula(o.formula));
  dp::DPStructure s = dp::DPStructure::make(ctx, o.m);
  if (!o.z_window.empty()) s.z_window = parse_window(o.z_window, "--z-window");
  if (!o.vf_window.empty()) s.vf_valuations = parse_window(o.vf_window, "--vf-val-window");
  if (o.vf_digits < 1) throw UsageError("--vf-digits must be positive");
  s.vf_digits = o.vf_digits;
  s.ring_mode = o.ring;
  const auto result = dp::evaluate(f, s, parse_assignments(o.assignments, f, ctx));
  out << to_json(result).dump() << "\n";
}

void cmd_dp_psi(const Options& o, const Context& ctx, std::ostream& out) {
  if (o.m < 1) throw UsageError("--m must be positive");
  const dp::DPStructure s = dp::DPStructure::make(ctx, o.m);
  Json arr = Json::array();
  for (int ell = 1; ell <= o.m; ++ell) {
    if (o.m % ell) continue;
    const auto r = dp::evaluate(dp::build_psi_lm(ell, o.m), s);
    if (o.json) arr.push_back(Json{{"ell", ell}, {"m", o.m}, {"result", to_json(r)}});
    else out << "psi(" << ell << "," << o.m << ") " << dp::truth_name(r.truth) << (r.exact ? "" : " (bounded)") << "\n";
  }
  if (o.json) out << arr.dump(2) << "\n";
}

void cmd_dp_print(const Options& o, std::ostream& out) {
  const auto f = dp::parse(read_formula(o.formula));
  dp::FormulaPtr g = f.root();
  if (o.nnf) g = dp::to_nnf(g);
  if (o.mini) g = dp::miniscope(g);
  out << dp::to_string(g) << "\n";
}

int cmd_repro(const Options& o, const Context& ctx, std::ostream& out, std::ostream& err) {
  const Repro r = o.example == "sl3" ? repro_sl3(ctx) : repro_sp4(ctx);
  out << r.actual;
  if (!r.ok()) {
    err << "golden mismatch for " << o.example << ":\n" << line_diff(r.expected, r.actual);
    return kInternal;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Rational nilpotent orbits of sl_n and sp_2n over p-adic fields", "nilorb"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  app.add_option("--p", o.p, "residue characteristic, an odd prime")->envname("NILORB_P");
  app.add_option("--k", o.k, "degree of the unramified extension, q = p^k");
  app.add_option("--precision", o.precision, "p-adic digits carried by unit parts")->envname("NILORB_PRECISION");

  const auto add_algebra = [&](CLI::App* c) {
    c->add_option("--algebra", o.algebra, "sl or sp")->check(CLI::IsMember({"sl", "sp"}));
    c->add_option("--n", o.n, "matrix size for sl, rank for sp (sp4 is --n 2)")->check(CLI::Range(1, 12));
  };

  auto* orbits = app.add_subcommand("orbits", "rational nilpotent orbit labels");
  orbits->require_subcommand(1);
  auto* orbits_list = orbits->add_subcommand("list", "list orbit labels with their dimensions");
  add_algebra(orbits_list);
  orbits_list->add_flag("--json", o.json, "JSON output");
  auto* orbits_rep = orbits->add_subcommand("rep", "representative matrix of a label");
  orbits_rep->add_option("--label", o.label, "label JSON {alg, n, lambda, datum}")->required();
  orbits_rep->add_flag("--json", o.json, "JSON output");

  auto* qform = app.add_subcommand("qform", "quadratic forms over F");
  qform->require_subcommand(1);
  auto* qform_classify = qform->add_subcommand("classify", "classify a diagonal form");
  qform_classify->add_option("--entries", o.entries, "diagonal entries, e.g. 1,eps,pi,eps*pi")->required();
  qform_classify->add_flag("--json", o.json, "JSON output");
  auto* qform_list = qform->add_subcommand("list", "all classes of a dimension, anisotropic ones included");
  qform_list->add_option("--dim", o.dim, "dimension, 0 to 4")->check(CLI::Range(0, 4));
  qform_list->add_flag("--json", o.json, "JSON output");

  auto* building = app.add_subcommand("building", "standard apartment");
  building->require_subcommand(1);
  auto* lattice = building->add_subcommand("lattice", "Moy-Prasad lattices g_x and g_x+ at a point");
  add_algebra(lattice);
  lattice->add_option("--point", o.point, "rational coordinates, e.g. -1/2,-1/2")->required();
  lattice->add_flag("--json", o.json, "JSON {bounds, plus_bounds}");
  lattice->add_flag("--svg", o.svg, "SVG of the rank 2 apartment with the point marked");

  auto* match_cmd = app.add_subcommand("match", "match partition labels with facets and degenerate cosets");
  add_algebra(match_cmd);
  match_cmd->add_option("--label", o.label, "a single label as JSON; default all labels");
  auto* json_flag = match_cmd->add_flag("--json", o.json, "JSON output");
  auto* table_flag = match_cmd->add_flag("--table", o.table, "table output (default)");
  auto* svg_flag = match_cmd->add_flag("--svg", o.svg, "SVG of the matched points (rank 2 only)");
  json_flag->excludes(table_flag)->excludes(svg_flag);
  table_flag->excludes(svg_flag);

  auto* dp_cmd = app.add_subcommand("dp", "Denef-Pas formulas");
  dp_cmd->require_subcommand(1);
  auto* dp_eval = dp_cmd->add_subcommand("eval", "evaluate a formula; prints {result, exact, flags}");
  dp_eval->add_option("--formula", o.formula, "formula text or a file containing it")->required();
  dp_eval->add_option("--m", o.m, "number of coset constants d1..dm")->check(CLI::PositiveNumber);
  dp_eval->add_option("--z-window", o.z_window, "value group window lo:hi (default -16:16)");
  dp_eval->add_option("--vf-val-window", o.vf_window, "valuations enumerated by VF quantifiers (default -2:2)");
  dp_eval->add_option("--vf-digits", o.vf_digits, "unit digits enumerated by VF quantifiers");
  dp_eval->add_flag("--ring", o.ring, "VF quantifiers range over the valuation ring");
  dp_eval->add_option("--assign", o.assignments, "free variable values name=value (VF: eps*pi, RF: integer, Z: integer)");
  auto* dp_psi = dp_cmd->add_subcommand("psi", "evaluate psi(l,m) for every divisor l of m");
  dp_psi->add_option("--m", o.m, "exponent m")->required()->check(CLI::PositiveNumber);
  dp_psi->add_flag("--json", o.json, "JSON output");
  auto* dp_print = dp_cmd->add_subcommand("print", "parse and print a formula");
  dp_print->add_option("--formula", o.formula, "formula text or a file containing it")->required();
  dp_print->add_flag("--nnf", o.nnf, "negation normal form");
  dp_print->add_flag("--miniscope", o.mini, "push existential quantifiers inward");

  auto* repro = app.add_subcommand("repro", "reproduce a worked example and compare with the embedded golden data");
  repro->add_option("example", o.example, "sl3 or sp4")->required()->check(CLI::IsMember({"sl3", "sp4"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    // Help for the innermost subcommand that was named.
    const CLI::App* target = &app;
    for (auto* sub = target; !sub->get_subcommands().empty();) target = sub = sub->get_subcommands().front();
    out << target->help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\nRun with --help for usage.\n";
    return kUsage;
  }

  try {
    const Context ctx = FieldContext::make(o.p, o.k, o.precision);
    if (orbits_list->parsed()) cmd_orbits_list(o, ctx, out);
    else if (orbits_rep->parsed()) cmd_orbits_rep(o, ctx, out);
    else if (qform_classify->parsed()) cmd_qform_classify(o, ctx, out);
    else if (qform_list->parsed()) cmd_qform_list(o, ctx, out);
    else if (lattice->parsed()) cmd_building_lattice(o, out);
    else if (match_cmd->parsed()) return cmd_match(o, ctx, out, err);
    else if (dp_eval->parsed()) cmd_dp_eval(o, ctx, out);
    else if (dp_psi->parsed()) cmd_dp_psi(o, ctx, out);
    else if (dp_print->parsed()) cmd_dp_print(o, out);
    else if (repro->parsed()) return cmd_repro(o, ctx, out, err);
    return kOk;
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.internal() ? kInternal : kDomain;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace nilorb::cli
