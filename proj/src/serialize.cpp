#include "nilorb/serialize.hpp"

#include "nilorb/error.hpp"

namespace nilorb {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::InvalidArgument, "malformed JSON: " + what); }

Json exponent_matrix(const Matrix<long>& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

Json to_json(const PadicNumber& x) {
  Json out;
  out["exact"] = x.exact();
  if (x.is_zero()) {
    out["val"] = nullptr;
    out["digits"] = Json::array();
    return out;
  }
  out["val"] = *x.valuation();
  auto ds = x.digits();
  const auto is_zero_digit = [](const std::vector<std::int64_t>& d) {
    for (auto c : d)
      if (c) return false;
    return true;
  };
  while (!ds.empty() && is_zero_digit(ds.back())) ds.pop_back();
  Json digits = Json::array();
  for (const auto& d : ds) {
    if (x.context()->k() == 1) digits.push_back(d[0]);
    else digits.push_back(d);
  }
  out["digits"] = digits;
  return out;
}

PadicNumber padic_from_json(const Json& j, const Context& ctx) {
  if (!j.is_object() || !j.contains("val") || !j.contains("digits")) bad("p-adic numbers need val and digits");
  if (j["val"].is_null()) return PadicNumber(ctx);
  if (!j["val"].is_number_integer() || !j["digits"].is_array()) bad("val must be an integer and digits an array");
  const int k = ctx->k();
  std::vector<mpz_class> unit(k, mpz_class(0));
  mpz_class scale = 1;
  const auto& digits = j["digits"];
  if (static_cast<int>(digits.size()) > ctx->precision()) bad("more digits than the working precision");
  for (const auto& d : digits) {
    std::vector<std::int64_t> coeffs;
    if (k == 1) {
      if (!d.is_number_integer()) bad("digits must be integers");
      coeffs.push_back(d.get<std::int64_t>());
    } else {
      if (!d.is_array() || static_cast<int>(d.size()) != k) bad("each digit needs k coefficients");
      coeffs = d.get<std::vector<std::int64_t>>();
    }
    for (int i = 0; i < k; ++i) {
      if (coeffs[i] < 0 || coeffs[i] >= ctx->p()) bad("digit out of range");
      unit[i] += scale * coeffs[i];
    }
    scale *= ctx->p();
  }
  const bool exact = j.value("exact", false);
  // The stored unit is canonical in [0, p^N); an exact value is its balanced lift.
  if (exact) {
    const mpz_class& mod = ctx->unit_modulus();
    for (auto& c : unit)
      if (2 * c > mod) c -= mod;
  }
  return PadicNumber::from_unit(ctx, j["val"].get<std::int64_t>(), unit, exact);
}

Json to_json(const Partition& lambda) { return lambda.parts(); }

Partition partition_from_json(const Json& j) {
  if (!j.is_array()) bad("a partition is an array of parts");
  std::vector<int> parts;
  for (const auto& x : j) {
    if (!x.is_number_integer()) bad("partition parts must be integers");
    parts.push_back(x.get<int>());
  }
  return Partition(parts);
}

Json to_json(const QFormClass& c) {
  return Json{{"dim", c.dim},
              {"disc", square_class_name(c.disc)},
              {"hasse", c.hasse},
              {"witt", c.witt},
              {"aniso", aniso_name(c.aniso)}};
}

QFormClass qform_from_json(const Json& j, const Context& ctx) {
  if (!j.is_object() || !j.contains("witt") || !j.contains("aniso")) bad("a class needs witt and aniso");
  const auto tag = aniso_from_name(j["aniso"].get<std::string>());
  if (!tag) bad("unknown anisotropic tag '" + j["aniso"].get<std::string>() + "'");
  QFormClass c = make_class(j["witt"].get<int>(), *tag, ctx);
  // Optional invariants must agree with the ones implied by (witt, aniso).
  if (j.contains("dim") && j["dim"].get<int>() != c.dim) bad("dim disagrees with witt and aniso");
  if (j.contains("hasse") && j["hasse"].get<int>() != c.hasse) bad("hasse disagrees with witt and aniso");
  if (j.contains("disc")) {
    const auto d = square_class_from_name(j["disc"].get<std::string>());
    if (!d || *d != c.disc) bad("disc disagrees with witt and aniso");
  }
  return c;
}

Json to_json(const OrbitLabel& label) {
  Json out{{"alg", algebra_name(label.algebra)}, {"n", label.n}, {"lambda", to_json(label.lambda)}};
  if (label.algebra == Algebra::SL) {
    out["datum"] = Json{{"j", label.sl.j}, {"i", label.sl.i}};
  } else {
    Json datum = Json::object();
    for (const auto& [i, c] : label.sp) datum[std::to_string(i)] = to_json(c);
    out["datum"] = datum;
  }
  return out;
}

OrbitLabel label_from_json(const Json& j, const Context& ctx) {
  if (!j.is_object() || !j.contains("alg") || !j.contains("lambda")) bad("a label needs alg and lambda");
  OrbitLabel label;
  const std::string alg = j["alg"].get<std::string>();
  if (alg == "sl") label.algebra = Algebra::SL;
  else if (alg == "sp") label.algebra = Algebra::SP;
  else bad("alg must be \"sl\" or \"sp\"");
  label.lambda = partition_from_json(j["lambda"]);
  label.n = j.contains("n") ? j["n"].get<int>() : (label.algebra == Algebra::SL ? label.lambda.n() : label.lambda.n() / 2);
  const Json datum = j.value("datum", Json::object());
  if (label.algebra == Algebra::SL) {
    label.sl.j = datum.value("j", 0);
    label.sl.i = datum.value("i", 0);
  } else {
    if (!datum.is_object()) bad("an sp datum is an object keyed by even parts");
    for (const auto& [key, value] : datum.items()) {
      int part = 0;
      try {
        part = std::stoi(key);
      } catch (const std::exception&) {
        bad("datum key '" + key + "' is not a part size");
      }
      label.sp[part] = qform_from_json(value, ctx);
    }
  }
  validate_label(label, ctx);
  return label;
}

Json to_json(const ApartmentPoint& x) {
  Json out = Json::array();
  for (const auto& c : x.coords) out.push_back(c.get_str());
  return out;
}

Json to_json(const MoyPrasadLattice& l) {
  return Json{{"bounds", exponent_matrix(l.bound_matrix())}, {"plus_bounds", exponent_matrix(l.plus_bound_matrix())}};
}

Json to_json(const Matrix<PadicNumber>& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).display());
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const MatchResult& r, const Context& ctx) {
  Json v = Json::array();
  const auto vm = r.v.matrix();
  for (std::size_t i = 0; i < vm.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < vm.cols(); ++j) row.push_back(ctx->residue_string(vm(i, j)));
    v.push_back(row);
  }
  return Json{{"label", to_json(r.label)},
              {"name", label_string(r.label, ctx)},
              {"representative", to_json(r.representative.entries)},
              {"subspace", r.subspace.str()},
              {"point", to_json(r.point)},
              {"reduced_point", to_json(r.reduction.point)},
              {"word", r.reduction.word},
              {"lattice", to_json(r.lattice)},
              {"v", v},
              {"orbit_dimension", r.orbit_dimension},
              {"checks",
               {{"in_subspace", r.checks.in_subspace},
                {"maximal_facet", r.checks.maximal_facet},
                {"in_lattice", r.checks.in_lattice},
                {"degenerate", r.checks.degenerate},
                {"nilpotent", r.checks.nilpotent}}}};
}

Json to_json(const dp::EvalResult& r) {
  return Json{{"result", dp::truth_name(r.truth)}, {"exact", r.exact}, {"flags", r.flags}};
}

}  // namespace nilorb
