#pragma once

#include <json.hpp>

#include "nilorb/building.hpp"
#include "nilorb/denefpas.hpp"
#include "nilorb/matching.hpp"
#include "nilorb/orbits.hpp"
#include "nilorb/quadforms.hpp"

namespace nilorb {

using Json = nlohmann::json;

/// {val, digits, exact}; val is null for zero. Digits are base-p, trailing zeros dropped;
/// for k > 1 each digit is the coefficient list of the residue polynomial.
Json to_json(const PadicNumber& x);
PadicNumber padic_from_json(const Json& j, const Context& ctx);

Json to_json(const Partition& lambda);
Partition partition_from_json(const Json& j);

/// {dim, disc, hasse, witt, aniso} with disc and aniso as symbolic tags.
Json to_json(const QFormClass& c);
QFormClass qform_from_json(const Json& j, const Context& ctx);

/// {alg, n, lambda, datum}: datum is {j, i} for sl and {"<part>": class, ...} for sp.
Json to_json(const OrbitLabel& label);
/// Throws Error(InvalidArgument) on a malformed document; the label is validated against ctx.
OrbitLabel label_from_json(const Json& j, const Context& ctx);

Json to_json(const ApartmentPoint& x);
/// {bounds, plus_bounds} as exponent matrices.
Json to_json(const MoyPrasadLattice& l);
Json to_json(const Matrix<PadicNumber>& m);
Json to_json(const MatchResult& r, const Context& ctx);
Json to_json(const dp::EvalResult& r);

}  // namespace nilorb
