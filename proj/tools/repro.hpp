#pragma once

#include <map>
#include <string>
#include <vector>

#include "nilorb/padic.hpp"

namespace nilorb::cli {

/// Lines between "@each" and "@end" are emitted once per substitution map,
/// with "{key}" replaced by its value; other lines are copied verbatim.
std::string expand_template(const std::string& text, const std::vector<std::map<std::string, std::string>>& items);

struct Repro {
  std::string actual;    // computed by the library
  std::string expected;  // golden template instantiated for the field
  bool ok() const { return actual == expected; }
};

Repro repro_sl3(const Context& ctx);
Repro repro_sp4(const Context& ctx);

/// Unified-style listing of differing lines, empty when equal.
std::string line_diff(const std::string& expected, const std::string& actual);

const std::string& golden_sl3();
const std::string& golden_sp4();

}  // namespace nilorb::cli
