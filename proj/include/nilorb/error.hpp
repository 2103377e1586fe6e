#pragma once

#include <stdexcept>
#include <string>

namespace nilorb {

enum class Errc {
  InvalidArgument,
  InversionOfZero,
  PrecisionLoss,
  ZeroInput,
  DegenerateForm,
  NoMatch,
  NotAdmissible,
  InvalidTuple,
  NotRegular,
  NotInLattice,
  EmptySubspace,
  InvalidDivisor,
  SyntaxError,
  SortError,
  UnassignedVariable,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

  // NoMatch and NotInLattice can only come from a broken invariant in this library.
  bool internal() const noexcept { return code_ == Errc::NoMatch || code_ == Errc::NotInLattice; }

 private:
  Errc code_;
};

}  // namespace nilorb
