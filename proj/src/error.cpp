#include "nilorb/error.hpp"

namespace nilorb {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::InversionOfZero: return "InversionOfZero";
    case Errc::PrecisionLoss: return "PrecisionLoss";
    case Errc::ZeroInput: return "ZeroInput";
    case Errc::DegenerateForm: return "DegenerateForm";
    case Errc::NoMatch: return "NoMatch";
    case Errc::NotAdmissible: return "NotAdmissible";
    case Errc::InvalidTuple: return "InvalidTuple";
    case Errc::NotRegular: return "NotRegular";
    case Errc::NotInLattice: return "NotInLattice";
    case Errc::EmptySubspace: return "EmptySubspace";
    case Errc::InvalidDivisor: return "InvalidDivisor";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::SortError: return "SortError";
    case Errc::UnassignedVariable: return "UnassignedVariable";
  }
  return "Error";
}

}  // namespace nilorb
