#include "dposet/error.hpp"

namespace dposet {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::EmptySubset: return "EmptySubset";
    case Errc::NoDeletion: return "NoDeletion";
    case Errc::TooLarge: return "TooLarge";
    case Errc::BadSize: return "BadSize";
    case Errc::BadCircle: return "BadCircle";
    case Errc::NotLoopFull: return "NotLoopFull";
    case Errc::NotLoopFree: return "NotLoopFree";
    case Errc::EqualSizes: return "EqualSizes";
    case Errc::BadSpec: return "BadSpec";
    case Errc::BadFormat: return "BadFormat";
    case Errc::CacheError: return "CacheError";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownConstant: return "UnknownConstant";
    case Errc::UnboundVariable: return "UnboundVariable";
    case Errc::BadBinding: return "BadBinding";
    case Errc::BadArity: return "BadArity";
    case Errc::BadPermutation: return "BadPermutation";
    case Errc::UnknownLemma: return "UnknownLemma";
    case Errc::BadParams: return "BadParams";
    case Errc::BadSubset: return "BadSubset";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& detail)
    : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
      code_(code) {}

}  // namespace dposet
