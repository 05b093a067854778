#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dposet {

enum class Errc {
  EmptySubset,
  NoDeletion,
  TooLarge,
  BadSize,
  BadCircle,
  NotLoopFull,
  NotLoopFree,
  EqualSizes,
  BadSpec,
  BadFormat,
  CacheError,
  SyntaxError,
  UnknownConstant,
  UnboundVariable,
  BadBinding,
  BadArity,
  BadPermutation,
  UnknownLemma,
  BadParams,
  BadSubset,
};

std::string_view errc_name(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above; the
// message is prefixed with the code name.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace dposet
