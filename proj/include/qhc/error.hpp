#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qhc {

enum class ErrorCode {
  Parse,
  UndeclaredAtom,
  ArityMismatch,
  SortClash,
  CaptureViolation,
  UnboundMetavariable,
  UnknownCalculus,
  UnknownAtom,
  NonPropositionalInput,
  CyclicLemmaDependency,
  DuplicateDeclaration,
  Io,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qhc
