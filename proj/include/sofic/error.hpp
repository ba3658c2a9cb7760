#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sofic {

enum class ErrorCode {
  EmptyList,
  EmptyWord,
  MalformedLine,
  SymbolNotInAlphabet,
  FreshSymbolCollision,
  NotInLanguage,
  EmptyGraph,
  UnknownVertexId,
  NotSft,
  NotWellDefined,
  UniversalPointMissing,
  NotModular,
  AlphabetsOverlap,
  MissingWeight,
  NotIrreducible,
  NotNonnegative,
  InvalidParams,
  NoClosedForm,
};

std::string_view to_string(ErrorCode code);

/// Domain error raised by library operations. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace sofic
