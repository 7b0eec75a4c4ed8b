#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace adsfuse {

enum class ErrorCode {
  ArityMismatch,
  UndeclaredSymbol,
  NameClash,
  UnknownSurrogate,
  UnsupportedSymbol,
  UninterpretedSymbol,
  SymbolCollision,
  NonLocalComponent,
  Precondition,
  Resource,
  Syntax,
  Validation,
  Untranslatable,
  Json,
  Internal,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Thrown when a configured cap is hit. `detail` is a short stable tag such as
// "type-cap" that ends up in machine-readable reports.
class ResourceError : public Error {
 public:
  ResourceError(std::string detail, std::string message)
      : Error(ErrorCode::Resource, std::move(message)), detail_(std::move(detail)) {}

  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
};

}  // namespace adsfuse
