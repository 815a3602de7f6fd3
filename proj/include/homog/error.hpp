#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace homog {

/// Failure classes reported by the library. The CLI maps each one to a
/// distinct exit code and a stable lower-case name.
enum class ErrorCategory {
  InvalidArgument,
  InvalidCutoff,
  Dimension,
  IllConditioned,
  DegenerateCoefficient,
  UndefinedRatio,
  SizeLimit,
  Config,
  Io,
};

std::string_view to_string(ErrorCategory category);

/// Process exit code used by the CLI for a category (always nonzero).
int exit_code(ErrorCategory category);

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

}  // namespace homog
