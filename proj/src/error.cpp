#include "homog/error.hpp"

namespace homog {

std::string_view to_string(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::InvalidArgument: return "invalid_argument";
    case ErrorCategory::InvalidCutoff: return "invalid_cutoff";
    case ErrorCategory::Dimension: return "dimension";
    case ErrorCategory::IllConditioned: return "ill_conditioned";
    case ErrorCategory::DegenerateCoefficient: return "degenerate_coefficient";
    case ErrorCategory::UndefinedRatio: return "undefined_ratio";
    case ErrorCategory::SizeLimit: return "size_limit";
    case ErrorCategory::Config: return "config";
    case ErrorCategory::Io: return "io";
  }
  return "unknown";
}

int exit_code(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::InvalidArgument: return 2;
    case ErrorCategory::Config: return 3;
    case ErrorCategory::InvalidCutoff: return 4;
    case ErrorCategory::Dimension: return 5;
    case ErrorCategory::IllConditioned: return 6;
    case ErrorCategory::DegenerateCoefficient: return 7;
    case ErrorCategory::UndefinedRatio: return 8;
    case ErrorCategory::SizeLimit: return 9;
    case ErrorCategory::Io: return 10;
  }
  return 1;
}

}  // namespace homog
