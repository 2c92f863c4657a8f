#include "frost/error.hpp"

namespace frost {

std::string_view to_string(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::usage:
      return "usage";
    case ErrorCategory::backend:
      return "backend";
    case ErrorCategory::fit:
      return "fit";
  }
  return "unknown";
}

Error::Error(ErrorCategory category, std::string_view kind, const std::string& what)
    : std::runtime_error(what), category_(category), kind_(kind) {}

}  // namespace frost
