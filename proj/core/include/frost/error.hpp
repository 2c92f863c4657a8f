#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace frost {

// Coarse failure classes. The CLI maps these onto its exit codes.
enum class ErrorCategory { usage, backend, fit };

std::string_view to_string(ErrorCategory category);

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, std::string_view kind, const std::string& what);

  ErrorCategory category() const noexcept { return category_; }
  // Short machine-readable name, e.g. "BackendUnavailable".
  const std::string& kind() const noexcept { return kind_; }

 private:
  ErrorCategory category_;
  std::string kind_;
};

#define FROST_DECLARE_ERROR(Name, Category)                         \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& what)                          \
        : Error(ErrorCategory::Category, #Name, what) {}            \
  }

FROST_DECLARE_ERROR(InvalidArgument, usage);
FROST_DECLARE_ERROR(ConfigError, usage);
FROST_DECLARE_ERROR(UnknownArchetype, usage);
FROST_DECLARE_ERROR(UnknownFormat, usage);

FROST_DECLARE_ERROR(BackendUnavailable, backend);
FROST_DECLARE_ERROR(ActuationFailed, backend);
FROST_DECLARE_ERROR(AlreadyRunning, backend);
FROST_DECLARE_ERROR(NotIntegrable, backend);
FROST_DECLARE_ERROR(MissingDomain, backend);

FROST_DECLARE_ERROR(EmptyPointSet, fit);
FROST_DECLARE_ERROR(NotConverged, fit);
FROST_DECLARE_ERROR(InsufficientPoints, fit);
FROST_DECLARE_ERROR(DegenerateVariance, fit);

#undef FROST_DECLARE_ERROR

}  // namespace frost
