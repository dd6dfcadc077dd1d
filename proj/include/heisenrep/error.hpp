#pragma once

#include <stdexcept>
#include <string>

namespace heisenrep {

// Base of every error raised by the library. `kind()` is a stable
// machine-readable name used in CLI reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define HEISENREP_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& what) : Error(#Name, what) {}     \
  };

HEISENREP_DEFINE_ERROR(ConfigError)
HEISENREP_DEFINE_ERROR(NonInvertible)
HEISENREP_DEFINE_ERROR(BudgetExceeded)
HEISENREP_DEFINE_ERROR(SubspaceMismatch)
HEISENREP_DEFINE_ERROR(NotUnitNorm)
HEISENREP_DEFINE_ERROR(ZeroScale)
HEISENREP_DEFINE_ERROR(NotOnCircle)
HEISENREP_DEFINE_ERROR(NoNullVector)
HEISENREP_DEFINE_ERROR(IndexOutOfRange)

#undef HEISENREP_DEFINE_ERROR

}  // namespace heisenrep
