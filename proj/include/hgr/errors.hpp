#pragma once

#include <stdexcept>
#include <string>

namespace hgr {

/// Base of every error raised by the library. `kind()` is a stable tag used in
/// reports and CLI diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define HGR_DECLARE_ERROR(Name)                                   \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  }

HGR_DECLARE_ERROR(FormatError);
HGR_DECLARE_ERROR(InvalidGraph);
HGR_DECLARE_ERROR(InfeasibleTarget);
HGR_DECLARE_ERROR(NonIntegral);
HGR_DECLARE_ERROR(HostTooSmall);
HGR_DECLARE_ERROR(DegreeViolation);
HGR_DECLARE_ERROR(InvalidParams);
HGR_DECLARE_ERROR(RetryExhausted);
HGR_DECLARE_ERROR(ConvergenceFailure);
HGR_DECLARE_ERROR(SizeExceeded);
HGR_DECLARE_ERROR(DomainError);
HGR_DECLARE_ERROR(GirthTooSmall);
HGR_DECLARE_ERROR(PreconditionViolated);
HGR_DECLARE_ERROR(BudgetExceeded);
HGR_DECLARE_ERROR(Overflow);
HGR_DECLARE_ERROR(DegenerateDegree);
HGR_DECLARE_ERROR(ConfigError);

#undef HGR_DECLARE_ERROR

}  // namespace hgr
