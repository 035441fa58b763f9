#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hfinsler {

enum class ErrorCode {
  InvalidParameter,
  NotUnitReference,
  DegenerateReference,
  CentralReference,
  RiemannianCase,
  SingularMetric,
  SingularBasis,
  NotOrthonormalBasis,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every precondition failure in the library is reported through this type.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hfinsler
