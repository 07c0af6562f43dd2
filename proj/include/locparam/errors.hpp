#pragma once

#include <stdexcept>
#include <string>

namespace locparam {

struct Error : std::runtime_error {
  explicit Error(const std::string& w) : std::runtime_error(w) {}
};

struct AmbientMismatch : Error {
  explicit AmbientMismatch(const std::string& w = "ambient mismatch") : Error(w) {}
};
struct DivisionByZero : Error {
  explicit DivisionByZero(const std::string& w = "division by zero") : Error(w) {}
};
struct NotInvertible : Error {
  explicit NotInvertible(const std::string& w = "matrix not invertible") : Error(w) {}
};
struct InvalidParameter : Error {
  explicit InvalidParameter(const std::string& w = "invalid parameter") : Error(w) {}
};
struct WrongKind : Error {
  explicit WrongKind(const std::string& w = "wrong group kind") : Error(w) {}
};
struct UnsupportedGroup : Error {
  explicit UnsupportedGroup(const std::string& w = "unsupported group") : Error(w) {}
};
struct BadCharacteristic : Error {
  explicit BadCharacteristic(const std::string& w = "characteristic divides q") : Error(w) {}
};
struct PointNotOnScheme : Error {
  explicit PointNotOnScheme(const std::string& w = "point does not satisfy the ideal") : Error(w) {}
};
struct ResolutionTooLong : Error {
  explicit ResolutionTooLong(const std::string& w = "free resolution exceeded step bound") : Error(w) {}
};
struct BudgetExceeded : Error {
  explicit BudgetExceeded(const std::string& w = "search budget exceeded") : Error(w) {}
};
struct ParseError : Error {
  explicit ParseError(const std::string& w = "parse error") : Error(w) {}
};

}  // namespace locparam
