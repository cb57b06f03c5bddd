#ifndef RANKJUMP_ERROR_HPP
#define RANKJUMP_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace rankjump {

enum class ErrorKind {
  InvalidArgument,  // precondition violation
  ZeroInput,
  UnitClass,
  PoleAtPoint,
  WrongDegree,
  NotMonic,
  SingularCurve,
  PointNotOnCurve,
  ToleranceUnreachable,
  EmptyInput,
  BadReduction,
  DegenerateFiber,
  NotOnTotalSpace,
  LineAtInfinity,
  SearchExhausted,
  WrongFamilyKind,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; callers switch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rankjump

#endif  // RANKJUMP_ERROR_HPP
