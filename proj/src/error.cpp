#include "rankjump/error.hpp"

namespace rankjump {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::UnitClass: return "UnitClass";
    case ErrorKind::PoleAtPoint: return "PoleAtPoint";
    case ErrorKind::WrongDegree: return "WrongDegree";
    case ErrorKind::NotMonic: return "NotMonic";
    case ErrorKind::SingularCurve: return "SingularCurve";
    case ErrorKind::PointNotOnCurve: return "PointNotOnCurve";
    case ErrorKind::ToleranceUnreachable: return "ToleranceUnreachable";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::BadReduction: return "BadReduction";
    case ErrorKind::DegenerateFiber: return "DegenerateFiber";
    case ErrorKind::NotOnTotalSpace: return "NotOnTotalSpace";
    case ErrorKind::LineAtInfinity: return "LineAtInfinity";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::WrongFamilyKind: return "WrongFamilyKind";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace rankjump
