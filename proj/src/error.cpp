#include "jplus/error.hpp"

namespace jplus {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::DuplicatePoint: return "DuplicatePoint";
    case ErrorKind::InconsistentCurve: return "InconsistentCurve";
    case ErrorKind::EmptyCurve: return "EmptyCurve";
    case ErrorKind::OpenFaceTrace: return "OpenFaceTrace";
    case ErrorKind::GenusMismatch: return "GenusMismatch";
    case ErrorKind::MissingBasepoint: return "MissingBasepoint";
    case ErrorKind::InvalidRegionSpec: return "InvalidRegionSpec";
    case ErrorKind::InvalidArcBasis: return "InvalidArcBasis";
    case ErrorKind::UnknownCurve: return "UnknownCurve";
    case ErrorKind::UnsupportedPage: return "UnsupportedPage";
    case ErrorKind::InvalidMonodromy: return "InvalidMonodromy";
    case ErrorKind::NonIntegerIndex: return "NonIntegerIndex";
    case ErrorKind::FormulaMismatch: return "FormulaMismatch";
    case ErrorKind::NotNice: return "NotNice";
    case ErrorKind::OddJPlus: return "OddJPlus";
    case ErrorKind::NoProvenance: return "NoProvenance";
    case ErrorKind::DifferentialNotSquareZero: return "DifferentialNotSquareZero";
    case ErrorKind::LeibnizViolation: return "LeibnizViolation";
    case ErrorKind::NotACycle: return "NotACycle";
    case ErrorKind::StabilizationFailed: return "StabilizationFailed";
    case ErrorKind::Io: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace jplus
