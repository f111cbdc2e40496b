#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace jplus {

enum class ErrorKind {
  Parse,
  DuplicatePoint,
  InconsistentCurve,
  EmptyCurve,
  OpenFaceTrace,
  GenusMismatch,
  MissingBasepoint,
  InvalidRegionSpec,
  InvalidArcBasis,
  UnknownCurve,
  UnsupportedPage,
  InvalidMonodromy,
  NonIntegerIndex,
  FormulaMismatch,
  NotNice,
  OddJPlus,
  NoProvenance,
  DifferentialNotSquareZero,
  LeibnizViolation,
  NotACycle,
  StabilizationFailed,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Every library failure is reported through this type; `kind()` is the
/// machine-readable part and drives the CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace jplus
