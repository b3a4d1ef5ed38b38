#pragma once

#include <stdexcept>
#include <string>

namespace nht {

// Error categories map onto CLI exit codes:
//   Input -> 2, Spectral -> 3, Domain -> 4, Convergence -> 5.
enum class ErrorKind { Input, Spectral, Domain, Convergence };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what),
        kind_(kind),
        name_(std::move(name)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& name() const { return name_; }

 private:
  ErrorKind kind_;
  std::string name_;
};

#define NHT_DEFINE_ERROR(Name, Kind)                      \
  class Name : public Error {                             \
   public:                                                \
    explicit Name(const std::string& what)                \
        : Error(ErrorKind::Kind, #Name, what) {}          \
  }

NHT_DEFINE_ERROR(InvalidParameter, Input);
NHT_DEFINE_ERROR(ParseError, Input);
NHT_DEFINE_ERROR(DimensionOverflow, Input);
NHT_DEFINE_ERROR(Overflow, Input);

NHT_DEFINE_ERROR(ComplexSpectrum, Spectral);
NHT_DEFINE_ERROR(DegenerateSpectrum, Spectral);
NHT_DEFINE_ERROR(NotPositiveDefinite, Spectral);
NHT_DEFINE_ERROR(NotDHermitian, Spectral);
NHT_DEFINE_ERROR(IncompatibleObservables, Spectral);

NHT_DEFINE_ERROR(InvalidState, Domain);
NHT_DEFINE_ERROR(TargetOutsideHull, Domain);
NHT_DEFINE_ERROR(TargetOnBoundary, Domain);

NHT_DEFINE_ERROR(ConvergenceFailure, Convergence);
NHT_DEFINE_ERROR(MaxIterations, Convergence);
NHT_DEFINE_ERROR(QuadratureFailure, Convergence);

#undef NHT_DEFINE_ERROR

inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Input: return 2;
    case ErrorKind::Spectral: return 3;
    case ErrorKind::Domain: return 4;
    case ErrorKind::Convergence: return 5;
  }
  return 1;
}

}  // namespace nht
