#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace cauchylens {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// Error taxonomy.  The CLI maps these onto exit codes:
//   ConfigError -> 2, DataError -> 3, NumericalError -> 4.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : Error {
  using Error::Error;
};
struct DataError : Error {
  using Error::Error;
};
struct NumericalError : Error {
  using Error::Error;
};

// Domain construction.
struct DomainValidationError : ConfigError {
  using ConfigError::ConfigError;
};
struct GammaThroughOrigin : DomainValidationError {
  GammaThroughOrigin() : DomainValidationError("interface curve passes through the expansion center 0") {}
};
struct TestBallCollision : DomainValidationError {
  explicit TestBallCollision(const std::string& w) : DomainValidationError(w) {}
};
struct DegenerateChord : DomainValidationError {
  explicit DegenerateChord(const std::string& w) : DomainValidationError(w) {}
};

// Quadrature / geometry queries.
struct UnknownPart : ConfigError {
  explicit UnknownPart(const std::string& w) : ConfigError(w) {}
};

// Basis construction.
struct GramNotPositive : NumericalError {
  explicit GramNotPositive(const std::string& w) : NumericalError(w) {}
};
struct BasisTooSmall : ConfigError {
  explicit BasisTooSmall(const std::string& w) : ConfigError(w) {}
};

// Kernel / potential evaluation.
struct SingularEvaluation : NumericalError {
  explicit SingularEvaluation(const std::string& w) : NumericalError(w) {}
};
struct NearBoundaryEvaluation : NumericalError {
  explicit NearBoundaryEvaluation(const std::string& w) : NumericalError(w) {}
};
struct QuadratureMismatch : DataError {
  explicit QuadratureMismatch(const std::string& w) : DataError(w) {}
};

// Solver.
struct TooFewTerms : ConfigError {
  explicit TooFewTerms(const std::string& w) : ConfigError(w) {}
};
struct PointOutsideD : DataError {
  explicit PointOutsideD(const std::string& w) : DataError(w) {}
};

// Classical (second-order) front end.
struct TooFewSamples : DataError {
  explicit TooFewSamples(const std::string& w) : DataError(w) {}
};
struct PathEscapesDomain : NumericalError {
  explicit PathEscapesDomain(const std::string& w) : NumericalError(w) {}
};

// Reference/test support.
struct UnknownCase : ConfigError {
  explicit UnknownCase(const std::string& w) : ConfigError(w) {}
};
struct GridTooCoarse : DataError {
  explicit GridTooCoarse(const std::string& w) : DataError(w) {}
};
struct OddDimension : ConfigError {
  explicit OddDimension(const std::string& w) : ConfigError(w) {}
};

inline double sqr(double x) { return x * x; }

}  // namespace cauchylens
