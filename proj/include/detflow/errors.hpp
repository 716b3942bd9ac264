#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace detflow {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ShapeMismatch : Error {
  using Error::Error;
};

struct IndexOutOfRange : Error {
  using Error::Error;
};

/// Raised when a rational function is evaluated where its denominator is
/// numerically zero, |den| < 1e-12 (1 + |num|).
struct DenominatorVanishes : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(std::string message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        message_(std::move(message)),
        position_(position) {}
  const std::string& message() const { return message_; }
  std::size_t position() const { return position_; }

 private:
  std::string message_;
  std::size_t position_;
};

struct NotReducedWord : Error {
  using Error::Error;
};

struct SizeGuard : Error {
  using Error::Error;
};

struct CommutativityFailure : Error {
  using Error::Error;
};

struct InvalidChain : Error {
  using Error::Error;
};

struct OnSingularLocus : Error {
  using Error::Error;
};

struct NoConvergence : Error {
  using Error::Error;
};

struct SingularityApproached : Error {
  SingularityApproached(const std::string& what, std::complex<double> last_good_t)
      : Error(what), last_good_t_(last_good_t) {}
  std::complex<double> last_good_t() const { return last_good_t_; }

 private:
  std::complex<double> last_good_t_;
};

}  // namespace detflow
