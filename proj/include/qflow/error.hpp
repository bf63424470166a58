#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace qflow {

using cplx = std::complex<double>;

/// Malformed or out-of-domain input.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A field was evaluated exactly at one of its poles.
class PoleError : public std::domain_error {
 public:
  PoleError(const std::string& what, cplx location)
      : std::domain_error(what), location_(location) {}
  cplx location() const noexcept { return location_; }

 private:
  cplx location_;
};

/// A numerical procedure could not reach its accuracy or conditioning target.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qflow
