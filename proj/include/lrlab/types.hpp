#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace lrlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user input: malformed configuration, bad parameters, bad paths.
/// The CLI maps these to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A requested computation exceeds a fixed resource cap (Hilbert dimension,
/// enumeration depth, series order).
class CapacityError : public Error {
 public:
  using Error::Error;
};

}  // namespace lrlab
