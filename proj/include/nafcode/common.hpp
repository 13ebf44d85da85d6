// Copyright 2026 The nafcode Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NAFCODE_COMMON_HPP
#define NAFCODE_COMMON_HPP

#include <charconv>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace nafcode {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Base of every error thrown by the library. The C API maps each subclass
/// onto a distinct status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed its configured budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Broken internal invariant (e.g. a covariance that is not positive definite).
class InternalError : public Error {
 public:
  using Error::Error;
};

/// Shortest decimal text that reads back to the same double.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace nafcode

#endif  // NAFCODE_COMMON_HPP
