// Copyright 2026 The sqcqed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace sqcqed {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value violates a documented precondition (bad label, wrong dimension, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Operands built on different Hilbert-space layouts.
class LayoutMismatch : public Error {
 public:
  using Error::Error;
};

/// Parametric pump at or above the oscillation threshold |Omega_p / Delta_c| >= 1.
class ThresholdError : public Error {
 public:
  using Error::Error;
};

/// Adaptive step size fell below the floor; the problem is too stiff for the
/// explicit integrator at the requested tolerances.
class StiffnessError : public Error {
 public:
  StiffnessError(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// The Liouvillian kernel is not one-dimensional.
class DegenerateKernelError : public Error {
 public:
  DegenerateKernelError(const std::string& what, int dimension)
      : Error(what), dimension_(dimension) {}
  /// Kernel dimension, or -1 when only "at least two" is known.
  int dimension() const noexcept { return dimension_; }

 private:
  int dimension_;
};

/// (H_NH - beta) is singular on the excited manifold.
class SingularResolventError : public Error {
 public:
  SingularResolventError(const std::string& what, std::complex<double> eigenvalue)
      : Error(what), eigenvalue_(eigenvalue) {}
  std::complex<double> eigenvalue() const noexcept { return eigenvalue_; }

 private:
  std::complex<double> eigenvalue_;
};

/// Bad run configuration (unknown key, unparsable value, failed precondition).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace sqcqed
