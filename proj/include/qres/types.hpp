// Copyright 2026 The qres Authors
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

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qres {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Ordered local dimensions of a tensor-product space.
using Dims = std::vector<std::size_t>;

namespace tol {
inline constexpr double kHermitian = 1e-9;
inline constexpr double kTrace = 1e-9;
inline constexpr double kNegativeEigen = 1e-9;
inline constexpr double kNorm = 1e-9;
inline constexpr double kCompleteness = 1e-9;
inline constexpr double kNonzero = 1e-12;
inline constexpr double kQfiPairCutoff = 1e-12;
inline constexpr double kSymmetricLeak = 1e-8;
inline constexpr double kMajorization = 1e-12;
}  // namespace tol

/// Largest qubit count for which full 2^N dense objects are built.
inline constexpr std::size_t kDenseQubitCap = 12;

/// Base of all recoverable library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape or index mismatch between arguments.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A numeric invariant (trace, PSD, normalization, completeness) failed.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// The input carries no coherence where the operation needs some.
class NoCoherenceError : public Error {
 public:
  using Error::Error;
};

std::size_t product(const Dims& dims);

/// Mixed-radix digits of `index`; subsystem 0 is the most significant digit.
std::vector<std::size_t> digits_of(std::size_t index, const Dims& dims);
std::size_t index_of(const std::vector<std::size_t>& digits, const Dims& dims);

}  // namespace qres
