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

// States in a fixed incoherent (computational product) basis.
//
// Three representations are provided:
//   - PureState: amplitude vector on the full tensor-product space.
//   - State: density operator on the full space, kept together with its
//     support spectrum so that rank-deficient quantities stay exact.
//   - SymmetricState: density operator of N qubits restricted to the
//     (N+1)-dimensional Dicke subspace, indexed by excitation count m.
//
// All types are immutable after construction.

#pragma once

#include "qres/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qres {

/// Square complex matrix with a declared tensor factorization.
class Operator {
 public:
  Operator(Matrix entries, Dims subsystem_dims);

  const Matrix& matrix() const { return entries_; }
  const Dims& dims() const { return dims_; }
  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }

  /// max |A - A^dagger| <= tol
  bool is_hermitian(double tol = tol::kHermitian) const;

 private:
  Matrix entries_;
  Dims dims_;
};

class PureState {
 public:
  PureState(Vector amplitudes, Dims subsystem_dims);

  const Vector& amplitudes() const { return amps_; }
  const Dims& dims() const { return dims_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }

  /// |amplitude|^2 per basis index.
  std::vector<double> probabilities() const;

  /// Number of amplitudes with modulus above `threshold`.
  std::size_t support_size(double threshold = tol::kNonzero) const;

 private:
  Vector amps_;
  Dims dims_;
};

/// Support eigenpairs of a density operator. Columns of `vectors` are
/// orthonormal; every stored eigenvalue is strictly positive.
struct Spectrum {
  RealVector values;
  Matrix vectors;
};

class State {
 public:
  /// Validates hermiticity, trace and positivity. Eigenvalues in
  /// [-1e-9, 0) are clipped and the operator renormalized; anything more
  /// negative is an InvariantError.
  State(Matrix rho, Dims subsystem_dims,
        std::vector<std::vector<std::string>> basis_labels = {});

  static State from_pure(const PureState& psi);

  /// Builds sum_k w_k |v_k><v_k| from orthonormal columns `vectors`.
  static State from_spectrum(const RealVector& weights, const Matrix& vectors,
                             Dims subsystem_dims);

  const Matrix& rho() const { return rho_; }
  const Dims& dims() const { return dims_; }
  std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }
  const Spectrum& spectrum() const { return spectrum_; }
  std::size_t rank() const {
    return static_cast<std::size_t>(spectrum_.values.size());
  }
  const std::vector<std::vector<std::string>>& basis_labels() const {
    return labels_;
  }

 private:
  State() = default;

  Matrix rho_;
  Dims dims_;
  Spectrum spectrum_;
  std::vector<std::vector<std::string>> labels_;
};

/// N-qubit density operator supported on the permutation-symmetric
/// subspace. Entry (m, m') is <N,m|rho|N,m'> with m the excitation count.
class SymmetricState {
 public:
  SymmetricState(std::size_t n_spins, Matrix rho_sym);

  std::size_t n_spins() const { return n_; }
  const Matrix& rho() const { return rho_; }
  const Spectrum& spectrum() const { return spectrum_; }

  /// Populations p_m = Tr(rho Pi_m).
  std::vector<double> excitation_distribution() const;

 private:
  std::size_t n_;
  Matrix rho_;
  Spectrum spectrum_;
};

/// C(n, k) in double precision; exact for the ranges used here.
double binomial(std::size_t n, std::size_t k);

// Constructors -------------------------------------------------------------

/// m-qubit Dicke state with k excitations on the full 2^m space.
PureState make_dicke(std::size_t m, std::size_t k);

/// Dicke state |m,k> as a basis vector of the symmetric subspace (no cap).
SymmetricState make_dicke_symmetric(std::size_t m, std::size_t k);

PureState make_ghz(std::size_t n);
SymmetricState make_ghz_symmetric(std::size_t n);

/// Computational basis string; `digits[i]` is the level of subsystem i.
PureState make_basis_state(const std::vector<std::size_t>& digits,
                           const Dims& dims);

PureState tensor(const PureState& a, const PureState& b);
State tensor(const State& a, const State& b);

/// Incoherent part of rho: the diagonal in the product basis.
State dephase(const State& s);

// Manipulation -------------------------------------------------------------

/// Trace out every subsystem not listed in `keep`. Kept subsystems appear
/// in ascending index order.
State partial_trace(const State& s, const std::vector<std::size_t>& keep);

/// Isometry whose columns are |N,m>, m = 0..N, in the 2^N product basis.
Matrix dicke_isometry(std::size_t n_spins);

/// Restriction to the symmetric subspace. Throws InvariantError reporting
/// the leaked weight when more than 1e-8 of the trace lies outside it.
SymmetricState to_symmetric(const State& s);

/// Embeds a symmetric state back into the full 2^N space (N <= dense cap).
State from_symmetric(const SymmetricState& s);

}  // namespace qres
