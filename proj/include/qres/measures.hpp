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

// Closed-form resource quantifiers.
//
// Conventions: hbar = 1, entropies in bits, and the single-qubit sigma_z is
// diag(-1/2, +1/2) on (|0>, |1>) so that sum_i sigma_z^(i) has eigenvalue
// m - N/2 on the m-excitation sector. With this convention the GHZ state
// has QFI N^2 for the collective generator.

#pragma once

#include "qres/states.hpp"

#include <optional>
#include <vector>

namespace qres {

/// H = sum_i h^(i) with each h^(i) acting on site i only.
class LocalHamiltonian {
 public:
  /// Each term must be Hermitian and not proportional to the identity.
  explicit LocalHamiltonian(std::vector<Matrix> terms);

  std::size_t n_sites() const { return terms_.size(); }
  const std::vector<Matrix>& terms() const { return terms_; }
  const Dims& dims() const { return dims_; }
  std::size_t dim() const { return product(dims_); }

  /// H * V for a block of column vectors on the full space.
  Matrix apply(const Matrix& v) const;

  /// Dense matrix on the full space.
  Operator to_operator() const;

  /// lambda_max(h^(j)) - lambda_min(h^(j))
  double site_gap(std::size_t j) const;

  /// True when every term is diagonal in the computational basis.
  bool is_diagonal() const;

 private:
  std::vector<Matrix> terms_;
  Dims dims_;
};

/// Ground/excited levels addressed on every site.
struct Transition {
  std::size_t ground = 0;
  std::size_t excited = 1;
};

/// diag(-1/2, +1/2)
Matrix sigma_z_half();

/// sum_i sigma_z^(i) on n qubits.
LocalHamiltonian collective_sz(std::size_t n);

/// Projector onto the m-excitation sector of n qubits.
Operator excitation_projector(std::size_t n, std::size_t m);

// Quantum Fisher information ----------------------------------------------

/// 2 sum_{ij} (l_i - l_j)^2 / (l_i + l_j) |<i|H|j>|^2 over the eigenbasis of
/// rho, skipping pairs with l_i + l_j <= 1e-12. The kernel of rho is
/// handled in closed form, so only the support eigenvectors are needed.
double qfi(const State& s, const Operator& h);
double qfi(const State& s, const LocalHamiltonian& h);
/// Pure-state path: 4 Var(H).
double qfi(const PureState& psi, const Operator& h);
double qfi(const PureState& psi, const LocalHamiltonian& h);
/// QFI with respect to sum_i sigma_z^(i) = J_z on the symmetric subspace.
double qfi(const SymmetricState& s);

double variance(const State& s, const Operator& h);
double variance(const State& s, const LocalHamiltonian& h);
double variance(const PureState& psi, const Operator& h);
double variance(const PureState& psi, const LocalHamiltonian& h);
double variance(const SymmetricState& s);

/// Cramer-Rao limit 1 / sqrt(nu F). Empty when F vanishes (no bound).
std::optional<double> precision_bound(double fisher, std::size_t nu);

// Superradiance -------------------------------------------------------------

/// sum_{i != j} <D_+^(i) D_-^(j)>, D_+ = |e><g|. Needs at least two sites.
double superradiant_quantity(const State& s, Transition t = {});
double superradiant_quantity(const PureState& psi, Transition t = {});
/// Symmetric path: <J_+ J_-> - <number of excitations>.
double superradiant_quantity(const SymmetricState& s);

/// sum_i <D_+^(i) D_-^(i)>
double single_emission_sum(const State& s, Transition t = {});
double single_emission_sum(const SymmetricState& s);

// Excitation statistics -------------------------------------------------------

/// mu = sum_m m Tr(rho Pi_m)
double mean_excitation(const State& s, Transition t = {});
double mean_excitation(const PureState& psi, Transition t = {});
double mean_excitation(const SymmetricState& s);

/// mu (N - mu) for N qubit sites.
double tradeoff_bound(const State& s);
double tradeoff_bound(const SymmetricState& s);

// Entropies and coherence ---------------------------------------------------

/// Shannon entropy in bits; zero entries are skipped.
double shannon_entropy(const std::vector<double>& p);
double von_neumann_entropy(const State& s);

/// S(rho_diag) - S(rho), in bits, clipped at zero.
double rel_entropy_coherence(const State& s);
double rel_entropy_coherence(const PureState& psi);

/// Entropy (bits) of the reduced state on subsystems `side_a`.
double entanglement_entropy(const PureState& psi,
                            const std::vector<std::size_t>& side_a);

}  // namespace qres
