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

// Incoherent operations: Kraus sets, the column certificate, canonical
// incoherent unitaries, and the parity POVM used by the metrology protocol.

#pragma once

#include "qres/random.hpp"
#include "qres/states.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace qres {

/// Completeness-checked Kraus set. Operators may be rectangular
/// (rows = prod(output_dims), cols = prod(input_dims)).
class KrausChannel {
 public:
  KrausChannel(std::vector<Matrix> kraus_ops, Dims input_dims, Dims output_dims);

  /// Single-operator channel for a unitary (checked).
  static KrausChannel unitary(Matrix u, Dims dims);

  const std::vector<Matrix>& kraus_ops() const { return ops_; }
  const Dims& input_dims() const { return in_; }
  const Dims& output_dims() const { return out_; }
  std::size_t input_dim() const { return product(in_); }
  std::size_t output_dim() const { return product(out_); }

 private:
  std::vector<Matrix> ops_;
  Dims in_;
  Dims out_;
};

/// Violating (Kraus operator, column) pair for the column criterion.
struct IncoherenceWitness {
  std::size_t op = 0;
  std::size_t column = 0;
};

struct IncoherenceReport {
  bool incoherent = false;
  std::optional<IncoherenceWitness> witness;
  /// Largest off-diagonal modulus seen in the randomized confirmation.
  double max_offdiagonal = 0.0;
};

/// Column criterion: every Kraus operator has at most one entry with
/// modulus > 1e-12 per column. When it holds, 20 random diagonal inputs are
/// pushed through the channel and the outputs must stay diagonal.
IncoherenceReport is_incoherent(const KrausChannel& ch);

/// Throws InvariantError unless `ch` passes is_incoherent.
void require_incoherent(const KrausChannel& ch, const char* what);

State apply(const KrausChannel& ch, const State& s);
PureState apply_unitary(const KrausChannel& ch, const PureState& psi);

template <typename T>
struct Outcome {
  double probability;
  T state;
};

/// Selective application: p_n = Tr(K_n rho K_n^dagger), renormalized
/// post-measurement states, outcomes with p_n <= 1e-12 dropped.
std::vector<Outcome<State>> apply_selective(const KrausChannel& ch, const State& s);
std::vector<Outcome<PureState>> apply_selective(const KrausChannel& ch,
                                                const PureState& psi);

/// Generalized CNOT cascade on `copies` d-level sites:
/// |i, a_2, ..., a_n> -> |i, a_2 + i, ..., a_n + i> (mod d), so that
/// |i>|0...0> -> |i...i>.
KrausChannel fanout_unitary(std::size_t levels, std::size_t copies);

/// Diagonal unitary that makes every amplitude of `psi` real and >= 0.
KrausChannel phase_removal_unitary(const PureState& psi);

/// Basis permutation |x> -> |perm[x]> on `dims`.
KrausChannel permutation_unitary(const std::vector<std::size_t>& perm, Dims dims);

struct Flattening {
  KrausChannel channel;
  /// labels[k] = product-basis digits of flattened level k.
  std::vector<std::vector<std::size_t>> labels;
};

/// Identifies the product basis of `dims` with the levels of a single
/// prod(dims)-level system.
Flattening flatten_unitary(const Dims& dims);

/// Real-valued measurement. Effect k is factors[k] * factors[k]^dagger, so
/// every effect is PSD by construction; values[k] is its outcome value.
struct Povm {
  std::vector<Matrix> factors;
  std::vector<double> values;
  Dims dims;

  std::size_t size() const { return factors.size(); }
  Matrix effect(std::size_t k) const { return factors[k] * factors[k].adjoint(); }
};

/// Checks shapes and that the effects sum to the identity within 1e-9.
void validate_povm(const Povm& povm);

/// Outcome probabilities, one per effect.
std::vector<double> outcome_probabilities(const Povm& povm, const PureState& psi);

/// Expectation and second moment of the outcome value.
struct PovmMoments {
  double mean = 0.0;
  double second = 0.0;
  double variance() const { return std::max(0.0, second - mean * mean); }
};

PovmMoments measure(const Povm& povm, const PureState& psi);
PovmMoments measure(const Povm& povm, const State& s);

/// Levels used by the parity measurement on each site.
struct LevelPair {
  std::size_t upper = 0;  // "1" in |1...1>
  std::size_t lower = 1;  // "2" in |2...2>
};

/// Parity measurement on n sites of dimension `site_dim`. The reference
/// basis (columns) must be orthonormal with first column
/// (|1...1> + |2...2>)/sqrt(2); when empty a default completion is used.
///
/// Effects: for every parity string c, Q P_c Q with value pi(c), where Q
/// projects on span{|1...1>, |2...2>} and P_c is the product x-basis
/// projector on the two addressed levels; and for every remaining basis
/// vector a_i (i >= 2), (1 - Q)|a_i><a_i|(1 - Q) with value 0.
Povm lemma1_povm(std::size_t n_sites, std::size_t site_dim,
                 const std::vector<LevelPair>& levels,
                 const Matrix& reference_basis = Matrix());

/// Random incoherent channel with `n_ops` sampled operators plus the
/// rank-one incoherent completion needed for trace preservation.
KrausChannel random_incoherent_channel(const Dims& input_dims, const Dims& output_dims,
                                       std::size_t n_ops, Rng& rng);

}  // namespace qres
