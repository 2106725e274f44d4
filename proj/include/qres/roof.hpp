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

// Convex roofs over sampled decompositions, majorization, and the
// strong-monotonicity fuzz harness for pure-state functionals.

#pragma once

#include "qres/channels.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qres {

/// Pure-state decomposition {p_i, psi_i}.
struct Ensemble {
  std::vector<double> probabilities;
  std::vector<PureState> members;
};

/// Max entrywise |sum_i p_i |psi_i><psi_i| - rho|.
double reconstruction_error(const Ensemble& e, const State& s);

/// The union {p q_i, (1-p) r_j} of two ensembles.
Ensemble mix_ensembles(double p, const Ensemble& a, const Ensemble& b);

enum class Concavity { kLinear, kConcave };

struct PureFunctional {
  std::string name;
  Concavity concavity = Concavity::kConcave;
  std::function<double(const PureState&)> evaluate;
};

/// Shannon entropy (bits) of |amplitudes|^2; the relative entropy of
/// coherence restricted to pure states.
PureFunctional rel_entropy_functional();

/// Superradiant quantity reachable by an incoherent embedding: the state is
/// flattened, its phases removed, and level i is mapped to the
/// single-excitation string e_i on d qubits.
PureFunctional superradiance_embedding_functional();

/// 1 when at least two amplitudes are nonzero, else 0.
PureFunctional trivial_coherence_functional();

double ensemble_value(const Ensemble& e, const PureFunctional& f);

/// Eigen-decomposition of s as an ensemble.
Ensemble eigen_ensemble(const State& s);

/// `count` decompositions built by mixing the eigen-decomposition through
/// Haar isometries of shape rank_extension x rank. Sample i draws from
/// stream(seed, i). Rank-1 inputs return the single trivial ensemble.
std::vector<Ensemble> sample_decompositions(const State& s, std::size_t count,
                                            std::size_t rank_extension, std::uint64_t seed);

struct RoofOptions {
  std::size_t samples = 500;
  std::size_t rank_extension = 0;  // 0 means rank + 2
  std::uint64_t seed = 0;
};

/// min over {eigen_ensemble(s)} and the sampled decompositions of
/// sum_i p_i f(psi_i). An upper bound on the convex roof.
double convex_roof_upper(const State& s, const PureFunctional& f, const RoofOptions& opts = {});

/// Same minimum over an explicit pool of ensembles.
double convex_roof_upper(const std::vector<Ensemble>& pool, const PureFunctional& f);

/// True when every descending partial sum of q is >= the one of r, up to
/// 1e-12. Inputs are zero-padded to a common length.
bool majorizes(const std::vector<double>& q, const std::vector<double>& r);

/// Pure-state incoherent convertibility: |dst|^2 majorizes |src|^2.
bool incoherent_transformable(const PureState& src, const PureState& dst);
bool incoherent_transformable(const std::vector<double>& src_probs,
                              const std::vector<double>& dst_probs);

/// |amplitudes|^2 of Dicke(m, k) restricted to its support: C(m, k) equal
/// entries. Requires C(m, k) <= 2^26.
std::vector<double> dicke_distribution(std::size_t m, std::size_t k);

/// |amplitudes|^2 of (|0> + |1>)^{(x) q} / 2^{q/2}. Requires q <= 26.
std::vector<double> coherent_qubits_distribution(std::size_t q);

/// Exact binomial coefficient; requires n <= 64.
std::uint64_t binomial_exact(std::size_t n, std::size_t k);

/// Largest integer q with 2^q <= C(m, k), computed in integer arithmetic.
std::size_t max_coherent_qubits(std::size_t m, std::size_t k);

struct FuzzViolation {
  std::size_t seed_index = 0;
  PureState psi;
  std::vector<Matrix> kraus;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct FuzzReport {
  std::string strategy;
  std::size_t trials = 0;
  double tolerance = 1e-6;
  std::uint64_t seed = 0;
  std::vector<FuzzViolation> violations;
};

struct FuzzOptions {
  std::size_t trials = 500;
  std::vector<Dims> dims = {{2}, {3}};  // cycled over trials
  std::uint64_t seed = 0;
  std::size_t max_ops = 3;
  double tolerance = 1e-6;
};

/// Strong-monotonicity check: for random pure psi and random incoherent
/// Kraus sets, sum_j q_j f(K_j psi / sqrt(q_j)) <= f(psi) + tolerance.
FuzzReport monotonicity_fuzz(const PureFunctional& f, const FuzzOptions& opts = {});

}  // namespace qres
