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

// Constructive protocols: incoherent Heisenberg-limited metrology, the
// coherence interconversion recipes, the GHZ/Dicke trade-off sweep and the
// Dicke-state lower-bound comparison.

#pragma once

#include "qres/channels.hpp"
#include "qres/measures.hpp"

#include <functional>
#include <string>
#include <vector>

namespace qres {

// Metrology ------------------------------------------------------------------------

enum class Lemma1Path {
  kAuto,     // two-term formula when the probe has two amplitudes, else dense
  kDense,    // full simulation of every channel in the pipeline
  kTwoTerm,  // exact two-dimensional dynamics, any number of sites
};

struct MetrologyRun {
  std::size_t n_spins = 0;
  std::vector<double> phi_per_site;
  double phi = 0.0;
  double tau = 0.0;
  double lambda1 = 0.0;  // two largest probabilities after sorting
  double lambda2 = 0.0;
  double mean_M = 0.0;
  double second_M = 0.0;
  double var_M = 0.0;
  double dmean_dtau = 0.0;
  /// var_M / |d<M>/dtau|^2; +infinity when the slope vanishes.
  double precision = 0.0;
  Lemma1Path path = Lemma1Path::kAuto;
};

/// Largest Hilbert-space dimension the dense path will simulate.
inline constexpr std::size_t kLemma1DenseCap = 729;

/// Runs the incoherent metrology pipeline on a single d-level probe:
/// phase removal, descending sort, fan-out onto the sites of `h` (one site
/// per term, each of dimension d), per-site relabeling so that levels 0 and 1
/// sit on the largest and smallest eigenvalues of h^(j), evolution for time
/// tau and the parity measurement. Terms of `h` must be diagonal.
/// Throws NoCoherenceError for probes with fewer than two amplitudes.
MetrologyRun lemma1_run(const PureState& probe, const LocalHamiltonian& h, double tau,
                        Lemma1Path path = Lemma1Path::kAuto);

/// lemma1_run at the tau maximizing |d<M>/dtau| over a 64-point grid on one
/// period 2 pi / phi.
MetrologyRun lemma1_run_optimal(const PureState& probe, const LocalHamiltonian& h,
                                Lemma1Path path = Lemma1Path::kAuto);

/// (sqrt(l1) + sqrt(l2))^2 / (2 phi^2).
double lemma1_quoted_precision(double lambda1, double lambda2, double phi);

/// (l1 + l2) / (4 l1 l2 phi^2): the error-propagation value at phi tau = pi/2.
double lemma1_parity_precision(double lambda1, double lambda2, double phi);

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<MetrologyRun> runs;
};

/// Least-squares slope of log(1/precision) against log N with collective
/// sigma_z (unit gap per site) on each N in n_list; two-term path.
ScalingFit lemma1_scaling(const PureState& probe_qubit, const std::vector<std::size_t>& n_list);

// Interconversion ---------------------------------------------------------------

struct Conversion {
  State state;
  double value = 0.0;
  /// False when the input carries no coherence (|rho_01| <= 1e-9).
  bool converted = false;
  std::string quantity;
};

/// Phase removal, then CNOT onto an ancilla in |1>. value = S = 2|rho_01|.
Conversion coherence_to_superradiance(const State& qubit);

/// Phase removal, then CNOT onto an ancilla in |0>. value is the entanglement
/// entropy for pure inputs and the negativity for mixed ones.
Conversion coherence_to_entanglement(const State& qubit);

/// qfi(rho, sigma_z / 2) after the identity operation.
double coherence_to_qfi(const State& qubit);

// Trade-off sweep -------------------------------------------------------------------

struct SweepPoint {
  double p = 0.0;
  double F = 0.0;  // qfi / 4
  double S = 0.0;
  double mu = 0.0;
  double bound = 0.0;
};

/// Evenly spaced grid on [0, 1]; steps == 1 gives {0}.
std::vector<double> unit_grid(std::size_t steps);

/// rho_p = (1 - p) GHZ + p |N, N/2><N, N/2| on the symmetric subspace.
/// Throws InvariantError if S + F exceeds the bound by more than 1e-8.
std::vector<SweepPoint> tradeoff_sweep(std::size_t n_spins, const std::vector<double>& p_grid);

// Dicke comparison ------------------------------------------------------------------

/// Lower-bound strategy for the Fisher-information resource of Dicke(m, k).
struct FisherStrategy {
  std::string name;
  std::function<double(std::size_t m, std::size_t k)> value;
};

/// Dicke(m, k) -> m_k maximally coherent qubits by majorization, then each of
/// min(m_k, max_parts) qubits is fanned out into a GHZ probe of
/// `probe_spins` spins. Value: min(m_k, max_parts) * QFI(GHZ). max_parts == 0
/// means m.
FisherStrategy ghz_fanout_strategy(std::size_t probe_spins = 1, std::size_t max_parts = 0);

struct DickeRow {
  std::size_t k = 0;
  std::size_t m_k = 0;
  double c_s = 0.0;
  double c_f = 0.0;
  double c_r = 0.0;
  double c_s_norm = 0.0;
  double c_f_norm = 0.0;
  double c_r_norm = 0.0;
};

struct DickeTable {
  std::size_t m = 0;
  std::size_t anchor_k = 0;
  std::string strategy;
  std::vector<DickeRow> rows;
};

/// Rows for every k in k_range; normalized columns divide by the anchor row.
/// Requires m <= 64 and anchor_k in k_range with nonzero anchor values.
DickeTable dicke_comparison(std::size_t m, const std::vector<std::size_t>& k_range,
                            std::size_t anchor_k,
                            const FisherStrategy& strategy = ghz_fanout_strategy());

}  // namespace qres
