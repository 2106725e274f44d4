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

#include "qres/protocols.hpp"

#include "qres/parallel.hpp"
#include "qres/roof.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace qres {

namespace {

constexpr std::size_t kTauGrid = 64;
constexpr double kFiniteDifferenceScale = 1e-6;
constexpr double kCoherenceFloor = 1e-9;

struct ProbeInfo {
  std::vector<double> probs;
  std::vector<std::size_t> order;  // indices by descending probability
  std::size_t support = 0;
};

ProbeInfo inspect_probe(const PureState& probe) {
  ProbeInfo info;
  info.probs = probe.probabilities();
  info.order.resize(info.probs.size());
  std::iota(info.order.begin(), info.order.end(), std::size_t{0});
  std::stable_sort(info.order.begin(), info.order.end(),
                   [&](std::size_t a, std::size_t b) { return info.probs[a] > info.probs[b]; });
  info.support = probe.support_size();
  if (info.support < 2) {
    throw NoCoherenceError("probe has a single nonzero amplitude; no coherence to exploit");
  }
  return info;
}

void require_metrology_hamiltonian(const LocalHamiltonian& h, std::size_t d) {
  for (std::size_t j = 0; j < h.n_sites(); ++j) {
    if (h.dims()[j] != d) {
      throw DimensionError("every Hamiltonian term must act on the probe dimension");
    }
  }
  if (!h.is_diagonal()) {
    throw DimensionError("Hamiltonian terms must be diagonal in the incoherent basis");
  }
}

std::vector<double> site_gaps(const LocalHamiltonian& h) {
  std::vector<double> gaps(h.n_sites());
  for (std::size_t j = 0; j < h.n_sites(); ++j) gaps[j] = h.site_gap(j);
  return gaps;
}

// Level permutation for one site: 0 -> argmax, 1 -> argmin, the rest in order.
std::vector<std::size_t> site_relabel(const Matrix& term) {
  const auto d = static_cast<std::size_t>(term.rows());
  std::size_t hi = 0, lo = 0;
  for (std::size_t a = 1; a < d; ++a) {
    const double e = term(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)).real();
    if (e > term(static_cast<Eigen::Index>(hi), static_cast<Eigen::Index>(hi)).real()) hi = a;
    if (e < term(static_cast<Eigen::Index>(lo), static_cast<Eigen::Index>(lo)).real()) lo = a;
  }
  std::vector<std::size_t> sigma{hi, lo};
  for (std::size_t a = 0; a < d; ++a) {
    if (a != hi && a != lo) sigma.push_back(a);
  }
  return sigma;
}

KrausChannel certified(KrausChannel ch, const char* what) {
  require_incoherent(ch, what);
  return ch;
}

// Dense simulation of everything up to the evolution.
struct DensePipeline {
  Vector prepared;
  RealVector energies;
  Povm povm;

  double mean_at(double tau) const {
    Vector v = prepared;
    for (Eigen::Index x = 0; x < v.size(); ++x) v(x) *= std::polar(1.0, -energies(x) * tau);
    return measure(povm, PureState(std::move(v), povm.dims)).mean;
  }
};

DensePipeline build_dense(const PureState& probe, const LocalHamiltonian& h,
                          const ProbeInfo& info) {
  const std::size_t d = probe.dim();
  const std::size_t n = h.n_sites();
  const Dims reg(n, d);
  const std::size_t dim = product(reg);
  if (dim > kLemma1DenseCap) {
    std::ostringstream msg;
    msg << "dense metrology path limited to dimension " << kLemma1DenseCap << ", got " << dim;
    throw DimensionError(msg.str());
  }

  const PureState flat(probe.amplitudes(), Dims{d});
  const auto phase = certified(phase_removal_unitary(flat), "phase removal");
  PureState s = apply_unitary(phase, flat);

  std::vector<std::size_t> perm(d);
  for (std::size_t r = 0; r < d; ++r) perm[info.order[r]] = r;
  const auto sort = certified(permutation_unitary(perm, Dims{d}), "amplitude sort");
  s = apply_unitary(sort, s);

  if (n > 1) s = tensor(s, make_basis_state(std::vector<std::size_t>(n - 1, 0), Dims(n - 1, d)));
  const auto fan = certified(fanout_unitary(d, n), "fan-out");
  s = apply_unitary(fan, s);

  std::vector<std::vector<std::size_t>> sigma(n);
  std::vector<LevelPair> levels(n);
  for (std::size_t j = 0; j < n; ++j) {
    sigma[j] = site_relabel(h.terms()[j]);
    levels[j] = LevelPair{sigma[j][0], sigma[j][1]};
  }
  std::vector<std::size_t> relabel(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    auto dig = digits_of(x, reg);
    for (std::size_t j = 0; j < n; ++j) dig[j] = sigma[j][dig[j]];
    relabel[x] = index_of(dig, reg);
  }
  const auto rel = certified(permutation_unitary(relabel, reg), "relabel");
  s = apply_unitary(rel, s);

  DensePipeline p{s.amplitudes(), RealVector::Zero(static_cast<Eigen::Index>(dim)),
                  lemma1_povm(n, d, levels)};
  for (std::size_t x = 0; x < dim; ++x) {
    const auto dig = digits_of(x, reg);
    double e = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const auto a = static_cast<Eigen::Index>(dig[j]);
      e += h.terms()[j](a, a).real();
    }
    p.energies(static_cast<Eigen::Index>(x)) = e;
  }
  return p;
}

Lemma1Path resolve_path(Lemma1Path path, const ProbeInfo& info) {
  if (path == Lemma1Path::kAuto) {
    return info.support == 2 ? Lemma1Path::kTwoTerm : Lemma1Path::kDense;
  }
  if (path == Lemma1Path::kTwoTerm && info.support != 2) {
    throw DimensionError("two-term path needs a probe with exactly two nonzero amplitudes");
  }
  return path;
}

double two_term_slope(double l1, double l2, double phi, double tau) {
  return -2.0 * std::sqrt(l1 * l2) * phi * std::sin(phi * tau);
}

double fd_step(double phi) { return kFiniteDifferenceScale / phi; }

Matrix cnot() {
  Matrix u = Matrix::Zero(4, 4);
  u(0, 0) = 1.0;
  u(1, 1) = 1.0;
  u(3, 2) = 1.0;
  u(2, 3) = 1.0;
  return u;
}

struct PreparedQubit {
  State state;
  bool coherent;
};

PreparedQubit remove_qubit_phase(const State& qubit) {
  if (qubit.dim() != 2) throw DimensionError("interconversion expects a single qubit");
  const cplx c = qubit.rho()(0, 1);
  const bool coherent = std::abs(c) > kCoherenceFloor;
  Matrix d = Matrix::Identity(2, 2);
  if (std::abs(c) > 0.0) d(1, 1) = c / std::abs(c);
  const auto u = certified(KrausChannel::unitary(d, Dims{2}), "phase removal");
  return {apply(u, State(qubit.rho(), Dims{2})), coherent};
}

State cnot_with_ancilla(const State& qubit, std::size_t ancilla_level) {
  Matrix anc = Matrix::Zero(2, 2);
  anc(static_cast<Eigen::Index>(ancilla_level), static_cast<Eigen::Index>(ancilla_level)) = 1.0;
  const State joint = tensor(qubit, State(anc, Dims{2}));
  const auto gate = certified(KrausChannel::unitary(cnot(), Dims{2, 2}), "CNOT");
  return apply(gate, joint);
}

double negativity(const State& two_qubits) {
  Matrix pt = two_qubits.rho();
  // Partial transpose on the second qubit.
  for (Eigen::Index a = 0; a < 2; ++a) {
    for (Eigen::Index b = 0; b < 2; ++b) {
      for (Eigen::Index i = 0; i < 2; ++i) {
        for (Eigen::Index j = 0; j < 2; ++j) {
          pt(2 * a + i, 2 * b + j) = two_qubits.rho()(2 * a + j, 2 * b + i);
        }
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(pt, Eigen::EigenvaluesOnly);
  double neg = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    neg += std::max(0.0, -es.eigenvalues()(i));
  }
  return neg;
}

}  // namespace

// Metrology ------------------------------------------------------------------------

MetrologyRun lemma1_run(const PureState& probe, const LocalHamiltonian& h, double tau,
                        Lemma1Path path) {
  if (!std::isfinite(tau)) throw DimensionError("tau must be finite");
  const ProbeInfo info = inspect_probe(probe);
  require_metrology_hamiltonian(h, probe.dim());

  MetrologyRun run;
  run.n_spins = h.n_sites();
  run.phi_per_site = site_gaps(h);
  run.phi = std::accumulate(run.phi_per_site.begin(), run.phi_per_site.end(), 0.0);
  run.tau = tau;
  run.lambda1 = info.probs[info.order[0]];
  run.lambda2 = info.probs[info.order[1]];
  run.path = resolve_path(path, info);

  if (run.path == Lemma1Path::kTwoTerm) {
    const double l1 = run.lambda1, l2 = run.lambda2;
    run.mean_M = 2.0 * std::sqrt(l1 * l2) * std::cos(run.phi * tau);
    run.second_M = l1 + l2;
    run.dmean_dtau = two_term_slope(l1, l2, run.phi, tau);
  } else {
    const DensePipeline pipe = build_dense(probe, h, info);
    // The evolution is a diagonal unitary; certify it at the reported time.
    const auto dim = static_cast<Eigen::Index>(pipe.prepared.size());
    Matrix evo = Matrix::Zero(dim, dim);
    for (Eigen::Index x = 0; x < dim; ++x) evo(x, x) = std::polar(1.0, -pipe.energies(x) * tau);
    const auto u = certified(KrausChannel::unitary(std::move(evo), pipe.povm.dims), "evolution");
    const PovmMoments mom = measure(pipe.povm, apply_unitary(u, PureState(pipe.prepared, pipe.povm.dims)));
    run.mean_M = mom.mean;
    run.second_M = mom.second;
    const double step = fd_step(run.phi);
    run.dmean_dtau = (pipe.mean_at(tau + step) - pipe.mean_at(tau - step)) / (2.0 * step);
  }
  run.var_M = std::max(0.0, run.second_M - run.mean_M * run.mean_M);
  const double slope2 = run.dmean_dtau * run.dmean_dtau;
  run.precision = slope2 > 0.0 ? run.var_M / slope2 : std::numeric_limits<double>::infinity();
  return run;
}

MetrologyRun lemma1_run_optimal(const PureState& probe, const LocalHamiltonian& h,
                                Lemma1Path path) {
  const ProbeInfo info = inspect_probe(probe);
  require_metrology_hamiltonian(h, probe.dim());
  const auto gaps = site_gaps(h);
  const double phi = std::accumulate(gaps.begin(), gaps.end(), 0.0);
  const double period = 2.0 * M_PI / phi;
  const Lemma1Path resolved = resolve_path(path, info);

  std::vector<double> slope(kTauGrid);
  if (resolved == Lemma1Path::kTwoTerm) {
    const double l1 = info.probs[info.order[0]], l2 = info.probs[info.order[1]];
    for (std::size_t k = 0; k < kTauGrid; ++k) {
      slope[k] = std::abs(two_term_slope(l1, l2, phi, period * static_cast<double>(k) / kTauGrid));
    }
  } else {
    const DensePipeline pipe = build_dense(probe, h, info);
    const double step = fd_step(phi);
    for (std::size_t k = 0; k < kTauGrid; ++k) {
      const double tau = period * static_cast<double>(k) / kTauGrid;
      slope[k] = std::abs(pipe.mean_at(tau + step) - pipe.mean_at(tau - step)) / (2.0 * step);
    }
  }
  const double best = *std::max_element(slope.begin(), slope.end());
  std::size_t pick = 0;
  while (slope[pick] < best * (1.0 - 1e-9)) ++pick;
  return lemma1_run(probe, h, period * static_cast<double>(pick) / kTauGrid, resolved);
}

double lemma1_quoted_precision(double lambda1, double lambda2, double phi) {
  const double s = std::sqrt(lambda1) + std::sqrt(lambda2);
  return s * s / (2.0 * phi * phi);
}

double lemma1_parity_precision(double lambda1, double lambda2, double phi) {
  return (lambda1 + lambda2) / (4.0 * lambda1 * lambda2 * phi * phi);
}

ScalingFit lemma1_scaling(const PureState& probe_qubit, const std::vector<std::size_t>& n_list) {
  if (n_list.size() < 4) throw DimensionError("scaling fit needs at least four values of N");
  if (probe_qubit.dim() != 2) throw DimensionError("scaling fit expects a qubit probe");
  inspect_probe(probe_qubit);
  ScalingFit fit;
  std::vector<double> xs, ys;
  for (std::size_t n : n_list) {
    if (n == 0) throw DimensionError("N must be positive");
    fit.runs.push_back(lemma1_run_optimal(probe_qubit, collective_sz(n), Lemma1Path::kTwoTerm));
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(1.0 / fit.runs.back().precision));
  }
  const double k = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / k;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / k;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx <= 0.0) throw DimensionError("scaling fit needs distinct values of N");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

// Interconversion ---------------------------------------------------------------

Conversion coherence_to_superradiance(const State& qubit) {
  const PreparedQubit prep = remove_qubit_phase(qubit);
  State out = cnot_with_ancilla(prep.state, 1);
  const double s = prep.coherent ? superradiant_quantity(out) : 0.0;
  return {std::move(out), s, prep.coherent, "superradiance"};
}

Conversion coherence_to_entanglement(const State& qubit) {
  const PreparedQubit prep = remove_qubit_phase(qubit);
  State out = cnot_with_ancilla(prep.state, 0);
  if (out.rank() == 1) {
    Vector v = out.spectrum().vectors.col(0);
    v.normalize();
    const double e = entanglement_entropy(PureState(std::move(v), Dims{2, 2}), {0});
    return {std::move(out), e, prep.coherent, "entanglement_entropy"};
  }
  const double neg = negativity(out);
  return {std::move(out), neg, prep.coherent, "negativity"};
}

double coherence_to_qfi(const State& qubit) {
  if (qubit.dim() != 2) throw DimensionError("interconversion expects a single qubit");
  return qfi(qubit, Operator(sigma_z_half(), Dims{2}));
}

// Trade-off sweep -------------------------------------------------------------------

std::vector<double> unit_grid(std::size_t steps) {
  if (steps == 0) throw DimensionError("grid needs at least one point");
  if (steps == 1) return {0.0};
  std::vector<double> g(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    g[i] = static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  return g;
}

std::vector<SweepPoint> tradeoff_sweep(std::size_t n_spins, const std::vector<double>& p_grid) {
  if (n_spins < 2 || n_spins % 2 != 0) {
    throw DimensionError("trade-off sweep needs an even number of spins >= 2");
  }
  const Matrix ghz = make_ghz_symmetric(n_spins).rho();
  const Matrix dicke = make_dicke_symmetric(n_spins, n_spins / 2).rho();
  for (double p : p_grid) {
    if (!(p >= 0.0 && p <= 1.0)) throw DimensionError("mixing weight outside [0, 1]");
  }
  std::vector<SweepPoint> out(p_grid.size());
  parallel_for(p_grid.size(), [&](std::size_t i) {
    const double p = p_grid[i];
    const SymmetricState rho(n_spins, (1.0 - p) * ghz + p * dicke);
    SweepPoint pt;
    pt.p = p;
    pt.F = qfi(rho) / 4.0;
    pt.S = superradiant_quantity(rho);
    pt.mu = mean_excitation(rho);
    pt.bound = tradeoff_bound(rho);
    if (pt.S + pt.F > pt.bound + 1e-8) {
      std::ostringstream msg;
      msg << "trade-off violated at p=" << p << ": S+F=" << pt.S + pt.F << " > " << pt.bound;
      throw InvariantError(msg.str());
    }
    out[i] = pt;
  });
  return out;
}

// Dicke comparison ------------------------------------------------------------------

FisherStrategy ghz_fanout_strategy(std::size_t probe_spins, std::size_t max_parts) {
  if (probe_spins == 0) throw DimensionError("GHZ probe needs at least one spin");
  const double f_ghz = qfi(make_ghz_symmetric(probe_spins));
  std::ostringstream name;
  name << "ghz_fanout(N=" << probe_spins << ",M=" << (max_parts == 0 ? "m" : std::to_string(max_parts))
       << ")";
  return {name.str(), [f_ghz, max_parts](std::size_t m, std::size_t k) {
            const std::size_t cap = max_parts == 0 ? m : max_parts;
            return static_cast<double>(std::min(max_coherent_qubits(m, k), cap)) * f_ghz;
          }};
}

DickeTable dicke_comparison(std::size_t m, const std::vector<std::size_t>& k_range,
                            std::size_t anchor_k, const FisherStrategy& strategy) {
  if (m < 2 || m > 64) throw DimensionError("Dicke comparison needs 2 <= m <= 64");
  if (std::find(k_range.begin(), k_range.end(), anchor_k) == k_range.end()) {
    throw DimensionError("anchor k must be one of the tabulated k");
  }
  DickeTable table{m, anchor_k, strategy.name, {}};
  for (std::size_t k : k_range) {
    if (k > m) throw DimensionError("k must be <= m");
    DickeRow row;
    row.k = k;
    row.m_k = max_coherent_qubits(m, k);
    row.c_s = superradiant_quantity(make_dicke_symmetric(m, k));
    row.c_f = strategy.value(m, k);
    row.c_r = std::log2(static_cast<double>(binomial_exact(m, k)));
    table.rows.push_back(row);
  }
  const auto anchor = std::find_if(table.rows.begin(), table.rows.end(),
                                   [&](const DickeRow& r) { return r.k == anchor_k; });
  if (anchor->c_s <= 0.0 || anchor->c_f <= 0.0 || anchor->c_r <= 0.0) {
    throw DimensionError("anchor row has a vanishing entry; cannot normalize");
  }
  const DickeRow a = *anchor;
  for (auto& r : table.rows) {
    r.c_s_norm = r.c_s / a.c_s;
    r.c_f_norm = r.c_f / a.c_f;
    r.c_r_norm = r.c_r / a.c_r;
  }
  return table;
}

}  // namespace qres
