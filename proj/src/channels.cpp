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

#include "qres/channels.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <sstream>

namespace qres {

namespace {

constexpr std::uint64_t kConfirmSeed = 0x1c0e7e17ULL;
constexpr std::size_t kConfirmTrials = 20;
constexpr double kConfirmLeak = 1e-9;
constexpr std::size_t kDenseConfirmCap = 256;
constexpr int kMaxResample = 200;

double completeness_defect(const std::vector<Matrix>& ops, Eigen::Index in_dim) {
  Matrix acc = Matrix::Zero(in_dim, in_dim);
  for (const auto& k : ops) acc.noalias() += k.adjoint() * k;
  return (acc - Matrix::Identity(in_dim, in_dim)).cwiseAbs().maxCoeff();
}

double max_offdiagonal(const Matrix& m) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i != j) worst = std::max(worst, std::abs(m(i, j)));
    }
  }
  return worst;
}

// Columns holding two or more exactly-nonzero entries. Only these feed the
// off-diagonal part of K diag(w) K^dagger.
struct SharedColumn {
  Eigen::Index column;
  std::vector<std::pair<Eigen::Index, cplx>> entries;
};

std::vector<SharedColumn> shared_columns(const std::vector<Matrix>& ops) {
  std::vector<SharedColumn> out;
  for (const auto& k : ops) {
    for (Eigen::Index c = 0; c < k.cols(); ++c) {
      SharedColumn sc{c, {}};
      for (Eigen::Index r = 0; r < k.rows(); ++r) {
        if (k(r, c) != cplx(0.0)) sc.entries.emplace_back(r, k(r, c));
      }
      if (sc.entries.size() > 1) out.push_back(std::move(sc));
    }
  }
  return out;
}

double sparse_offdiagonal(const std::vector<SharedColumn>& cols, const RealVector& w) {
  std::map<std::pair<Eigen::Index, Eigen::Index>, cplx> acc;
  for (const auto& sc : cols) {
    for (const auto& [r, kr] : sc.entries) {
      for (const auto& [s, ks] : sc.entries) {
        if (r != s) acc[{r, s}] += kr * w(sc.column) * std::conj(ks);
      }
    }
  }
  double worst = 0.0;
  for (const auto& [rs, v] : acc) worst = std::max(worst, std::abs(v));
  return worst;
}

void require_input(const KrausChannel& ch, std::size_t dim) {
  if (ch.input_dim() != dim) {
    std::ostringstream msg;
    msg << "channel input dimension " << ch.input_dim() << " does not match state dimension "
        << dim;
    throw DimensionError(msg.str());
  }
}

}  // namespace

KrausChannel::KrausChannel(std::vector<Matrix> kraus_ops, Dims input_dims,
                           Dims output_dims)
    : ops_(std::move(kraus_ops)), in_(std::move(input_dims)), out_(std::move(output_dims)) {
  if (ops_.empty()) throw DimensionError("Kraus set is empty");
  if (in_.empty() || out_.empty()) throw DimensionError("channel dims must be nonempty");
  const auto rows = static_cast<Eigen::Index>(product(out_));
  const auto cols = static_cast<Eigen::Index>(product(in_));
  for (const auto& k : ops_) {
    if (k.rows() != rows || k.cols() != cols) {
      std::ostringstream msg;
      msg << "Kraus operator is " << k.rows() << "x" << k.cols() << ", expected " << rows
          << "x" << cols;
      throw DimensionError(msg.str());
    }
    if (!k.allFinite()) throw InvariantError("Kraus operator has non-finite entries");
  }
  const double defect = completeness_defect(ops_, cols);
  if (defect > tol::kCompleteness) {
    std::ostringstream msg;
    msg << "Kraus set is not complete (max |sum K^dagger K - I| = " << defect << ")";
    throw InvariantError(msg.str());
  }
}

KrausChannel KrausChannel::unitary(Matrix u, Dims dims) {
  Dims out = dims;
  return KrausChannel({std::move(u)}, std::move(dims), std::move(out));
}

IncoherenceReport is_incoherent(const KrausChannel& ch) {
  IncoherenceReport report;
  const auto& ops = ch.kraus_ops();
  for (std::size_t n = 0; n < ops.size(); ++n) {
    for (Eigen::Index c = 0; c < ops[n].cols(); ++c) {
      int nonzero = 0;
      for (Eigen::Index r = 0; r < ops[n].rows(); ++r) {
        if (std::abs(ops[n](r, c)) > tol::kNonzero) ++nonzero;
      }
      if (nonzero > 1) {
        report.witness = IncoherenceWitness{n, static_cast<std::size_t>(c)};
        return report;
      }
    }
  }
  const auto in_dim = static_cast<Eigen::Index>(ch.input_dim());
  const bool dense = ch.output_dim() <= kDenseConfirmCap;
  const auto shared = dense ? std::vector<SharedColumn>{} : shared_columns(ops);
  for (std::size_t trial = 0; trial < kConfirmTrials; ++trial) {
    Rng rng = stream(kConfirmSeed, trial);
    std::exponential_distribution<double> expo(1.0);
    RealVector w(in_dim);
    for (Eigen::Index i = 0; i < in_dim; ++i) w(i) = expo(rng);
    w /= w.sum();
    double leak = 0.0;
    if (dense) {
      Matrix out = Matrix::Zero(static_cast<Eigen::Index>(ch.output_dim()),
                                static_cast<Eigen::Index>(ch.output_dim()));
      for (const auto& k : ops) out.noalias() += k * w.cast<cplx>().asDiagonal() * k.adjoint();
      leak = max_offdiagonal(out);
    } else {
      leak = sparse_offdiagonal(shared, w);
    }
    report.max_offdiagonal = std::max(report.max_offdiagonal, leak);
  }
  report.incoherent = report.max_offdiagonal <= kConfirmLeak;
  return report;
}

void require_incoherent(const KrausChannel& ch, const char* what) {
  if (!is_incoherent(ch).incoherent) {
    throw InvariantError(std::string(what) + ": channel is not incoherent");
  }
}

State apply(const KrausChannel& ch, const State& s) {
  require_input(ch, s.dim());
  const auto d = static_cast<Eigen::Index>(ch.output_dim());
  Matrix out = Matrix::Zero(d, d);
  for (const auto& k : ch.kraus_ops()) out.noalias() += k * s.rho() * k.adjoint();
  return State(0.5 * (out + out.adjoint()), ch.output_dims());
}

PureState apply_unitary(const KrausChannel& ch, const PureState& psi) {
  if (ch.kraus_ops().size() != 1) throw DimensionError("apply_unitary needs a single Kraus operator");
  require_input(ch, psi.dim());
  Vector out = ch.kraus_ops().front() * psi.amplitudes();
  return PureState(std::move(out), ch.output_dims());
}

std::vector<Outcome<State>> apply_selective(const KrausChannel& ch, const State& s) {
  require_input(ch, s.dim());
  std::vector<Outcome<State>> out;
  double total = 0.0;
  for (const auto& k : ch.kraus_ops()) {
    Matrix branch = k * s.rho() * k.adjoint();
    const double p = branch.trace().real();
    total += std::max(0.0, p);
    if (p <= tol::kNonzero) continue;
    branch /= p;
    out.push_back({p, State(0.5 * (branch + branch.adjoint()), ch.output_dims())});
  }
  if (std::abs(total - 1.0) > tol::kTrace) {
    throw InvariantError("selective outcome probabilities do not sum to 1");
  }
  return out;
}

std::vector<Outcome<PureState>> apply_selective(const KrausChannel& ch,
                                                const PureState& psi) {
  require_input(ch, psi.dim());
  std::vector<Outcome<PureState>> out;
  for (const auto& k : ch.kraus_ops()) {
    Vector branch = k * psi.amplitudes();
    const double p = branch.squaredNorm();
    if (p <= tol::kNonzero) continue;
    branch /= std::sqrt(p);
    out.push_back({p, PureState(std::move(branch), ch.output_dims())});
  }
  return out;
}

KrausChannel permutation_unitary(const std::vector<std::size_t>& perm, Dims dims) {
  const std::size_t dim = product(dims);
  if (perm.size() != dim) throw DimensionError("permutation size does not match dims");
  std::vector<bool> seen(dim, false);
  Matrix u = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t x = 0; x < dim; ++x) {
    if (perm[x] >= dim || seen[perm[x]]) throw DimensionError("not a permutation");
    seen[perm[x]] = true;
    u(static_cast<Eigen::Index>(perm[x]), static_cast<Eigen::Index>(x)) = 1.0;
  }
  return KrausChannel::unitary(std::move(u), std::move(dims));
}

KrausChannel fanout_unitary(std::size_t levels, std::size_t copies) {
  if (levels < 2 || copies < 1) throw DimensionError("fanout needs levels >= 2, copies >= 1");
  const Dims dims(copies, levels);
  const std::size_t dim = product(dims);
  std::vector<std::size_t> perm(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    auto dig = digits_of(x, dims);
    for (std::size_t j = 1; j < copies; ++j) dig[j] = (dig[j] + dig[0]) % levels;
    perm[x] = index_of(dig, dims);
  }
  return permutation_unitary(perm, dims);
}

KrausChannel phase_removal_unitary(const PureState& psi) {
  const auto d = static_cast<Eigen::Index>(psi.dim());
  Matrix u = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const cplx a = psi.amplitudes()(i);
    const double mod = std::abs(a);
    u(i, i) = mod > 0.0 ? std::conj(a) / mod : cplx(1.0);
  }
  return KrausChannel::unitary(std::move(u), psi.dims());
}

Flattening flatten_unitary(const Dims& dims) {
  const std::size_t dim = product(dims);
  Flattening f{KrausChannel({Matrix::Identity(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim))},
                            dims, Dims{dim}),
               {}};
  f.labels.reserve(dim);
  for (std::size_t k = 0; k < dim; ++k) f.labels.push_back(digits_of(k, dims));
  return f;
}

// POVM --------------------------------------------------------------------------

void validate_povm(const Povm& povm) {
  if (povm.factors.empty() || povm.factors.size() != povm.values.size()) {
    throw DimensionError("POVM needs one value per effect");
  }
  const auto d = static_cast<Eigen::Index>(product(povm.dims));
  Matrix acc = Matrix::Zero(d, d);
  std::vector<Eigen::Index> rows;
  for (const auto& f : povm.factors) {
    if (f.rows() != d || f.cols() < 1) throw DimensionError("POVM factor has wrong shape");
    if (!f.allFinite()) throw InvariantError("POVM factor has non-finite entries");
    // Accumulate F F^dagger over the nonzero rows only; most factors are sparse.
    for (Eigen::Index c = 0; c < f.cols(); ++c) {
      rows.clear();
      for (Eigen::Index r = 0; r < d; ++r) {
        if (f(r, c) != cplx(0.0)) rows.push_back(r);
      }
      for (auto r : rows) {
        for (auto s : rows) acc(r, s) += f(r, c) * std::conj(f(s, c));
      }
    }
  }
  const double defect = (acc - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (defect > tol::kCompleteness) {
    std::ostringstream msg;
    msg << "POVM effects do not sum to the identity (max deviation " << defect << ")";
    throw InvariantError(msg.str());
  }
}

std::vector<double> outcome_probabilities(const Povm& povm, const PureState& psi) {
  if (psi.dim() != product(povm.dims)) throw DimensionError("POVM/state dimension mismatch");
  std::vector<double> p(povm.size());
  for (std::size_t k = 0; k < povm.size(); ++k) {
    p[k] = (povm.factors[k].adjoint() * psi.amplitudes()).squaredNorm();
  }
  return p;
}

PovmMoments measure(const Povm& povm, const PureState& psi) {
  const auto p = outcome_probabilities(povm, psi);
  PovmMoments m;
  for (std::size_t k = 0; k < p.size(); ++k) {
    m.mean += povm.values[k] * p[k];
    m.second += povm.values[k] * povm.values[k] * p[k];
  }
  return m;
}

PovmMoments measure(const Povm& povm, const State& s) {
  if (s.dim() != product(povm.dims)) throw DimensionError("POVM/state dimension mismatch");
  PovmMoments m;
  for (std::size_t k = 0; k < povm.size(); ++k) {
    const Matrix& f = povm.factors[k];
    const double p = (f.adjoint() * s.rho() * f).trace().real();
    m.mean += povm.values[k] * p;
    m.second += povm.values[k] * povm.values[k] * p;
  }
  return m;
}

Povm lemma1_povm(std::size_t n_sites, std::size_t site_dim,
                 const std::vector<LevelPair>& levels, const Matrix& reference_basis) {
  if (n_sites == 0 || site_dim < 2) throw DimensionError("lemma1_povm: bad register shape");
  if (levels.size() != n_sites) throw DimensionError("lemma1_povm: one level pair per site");
  for (const auto& lp : levels) {
    if (lp.upper >= site_dim || lp.lower >= site_dim || lp.upper == lp.lower) {
      throw DimensionError("lemma1_povm: invalid level pair");
    }
  }
  const Dims dims(n_sites, site_dim);
  const std::size_t dim = product(dims);
  const auto D = static_cast<Eigen::Index>(dim);

  std::vector<std::size_t> up(n_sites), lo(n_sites);
  for (std::size_t j = 0; j < n_sites; ++j) {
    up[j] = levels[j].upper;
    lo[j] = levels[j].lower;
  }
  const auto iu = static_cast<Eigen::Index>(index_of(up, dims));
  const auto il = static_cast<Eigen::Index>(index_of(lo, dims));

  Vector a1 = Vector::Zero(D);
  a1(iu) = M_SQRT1_2;
  a1(il) = M_SQRT1_2;

  Matrix basis = reference_basis;
  if (basis.size() == 0) {
    basis = Matrix::Zero(D, D);
    basis.col(0) = a1;
    basis(iu, 1) = M_SQRT1_2;
    basis(il, 1) = -M_SQRT1_2;
    Eigen::Index col = 2;
    for (Eigen::Index x = 0; x < D; ++x) {
      if (x == iu || x == il) continue;
      basis(x, col++) = 1.0;
    }
  }
  if (basis.rows() != D || basis.cols() != D) {
    throw DimensionError("lemma1_povm: reference basis has wrong shape");
  }
  if ((basis.adjoint() * basis - Matrix::Identity(D, D)).cwiseAbs().maxCoeff() > tol::kNorm) {
    throw InvariantError("lemma1_povm: reference basis is not orthonormal");
  }
  if ((basis.col(0) - a1).cwiseAbs().maxCoeff() > tol::kNorm) {
    throw InvariantError("lemma1_povm: first basis vector must be (|1..1> + |2..2>)/sqrt(2)");
  }

  Povm povm;
  povm.dims = dims;

  // Q P_c Q: only <a|P_c|b> for a, b in {|1..1>, |2..2>} survive, and each
  // factorizes over sites as <a_j|s_j><s_j|b_j> with |s_j> = (|1> +- |2>)/sqrt(2).
  const std::size_t n_parity = std::size_t{1} << n_sites;
  for (std::size_t c = 0; c < n_parity; ++c) {
    double uu = 1.0, ul = 1.0;
    int parity = 1;
    for (std::size_t j = 0; j < n_sites; ++j) {
      const bool minus = (c >> (n_sites - 1 - j)) & 1U;
      const double sign = minus ? -1.0 : 1.0;
      uu *= 0.5;        // <1|s><s|1>
      ul *= 0.5 * sign;  // <1|s><s|2>
      if (minus) parity = -parity;
    }
    // Block [[uu, ul], [ul, uu]] on (|1..1>, |2..2>) has eigenvalues uu +- ul
    // with eigenvectors (|1..1> +- |2..2>)/sqrt(2).
    for (const double sign : {1.0, -1.0}) {
      const double ev = uu + sign * ul;
      if (ev <= tol::kNonzero) continue;
      Matrix f = Matrix::Zero(D, 1);
      f(iu, 0) = std::sqrt(ev) * M_SQRT1_2;
      f(il, 0) = sign * std::sqrt(ev) * M_SQRT1_2;
      povm.factors.push_back(std::move(f));
      povm.values.push_back(static_cast<double>(parity));
    }
  }

  // Remaining basis vectors, projected off the parity block.
  for (Eigen::Index i = 1; i < D; ++i) {
    Vector v = basis.col(i);
    v(iu) = 0.0;
    v(il) = 0.0;
    if (v.squaredNorm() <= tol::kNonzero) continue;
    povm.factors.push_back(v);
    povm.values.push_back(0.0);
  }
  validate_povm(povm);
  return povm;
}

// Random incoherent channels ---------------------------------------------------

KrausChannel random_incoherent_channel(const Dims& input_dims, const Dims& output_dims,
                                       std::size_t n_ops, Rng& rng) {
  if (n_ops == 0) throw DimensionError("random_incoherent_channel: need at least one operator");
  const auto din = static_cast<Eigen::Index>(product(input_dims));
  const auto dout = static_cast<Eigen::Index>(product(output_dims));
  std::uniform_int_distribution<Eigen::Index> row_pick(0, dout - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  for (int attempt = 0; attempt < kMaxResample; ++attempt) {
    std::vector<Matrix> ops;
    Matrix gram = Matrix::Zero(din, din);
    for (std::size_t n = 0; n < n_ops; ++n) {
      Matrix k = Matrix::Zero(dout, din);
      for (Eigen::Index c = 0; c < din; ++c) {
        if (unit(rng) < 0.2) continue;  // leave some columns empty
        const double re = normal(rng);
        const double im = normal(rng);
        k(row_pick(rng), c) = cplx(re, im);
      }
      gram.noalias() += k.adjoint() * k;
      ops.push_back(std::move(k));
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
    const double top = es.eigenvalues().maxCoeff();
    if (!(top > 1e-6)) continue;
    const double scale = 1.0 / std::sqrt(top * (1.0 + unit(rng)));
    for (auto& k : ops) k *= scale;

    // I - sum K^dagger K is PSD; realize it with operators |r><e| that have
    // a single nonzero row, hence at most one nonzero per column.
    Eigen::SelfAdjointEigenSolver<Matrix> rest(Matrix::Identity(din, din) - scale * scale * gram);
    for (Eigen::Index i = 0; i < din; ++i) {
      const double mu = rest.eigenvalues()(i);
      if (mu <= 1e-15) continue;
      Matrix k = Matrix::Zero(dout, din);
      k.row(row_pick(rng)) = std::sqrt(mu) * rest.eigenvectors().col(i).adjoint();
      ops.push_back(std::move(k));
    }
    return KrausChannel(std::move(ops), input_dims, output_dims);
  }
  throw InvariantError("random_incoherent_channel: resampling limit reached");
}

}  // namespace qres
