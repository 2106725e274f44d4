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

#include "qres/measures.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace qres {

namespace {

void require_hermitian(const Operator& h) {
  if (!h.is_hermitian()) throw InvariantError("Hamiltonian is not Hermitian");
}

void require_same_dim(std::size_t state_dim, std::size_t op_dim) {
  if (state_dim != op_dim) {
    std::ostringstream msg;
    msg << "dimension mismatch: state " << state_dim << ", operator " << op_dim;
    throw DimensionError(msg.str());
  }
}

// QFI from the support spectrum and H V. The sum over kernel partners j of
// |<i|H|j>|^2 equals ||H v_i||^2 minus the in-support part.
double spectral_qfi(const Spectrum& sp, const Matrix& hv) {
  const Matrix hs = sp.vectors.adjoint() * hv;
  const RealVector& l = sp.values;
  double f = 0.0;
  for (Eigen::Index i = 0; i < l.size(); ++i) {
    for (Eigen::Index j = 0; j < l.size(); ++j) {
      const double s = l(i) + l(j);
      if (s <= tol::kQfiPairCutoff) continue;
      const double d = l(i) - l(j);
      f += 2.0 * d * d / s * std::norm(hs(i, j));
    }
  }
  for (Eigen::Index i = 0; i < l.size(); ++i) {
    if (l(i) <= tol::kQfiPairCutoff) continue;
    const double kernel =
        std::max(0.0, hv.col(i).squaredNorm() - hs.col(i).squaredNorm());
    f += 4.0 * l(i) * kernel;
  }
  return f;
}

double spectral_variance(const Spectrum& sp, const Matrix& hv) {
  double mean = 0.0;
  double second = 0.0;
  for (Eigen::Index i = 0; i < sp.values.size(); ++i) {
    mean += sp.values(i) * sp.vectors.col(i).dot(hv.col(i)).real();
    second += sp.values(i) * hv.col(i).squaredNorm();
  }
  return std::max(0.0, second - mean * mean);
}

double pure_variance(const Vector& psi, const Vector& hpsi) {
  const double mean = psi.dot(hpsi).real();
  return std::max(0.0, hpsi.squaredNorm() - mean * mean);
}

Matrix jz_diagonal_apply(std::size_t n, const Matrix& v) {
  Matrix out = v;
  const double half = 0.5 * static_cast<double>(n);
  for (Eigen::Index m = 0; m < v.rows(); ++m) {
    out.row(m) *= static_cast<double>(m) - half;
  }
  return out;
}

void require_sites(const Dims& dims, Transition t) {
  if (dims.size() < 2) {
    throw DimensionError("superradiant quantity needs at least two sites");
  }
  for (auto d : dims) {
    if (t.ground >= d || t.excited >= d || t.ground == t.excited) {
      throw DimensionError("transition levels are not valid for every site");
    }
  }
}

void require_qubits(const Dims& dims) {
  for (auto d : dims) {
    if (d != 2) throw DimensionError("operation requires qubit sites");
  }
}

std::vector<std::size_t> strides_of(const Dims& dims) {
  std::vector<std::size_t> s(dims.size());
  std::size_t acc = 1;
  for (std::size_t i = dims.size(); i-- > 0;) {
    s[i] = acc;
    acc *= dims[i];
  }
  return s;
}

// sum_{i != j} <x| rho |y(x)> with y(x) = x after D_+^(i) D_-^(j).
template <typename Entry>
double superradiance_sum(const Dims& dims, Transition t, Entry&& entry) {
  const auto strides = strides_of(dims);
  const std::size_t dim = product(dims);
  const std::size_t n = dims.size();
  cplx acc = 0.0;
  for (std::size_t x = 0; x < dim; ++x) {
    const auto dig = digits_of(x, dims);
    for (std::size_t j = 0; j < n; ++j) {
      if (dig[j] != t.excited) continue;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == j || dig[i] != t.ground) continue;
        std::size_t y = x;
        y -= (t.excited - t.ground) * strides[j];
        y += (t.excited - t.ground) * strides[i];
        acc += entry(x, y);
      }
    }
  }
  return acc.real();
}

std::size_t excited_count(std::size_t x, const Dims& dims, Transition t) {
  std::size_t c = 0;
  for (auto d : digits_of(x, dims)) {
    if (d == t.excited) ++c;
  }
  return c;
}

}  // namespace

// LocalHamiltonian --------------------------------------------------------------

LocalHamiltonian::LocalHamiltonian(std::vector<Matrix> terms)
    : terms_(std::move(terms)) {
  if (terms_.empty()) throw DimensionError("local Hamiltonian needs at least one term");
  for (const auto& h : terms_) {
    if (h.rows() != h.cols() || h.rows() < 2) {
      throw DimensionError("local term must be square with dimension >= 2");
    }
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > tol::kHermitian) {
      throw InvariantError("local term is not Hermitian");
    }
    const cplx mean = h.trace() / static_cast<double>(h.rows());
    const Matrix shifted = h - mean * Matrix::Identity(h.rows(), h.cols());
    if (shifted.cwiseAbs().maxCoeff() <= tol::kHermitian) {
      throw InvariantError("local term is proportional to the identity");
    }
    dims_.push_back(static_cast<std::size_t>(h.rows()));
  }
}

Matrix LocalHamiltonian::apply(const Matrix& v) const {
  const auto dim = static_cast<Eigen::Index>(this->dim());
  if (v.rows() != dim) throw DimensionError("apply: vector dimension mismatch");
  Matrix out = Matrix::Zero(v.rows(), v.cols());
  const auto strides = strides_of(dims_);
  for (std::size_t site = 0; site < terms_.size(); ++site) {
    const Matrix& h = terms_[site];
    const auto d = static_cast<Eigen::Index>(dims_[site]);
    const auto inner = static_cast<Eigen::Index>(strides[site]);
    const Eigen::Index outer = dim / (d * inner);
    for (Eigen::Index o = 0; o < outer; ++o) {
      for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = 0; b < d; ++b) {
          const cplx hab = h(a, b);
          if (hab == cplx(0.0)) continue;
          for (Eigen::Index i = 0; i < inner; ++i) {
            const Eigen::Index row = (o * d + a) * inner + i;
            const Eigen::Index col = (o * d + b) * inner + i;
            out.row(row) += hab * v.row(col);
          }
        }
      }
    }
  }
  return out;
}

Operator LocalHamiltonian::to_operator() const {
  const auto dim = static_cast<Eigen::Index>(this->dim());
  return Operator(apply(Matrix::Identity(dim, dim)), dims_);
}

double LocalHamiltonian::site_gap(std::size_t j) const {
  if (j >= terms_.size()) throw DimensionError("site index out of range");
  Eigen::SelfAdjointEigenSolver<Matrix> es(terms_[j], Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff() - es.eigenvalues().minCoeff();
}

bool LocalHamiltonian::is_diagonal() const {
  for (const auto& h : terms_) {
    Matrix off = h;
    off.diagonal().setZero();
    if (off.cwiseAbs().maxCoeff() > tol::kHermitian) return false;
  }
  return true;
}

Matrix sigma_z_half() {
  Matrix z = Matrix::Zero(2, 2);
  z(0, 0) = -0.5;
  z(1, 1) = 0.5;
  return z;
}

LocalHamiltonian collective_sz(std::size_t n) {
  return LocalHamiltonian(std::vector<Matrix>(n, sigma_z_half()));
}

Operator excitation_projector(std::size_t n, std::size_t m) {
  if (n > kDenseQubitCap) throw DimensionError("excitation_projector: above dense cap");
  const std::size_t dim = std::size_t{1} << n;
  Matrix p = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t x = 0; x < dim; ++x) {
    if (static_cast<std::size_t>(std::popcount(x)) == m) {
      p(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) = 1.0;
    }
  }
  return Operator(std::move(p), Dims(n, 2));
}

// QFI and variance ------------------------------------------------------------

double qfi(const State& s, const Operator& h) {
  require_hermitian(h);
  require_same_dim(s.dim(), h.dim());
  return spectral_qfi(s.spectrum(), h.matrix() * s.spectrum().vectors);
}

double qfi(const State& s, const LocalHamiltonian& h) {
  require_same_dim(s.dim(), h.dim());
  return spectral_qfi(s.spectrum(), h.apply(s.spectrum().vectors));
}

double qfi(const PureState& psi, const Operator& h) {
  return 4.0 * variance(psi, h);
}

double qfi(const PureState& psi, const LocalHamiltonian& h) {
  return 4.0 * variance(psi, h);
}

double qfi(const SymmetricState& s) {
  return spectral_qfi(s.spectrum(), jz_diagonal_apply(s.n_spins(), s.spectrum().vectors));
}

double variance(const State& s, const Operator& h) {
  require_hermitian(h);
  require_same_dim(s.dim(), h.dim());
  return spectral_variance(s.spectrum(), h.matrix() * s.spectrum().vectors);
}

double variance(const State& s, const LocalHamiltonian& h) {
  require_same_dim(s.dim(), h.dim());
  return spectral_variance(s.spectrum(), h.apply(s.spectrum().vectors));
}

double variance(const PureState& psi, const Operator& h) {
  require_hermitian(h);
  require_same_dim(psi.dim(), h.dim());
  const Vector hpsi = h.matrix() * psi.amplitudes();
  return pure_variance(psi.amplitudes(), hpsi);
}

double variance(const PureState& psi, const LocalHamiltonian& h) {
  require_same_dim(psi.dim(), h.dim());
  const Vector hpsi = h.apply(psi.amplitudes());
  return pure_variance(psi.amplitudes(), hpsi);
}

double variance(const SymmetricState& s) {
  return spectral_variance(s.spectrum(),
                           jz_diagonal_apply(s.n_spins(), s.spectrum().vectors));
}

std::optional<double> precision_bound(double fisher, std::size_t nu) {
  if (nu == 0) throw DimensionError("precision_bound: measurement count must be >= 1");
  if (!(fisher >= 0.0)) throw InvariantError("precision_bound: Fisher information must be >= 0");
  if (fisher <= tol::kNonzero) return std::nullopt;
  return 1.0 / std::sqrt(static_cast<double>(nu) * fisher);
}

// Superradiance ---------------------------------------------------------------

double superradiant_quantity(const State& s, Transition t) {
  require_sites(s.dims(), t);
  const Matrix& rho = s.rho();
  return superradiance_sum(s.dims(), t, [&](std::size_t x, std::size_t y) {
    return rho(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
  });
}

double superradiant_quantity(const PureState& psi, Transition t) {
  require_sites(psi.dims(), t);
  const Vector& a = psi.amplitudes();
  return superradiance_sum(psi.dims(), t, [&](std::size_t x, std::size_t y) {
    return a(static_cast<Eigen::Index>(x)) * std::conj(a(static_cast<Eigen::Index>(y)));
  });
}

double superradiant_quantity(const SymmetricState& s) {
  const std::size_t n = s.n_spins();
  if (n < 2) throw DimensionError("superradiant quantity needs at least two sites");
  const auto d = static_cast<Eigen::Index>(n + 1);
  Matrix lower = Matrix::Zero(d, d);
  for (Eigen::Index m = 1; m < d; ++m) {
    const double mm = static_cast<double>(m);
    lower(m - 1, m) = std::sqrt(mm * (static_cast<double>(n) - mm + 1.0));
  }
  const Matrix raise_lower = lower.adjoint() * lower;
  const double collective = (s.rho() * raise_lower).trace().real();
  return collective - single_emission_sum(s);
}

double single_emission_sum(const State& s, Transition t) {
  for (auto d : s.dims()) {
    if (t.ground >= d || t.excited >= d) {
      throw DimensionError("transition levels are not valid for every site");
    }
  }
  double acc = 0.0;
  for (std::size_t x = 0; x < s.dim(); ++x) {
    const auto ix = static_cast<Eigen::Index>(x);
    acc += s.rho()(ix, ix).real() * static_cast<double>(excited_count(x, s.dims(), t));
  }
  return acc;
}

double single_emission_sum(const SymmetricState& s) {
  double acc = 0.0;
  const auto p = s.excitation_distribution();
  for (std::size_t m = 0; m < p.size(); ++m) acc += static_cast<double>(m) * p[m];
  return acc;
}

// Excitation statistics ---------------------------------------------------------

double mean_excitation(const State& s, Transition t) {
  const std::size_t n = s.dims().size();
  for (auto d : s.dims()) {
    if (t.excited >= d) throw DimensionError("excited level out of range");
  }
  std::vector<double> sector(n + 1, 0.0);
  for (std::size_t x = 0; x < s.dim(); ++x) {
    const auto ix = static_cast<Eigen::Index>(x);
    sector[excited_count(x, s.dims(), t)] += s.rho()(ix, ix).real();
  }
  double mu = 0.0;
  for (std::size_t m = 0; m <= n; ++m) mu += static_cast<double>(m) * sector[m];
  return mu;
}

double mean_excitation(const PureState& psi, Transition t) {
  double mu = 0.0;
  const auto p = psi.probabilities();
  for (std::size_t x = 0; x < p.size(); ++x) {
    mu += p[x] * static_cast<double>(excited_count(x, psi.dims(), t));
  }
  return mu;
}

double mean_excitation(const SymmetricState& s) { return single_emission_sum(s); }

double tradeoff_bound(const State& s) {
  require_qubits(s.dims());
  const double mu = mean_excitation(s);
  return mu * (static_cast<double>(s.dims().size()) - mu);
}

double tradeoff_bound(const SymmetricState& s) {
  const double mu = mean_excitation(s);
  return mu * (static_cast<double>(s.n_spins()) - mu);
}

// Entropies -------------------------------------------------------------------

double shannon_entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

double von_neumann_entropy(const State& s) {
  const RealVector& l = s.spectrum().values;
  return shannon_entropy(std::vector<double>(l.data(), l.data() + l.size()));
}

double rel_entropy_coherence(const State& s) {
  std::vector<double> diag(s.dim());
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    diag[i] = std::max(0.0, s.rho()(ii, ii).real());
  }
  return std::max(0.0, shannon_entropy(diag) - von_neumann_entropy(s));
}

double rel_entropy_coherence(const PureState& psi) {
  return shannon_entropy(psi.probabilities());
}

double entanglement_entropy(const PureState& psi,
                            const std::vector<std::size_t>& side_a) {
  const Dims& dims = psi.dims();
  std::vector<std::size_t> a(side_a);
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  if (a.empty() || a.size() >= dims.size()) {
    throw DimensionError("entanglement_entropy: cut must leave both sides nonempty");
  }
  for (auto i : a) {
    if (i >= dims.size()) throw DimensionError("entanglement_entropy: index out of range");
  }
  std::vector<std::size_t> b;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (!std::binary_search(a.begin(), a.end(), i)) b.push_back(i);
  }
  Dims da, db;
  for (auto i : a) da.push_back(dims[i]);
  for (auto i : b) db.push_back(dims[i]);

  // Reshape amplitudes into a (d_A x d_B) coefficient matrix.
  Matrix coeff = Matrix::Zero(static_cast<Eigen::Index>(product(da)),
                              static_cast<Eigen::Index>(product(db)));
  std::vector<std::size_t> ad(a.size()), bd(b.size());
  for (std::size_t x = 0; x < psi.dim(); ++x) {
    const auto dig = digits_of(x, dims);
    for (std::size_t i = 0; i < a.size(); ++i) ad[i] = dig[a[i]];
    for (std::size_t i = 0; i < b.size(); ++i) bd[i] = dig[b[i]];
    coeff(static_cast<Eigen::Index>(index_of(ad, da)),
          static_cast<Eigen::Index>(index_of(bd, db))) =
        psi.amplitudes()(static_cast<Eigen::Index>(x));
  }
  Eigen::JacobiSVD<Matrix> svd(coeff);
  std::vector<double> schmidt;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    const double sv = svd.singularValues()(i);
    schmidt.push_back(sv * sv);
  }
  return shannon_entropy(schmidt);
}

}  // namespace qres
