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

#include "qres/states.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace qres {

namespace {

// Eigenvalues at or below this are treated as kernel.
constexpr double kSupportCutoff = 1e-14;

void require_dims(std::size_t dim, const Dims& dims) {
  if (dims.empty()) throw DimensionError("subsystem_dims is empty");
  for (auto d : dims) {
    if (d == 0) throw DimensionError("subsystem dimension must be positive");
  }
  if (product(dims) != dim) {
    std::ostringstream msg;
    msg << "product of subsystem_dims (" << product(dims)
        << ") does not match dimension " << dim;
    throw DimensionError(msg.str());
  }
}

bool all_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
        return false;
      }
    }
  }
  return true;
}

double hermitian_defect(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Spectrum support_of(const Eigen::SelfAdjointEigenSolver<Matrix>& es) {
  const RealVector& w = es.eigenvalues();
  std::vector<Eigen::Index> keep;
  // Descending order, largest weight first.
  for (Eigen::Index i = w.size() - 1; i >= 0; --i) {
    if (w(i) > kSupportCutoff) keep.push_back(i);
  }
  Spectrum sp;
  sp.values.resize(static_cast<Eigen::Index>(keep.size()));
  sp.vectors.resize(es.eigenvectors().rows(),
                    static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    auto col = static_cast<Eigen::Index>(k);
    sp.values(col) = w(keep[k]);
    sp.vectors.col(col) = es.eigenvectors().col(keep[k]);
  }
  return sp;
}

// Validates a density matrix in place and returns its support spectrum.
Spectrum validate_density(Matrix& rho) {
  if (!all_finite(rho)) throw InvariantError("density matrix has non-finite entries");
  const double herm = hermitian_defect(rho);
  if (herm > tol::kHermitian) {
    std::ostringstream msg;
    msg << "density matrix is not Hermitian (max defect " << herm << ")";
    throw InvariantError(msg.str());
  }
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > tol::kTrace) {
    std::ostringstream msg;
    msg << "density matrix trace is " << tr << ", expected 1";
    throw InvariantError(msg.str());
  }
  Matrix herm_part = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm_part);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -tol::kNegativeEigen) {
    std::ostringstream msg;
    msg << "density matrix is not positive semidefinite (min eigenvalue "
        << min_eig << ")";
    throw InvariantError(msg.str());
  }
  Spectrum sp = support_of(es);
  if (min_eig < 0.0) {
    // PSD repair: rebuild from the clipped spectrum.
    sp.values /= sp.values.sum();
    rho = sp.vectors * sp.values.cast<cplx>().asDiagonal() * sp.vectors.adjoint();
  } else {
    rho = herm_part / tr;
    sp.values /= tr;
  }
  return sp;
}

std::size_t popcount(std::size_t x) {
  return static_cast<std::size_t>(std::popcount(x));
}

void require_dense_qubits(std::size_t n, const char* what) {
  if (n > kDenseQubitCap) {
    std::ostringstream msg;
    msg << what << ": " << n << " qubits exceeds the dense cap of "
        << kDenseQubitCap << "; use the symmetric representation";
    throw DimensionError(msg.str());
  }
}

}  // namespace

std::size_t product(const Dims& dims) {
  std::size_t p = 1;
  for (auto d : dims) {
    if (__builtin_mul_overflow(p, d, &p)) throw DimensionError("dimension product overflows");
  }
  return p;
}

std::vector<std::size_t> digits_of(std::size_t index, const Dims& dims) {
  std::vector<std::size_t> out(dims.size());
  for (std::size_t i = dims.size(); i-- > 0;) {
    out[i] = index % dims[i];
    index /= dims[i];
  }
  return out;
}

std::size_t index_of(const std::vector<std::size_t>& digits, const Dims& dims) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) idx = idx * dims[i] + digits[i];
  return idx;
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return std::round(c);
}

// Operator ------------------------------------------------------------------

Operator::Operator(Matrix entries, Dims subsystem_dims)
    : entries_(std::move(entries)), dims_(std::move(subsystem_dims)) {
  if (entries_.rows() != entries_.cols()) {
    throw DimensionError("operator matrix must be square");
  }
  require_dims(dim(), dims_);
  if (!all_finite(entries_)) throw InvariantError("operator has non-finite entries");
}

bool Operator::is_hermitian(double tol) const {
  return hermitian_defect(entries_) <= tol;
}

// PureState -----------------------------------------------------------------

PureState::PureState(Vector amplitudes, Dims subsystem_dims)
    : amps_(std::move(amplitudes)), dims_(std::move(subsystem_dims)) {
  require_dims(dim(), dims_);
  if (!all_finite(amps_)) throw InvariantError("amplitudes are not finite");
  const double norm = amps_.norm();
  if (std::abs(norm - 1.0) > tol::kNorm) {
    std::ostringstream msg;
    msg << "pure state norm is " << norm << ", expected 1";
    throw InvariantError(msg.str());
  }
}

std::vector<double> PureState::probabilities() const {
  std::vector<double> p(dim());
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = std::norm(amps_(static_cast<Eigen::Index>(i)));
  }
  return p;
}

std::size_t PureState::support_size(double threshold) const {
  std::size_t n = 0;
  for (Eigen::Index i = 0; i < amps_.size(); ++i) {
    if (std::abs(amps_(i)) > threshold) ++n;
  }
  return n;
}

// State ---------------------------------------------------------------------

State::State(Matrix rho, Dims subsystem_dims,
             std::vector<std::vector<std::string>> basis_labels)
    : rho_(std::move(rho)),
      dims_(std::move(subsystem_dims)),
      labels_(std::move(basis_labels)) {
  if (rho_.rows() != rho_.cols()) throw DimensionError("density matrix must be square");
  require_dims(dim(), dims_);
  if (!labels_.empty()) {
    if (labels_.size() != dims_.size()) {
      throw DimensionError("basis_labels must have one entry per subsystem");
    }
    for (std::size_t i = 0; i < dims_.size(); ++i) {
      if (labels_[i].size() != dims_[i]) {
        throw DimensionError("basis_labels entry size must match subsystem dimension");
      }
    }
  }
  spectrum_ = validate_density(rho_);
}

State State::from_pure(const PureState& psi) {
  State s;
  s.dims_ = psi.dims();
  s.rho_ = psi.amplitudes() * psi.amplitudes().adjoint();
  s.spectrum_.values = RealVector::Ones(1);
  s.spectrum_.vectors = psi.amplitudes();
  return s;
}

State State::from_spectrum(const RealVector& weights, const Matrix& vectors,
                           Dims subsystem_dims) {
  if (weights.size() != vectors.cols()) {
    throw DimensionError("one weight per spectral vector is required");
  }
  require_dims(static_cast<std::size_t>(vectors.rows()), subsystem_dims);
  if (weights.size() == 0) throw InvariantError("empty spectrum");
  if (weights.minCoeff() < 0.0) throw InvariantError("negative spectral weight");
  if (std::abs(weights.sum() - 1.0) > tol::kTrace) {
    throw InvariantError("spectral weights must sum to 1");
  }
  const Matrix gram = vectors.adjoint() * vectors;
  const Matrix eye = Matrix::Identity(gram.rows(), gram.cols());
  if ((gram - eye).cwiseAbs().maxCoeff() > tol::kNorm) {
    throw InvariantError("spectral vectors are not orthonormal");
  }
  State s;
  s.dims_ = std::move(subsystem_dims);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (weights(i) > kSupportCutoff) keep.push_back(i);
  }
  s.spectrum_.values.resize(static_cast<Eigen::Index>(keep.size()));
  s.spectrum_.vectors.resize(vectors.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    const auto c = static_cast<Eigen::Index>(k);
    s.spectrum_.values(c) = weights(keep[k]);
    s.spectrum_.vectors.col(c) = vectors.col(keep[k]);
  }
  s.rho_ = s.spectrum_.vectors * s.spectrum_.values.cast<cplx>().asDiagonal() *
           s.spectrum_.vectors.adjoint();
  return s;
}

// SymmetricState --------------------------------------------------------------

SymmetricState::SymmetricState(std::size_t n_spins, Matrix rho_sym)
    : n_(n_spins), rho_(std::move(rho_sym)) {
  if (n_ == 0) throw DimensionError("symmetric state needs at least one spin");
  const auto d = static_cast<Eigen::Index>(n_ + 1);
  if (rho_.rows() != d || rho_.cols() != d) {
    throw DimensionError("symmetric density matrix must be (N+1)x(N+1)");
  }
  spectrum_ = validate_density(rho_);
}

std::vector<double> SymmetricState::excitation_distribution() const {
  std::vector<double> p(n_ + 1);
  for (std::size_t m = 0; m <= n_; ++m) {
    p[m] = rho_(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m)).real();
  }
  return p;
}

// Constructors ----------------------------------------------------------------

PureState make_dicke(std::size_t m, std::size_t k) {
  if (m == 0) throw DimensionError("Dicke state needs at least one spin");
  if (k > m) throw DimensionError("excitation count exceeds spin count");
  require_dense_qubits(m, "make_dicke");
  const std::size_t dim = std::size_t{1} << m;
  const double amp = 1.0 / std::sqrt(binomial(m, k));
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  for (std::size_t x = 0; x < dim; ++x) {
    if (popcount(x) == k) v(static_cast<Eigen::Index>(x)) = amp;
  }
  return PureState(std::move(v), Dims(m, 2));
}

SymmetricState make_dicke_symmetric(std::size_t m, std::size_t k) {
  if (m == 0) throw DimensionError("Dicke state needs at least one spin");
  if (k > m) throw DimensionError("excitation count exceeds spin count");
  const auto d = static_cast<Eigen::Index>(m + 1);
  Matrix rho = Matrix::Zero(d, d);
  rho(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = 1.0;
  return SymmetricState(m, std::move(rho));
}

PureState make_ghz(std::size_t n) {
  if (n == 0) throw DimensionError("GHZ state needs at least one spin");
  require_dense_qubits(n, "make_ghz");
  const std::size_t dim = std::size_t{1} << n;
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  v(0) = M_SQRT1_2;
  v(static_cast<Eigen::Index>(dim - 1)) = M_SQRT1_2;
  return PureState(std::move(v), Dims(n, 2));
}

SymmetricState make_ghz_symmetric(std::size_t n) {
  if (n == 0) throw DimensionError("GHZ state needs at least one spin");
  const auto d = static_cast<Eigen::Index>(n + 1);
  Vector v = Vector::Zero(d);
  v(0) = M_SQRT1_2;
  v(d - 1) = M_SQRT1_2;
  return SymmetricState(n, v * v.adjoint());
}

PureState make_basis_state(const std::vector<std::size_t>& digits,
                           const Dims& dims) {
  if (digits.size() != dims.size()) {
    throw DimensionError("one digit per subsystem is required");
  }
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (digits[i] >= dims[i]) throw DimensionError("basis digit out of range");
  }
  Vector v = Vector::Zero(static_cast<Eigen::Index>(product(dims)));
  v(static_cast<Eigen::Index>(index_of(digits, dims))) = 1.0;
  return PureState(std::move(v), dims);
}

PureState tensor(const PureState& a, const PureState& b) {
  Vector v(a.amplitudes().size() * b.amplitudes().size());
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
    v.segment(i * b.amplitudes().size(), b.amplitudes().size()) =
        a.amplitudes()(i) * b.amplitudes();
  }
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return PureState(std::move(v), std::move(dims));
}

State tensor(const State& a, const State& b) {
  const Eigen::Index da = a.rho().rows();
  const Eigen::Index db = b.rho().rows();
  Matrix out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) {
      out.block(i * db, j * db, db, db) = a.rho()(i, j) * b.rho();
    }
  }
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return State(std::move(out), std::move(dims));
}

State dephase(const State& s) {
  Matrix diag = s.rho().diagonal().asDiagonal();
  return State(std::move(diag), s.dims());
}

// Manipulation ----------------------------------------------------------------

State partial_trace(const State& s, const std::vector<std::size_t>& keep) {
  if (keep.empty()) throw DimensionError("partial_trace: keep set is empty");
  const Dims& dims = s.dims();
  std::vector<std::size_t> kept(keep);
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  for (auto k : kept) {
    if (k >= dims.size()) throw DimensionError("partial_trace: subsystem index out of range");
  }
  std::vector<std::size_t> traced;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (!std::binary_search(kept.begin(), kept.end(), i)) traced.push_back(i);
  }
  Dims kdims, tdims;
  for (auto k : kept) kdims.push_back(dims[k]);
  for (auto t : traced) tdims.push_back(dims[t]);
  const std::size_t dk = product(kdims);
  const std::size_t dt = product(tdims);

  // full_index[a * dt + t] for kept multi-index a and traced multi-index t
  std::vector<std::size_t> full_index(dk * dt);
  std::vector<std::size_t> digits(dims.size());
  for (std::size_t a = 0; a < dk; ++a) {
    const auto ad = digits_of(a, kdims);
    for (std::size_t t = 0; t < dt; ++t) {
      const auto td = digits_of(t, tdims);
      for (std::size_t i = 0; i < kept.size(); ++i) digits[kept[i]] = ad[i];
      for (std::size_t i = 0; i < traced.size(); ++i) digits[traced[i]] = td[i];
      full_index[a * dt + t] = index_of(digits, dims);
    }
  }
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  for (std::size_t a = 0; a < dk; ++a) {
    for (std::size_t b = 0; b < dk; ++b) {
      cplx acc = 0.0;
      for (std::size_t t = 0; t < dt; ++t) {
        acc += s.rho()(static_cast<Eigen::Index>(full_index[a * dt + t]),
                       static_cast<Eigen::Index>(full_index[b * dt + t]));
      }
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
    }
  }
  return State(std::move(out), std::move(kdims));
}

Matrix dicke_isometry(std::size_t n_spins) {
  require_dense_qubits(n_spins, "dicke_isometry");
  const std::size_t dim = std::size_t{1} << n_spins;
  Matrix v = Matrix::Zero(static_cast<Eigen::Index>(dim),
                          static_cast<Eigen::Index>(n_spins + 1));
  std::vector<double> amp(n_spins + 1);
  for (std::size_t m = 0; m <= n_spins; ++m) {
    amp[m] = 1.0 / std::sqrt(binomial(n_spins, m));
  }
  for (std::size_t x = 0; x < dim; ++x) {
    const auto m = popcount(x);
    v(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(m)) = amp[m];
  }
  return v;
}

SymmetricState to_symmetric(const State& s) {
  for (auto d : s.dims()) {
    if (d != 2) throw DimensionError("to_symmetric: all subsystems must be qubits");
  }
  const std::size_t n = s.dims().size();
  const Matrix v = dicke_isometry(n);
  Matrix sym = v.adjoint() * s.rho() * v;
  const double leaked = 1.0 - sym.trace().real();
  if (leaked > tol::kSymmetricLeak) {
    std::ostringstream msg;
    msg << "to_symmetric: state is not permutation symmetric (leaked weight "
        << leaked << ")";
    throw InvariantError(msg.str());
  }
  sym /= sym.trace().real();
  return SymmetricState(n, 0.5 * (sym + sym.adjoint()));
}

State from_symmetric(const SymmetricState& s) {
  const Matrix v = dicke_isometry(s.n_spins());
  const Spectrum& sp = s.spectrum();
  return State::from_spectrum(sp.values, v * sp.vectors, Dims(s.n_spins(), 2));
}

}  // namespace qres
