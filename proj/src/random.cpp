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

#include "qres/random.hpp"

#include <Eigen/QR>

#include <bit>
#include <cmath>

namespace qres {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng stream(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t a = splitmix64(seed);
  const std::uint64_t b = splitmix64(a ^ splitmix64(index + 0x632be59bd9b4e019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return Rng(seq);
}

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, M_SQRT1_2);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = cplx(re, im);
    }
  }
  return m;
}

Matrix haar_isometry(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  if (cols > rows) throw DimensionError("isometry needs rows >= cols");
  const Matrix g = gaussian_matrix(rows, cols, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  const Matrix r = qr.matrixQR().topLeftCorner(cols, cols);
  // Fix the phase of each column so the distribution is Haar.
  for (Eigen::Index k = 0; k < cols; ++k) {
    const cplx d = r(k, k);
    const double a = std::abs(d);
    if (a > 0.0) q.col(k) *= d / a;
  }
  return q;
}

Matrix haar_unitary(Eigen::Index dim, Rng& rng) { return haar_isometry(dim, dim, rng); }

Matrix random_hermitian(Eigen::Index dim, Rng& rng) {
  const Matrix g = gaussian_matrix(dim, dim, rng);
  return 0.5 * (g + g.adjoint());
}

PureState random_pure(const Dims& dims, Rng& rng) {
  Vector v = gaussian_matrix(static_cast<Eigen::Index>(product(dims)), 1, rng).col(0);
  v.normalize();
  return PureState(std::move(v), dims);
}

State random_mixed(const Dims& dims, std::size_t rank, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(product(dims));
  if (rank == 0 || static_cast<Eigen::Index>(rank) > d) {
    throw DimensionError("random_mixed: rank must be in [1, dim]");
  }
  const Matrix g = gaussian_matrix(d, static_cast<Eigen::Index>(rank), rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return State(0.5 * (rho + rho.adjoint()), dims);
}

State random_diagonal(const Dims& dims, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(product(dims));
  std::exponential_distribution<double> expo(1.0);
  RealVector w(d);
  for (Eigen::Index i = 0; i < d; ++i) w(i) = expo(rng);
  w /= w.sum();
  Matrix rho = w.cast<cplx>().asDiagonal();
  return State(std::move(rho), dims);
}

SymmetricState random_symmetric(std::size_t n, std::size_t rank, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(n + 1);
  if (rank == 0 || static_cast<Eigen::Index>(rank) > d) {
    throw DimensionError("random_symmetric: rank must be in [1, N+1]");
  }
  const Matrix g = gaussian_matrix(d, static_cast<Eigen::Index>(rank), rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return SymmetricState(n, 0.5 * (rho + rho.adjoint()));
}

State random_sector_state(std::size_t n, std::size_t m, std::size_t rank, Rng& rng) {
  if (m > n) throw DimensionError("random_sector_state: excitation count exceeds N");
  std::vector<Eigen::Index> sector;
  for (std::size_t x = 0; x < (std::size_t{1} << n); ++x) {
    if (static_cast<std::size_t>(std::popcount(x)) == m) {
      sector.push_back(static_cast<Eigen::Index>(x));
    }
  }
  const auto ds = static_cast<Eigen::Index>(sector.size());
  const auto r = std::min<Eigen::Index>(static_cast<Eigen::Index>(rank), ds);
  const Matrix g = gaussian_matrix(ds, r, rng);
  Matrix small = g * g.adjoint();
  small /= small.trace().real();
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  Matrix rho = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < ds; ++i) {
    for (Eigen::Index j = 0; j < ds; ++j) rho(sector[i], sector[j]) = small(i, j);
  }
  return State(0.5 * (rho + rho.adjoint()), Dims(n, 2));
}

}  // namespace qres
