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

#include "qres/roof.hpp"

#include "qres/measures.hpp"
#include "qres/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

namespace qres {

namespace {

constexpr std::size_t kEmbeddingQubitCap = kDenseQubitCap;
constexpr std::size_t kDistributionCap = std::size_t{1} << 26;

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

void require_distribution(const std::vector<double>& p, const char* what) {
  CompensatedSum total;
  for (double x : p) {
    if (!std::isfinite(x) || x < -tol::kTrace) {
      throw InvariantError(std::string(what) + ": entries must be finite and nonnegative");
    }
    total.add(x);
  }
  if (std::abs(total.value() - 1.0) > tol::kTrace) {
    throw InvariantError(std::string(what) + ": entries must sum to 1");
  }
}

}  // namespace

double reconstruction_error(const Ensemble& e, const State& s) {
  Matrix acc = Matrix::Zero(s.rho().rows(), s.rho().cols());
  for (std::size_t i = 0; i < e.members.size(); ++i) {
    const Vector& v = e.members[i].amplitudes();
    acc.noalias() += e.probabilities[i] * (v * v.adjoint());
  }
  return (acc - s.rho()).cwiseAbs().maxCoeff();
}

Ensemble mix_ensembles(double p, const Ensemble& a, const Ensemble& b) {
  if (p < 0.0 || p > 1.0) throw DimensionError("mix_ensembles: weight outside [0, 1]");
  Ensemble out;
  for (std::size_t i = 0; i < a.members.size(); ++i) {
    out.probabilities.push_back(p * a.probabilities[i]);
    out.members.push_back(a.members[i]);
  }
  for (std::size_t i = 0; i < b.members.size(); ++i) {
    out.probabilities.push_back((1.0 - p) * b.probabilities[i]);
    out.members.push_back(b.members[i]);
  }
  return out;
}

PureFunctional rel_entropy_functional() {
  return {"pure_rel_entropy", Concavity::kConcave,
          [](const PureState& psi) { return rel_entropy_coherence(psi); }};
}

PureFunctional superradiance_embedding_functional() {
  return {"superradiance_embedding", Concavity::kConcave, [](const PureState& psi) {
            const std::size_t d = psi.dim();
            if (d < 2) return 0.0;
            if (d > kEmbeddingQubitCap) {
              throw DimensionError("superradiance embedding needs at most 12 levels");
            }
            Vector emb = Vector::Zero(static_cast<Eigen::Index>(std::size_t{1} << d));
            for (std::size_t i = 0; i < d; ++i) {
              const auto x = static_cast<Eigen::Index>(std::size_t{1} << (d - 1 - i));
              emb(x) = std::abs(psi.amplitudes()(static_cast<Eigen::Index>(i)));
            }
            emb.normalize();
            return std::max(0.0, superradiant_quantity(PureState(std::move(emb), Dims(d, 2))));
          }};
}

PureFunctional trivial_coherence_functional() {
  return {"trivial", Concavity::kConcave, [](const PureState& psi) {
            return psi.support_size() >= 2 ? 1.0 : 0.0;
          }};
}

double ensemble_value(const Ensemble& e, const PureFunctional& f) {
  double v = 0.0;
  for (std::size_t i = 0; i < e.members.size(); ++i) {
    v += e.probabilities[i] * f.evaluate(e.members[i]);
  }
  return v;
}

Ensemble eigen_ensemble(const State& s) {
  Ensemble e;
  const auto& sp = s.spectrum();
  for (Eigen::Index k = 0; k < sp.values.size(); ++k) {
    e.probabilities.push_back(sp.values(k));
    Vector v = sp.vectors.col(k);
    v.normalize();
    e.members.emplace_back(std::move(v), s.dims());
  }
  return e;
}

std::vector<Ensemble> sample_decompositions(const State& s, std::size_t count,
                                            std::size_t rank_extension, std::uint64_t seed) {
  if (count == 0) throw DimensionError("sample_decompositions: count must be >= 1");
  const std::size_t r = s.rank();
  if (rank_extension < r) {
    throw DimensionError("sample_decompositions: rank_extension below the rank");
  }
  if (r == 1) return {eigen_ensemble(s)};

  const auto& sp = s.spectrum();
  // Columns sqrt(lambda_k) e_k.
  Matrix scaled = sp.vectors;
  for (Eigen::Index k = 0; k < scaled.cols(); ++k) scaled.col(k) *= std::sqrt(sp.values(k));

  std::vector<Ensemble> out(count);
  parallel_for(count, [&](std::size_t i) {
    Rng rng = stream(seed, i);
    const Matrix u = haar_isometry(static_cast<Eigen::Index>(rank_extension),
                                   static_cast<Eigen::Index>(r), rng);
    const Matrix members = scaled * u.transpose();  // column i = sum_k U_ik sqrt(l_k) e_k
    Ensemble e;
    for (Eigen::Index m = 0; m < members.cols(); ++m) {
      const double p = members.col(m).squaredNorm();
      if (p <= 1e-15) continue;
      e.probabilities.push_back(p);
      e.members.emplace_back(members.col(m) / std::sqrt(p), s.dims());
    }
    out[i] = std::move(e);
  });
  return out;
}

double convex_roof_upper(const State& s, const PureFunctional& f, const RoofOptions& opts) {
  double best = ensemble_value(eigen_ensemble(s), f);
  if (s.rank() == 1 || opts.samples == 0) return best;
  const std::size_t ext = opts.rank_extension == 0 ? s.rank() + 2 : opts.rank_extension;
  for (const auto& e : sample_decompositions(s, opts.samples, ext, opts.seed)) {
    best = std::min(best, ensemble_value(e, f));
  }
  return best;
}

double convex_roof_upper(const std::vector<Ensemble>& pool, const PureFunctional& f) {
  if (pool.empty()) throw DimensionError("convex_roof_upper: empty pool");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : pool) best = std::min(best, ensemble_value(e, f));
  return best;
}

// Majorization ----------------------------------------------------------------------

bool majorizes(const std::vector<double>& q, const std::vector<double>& r) {
  require_distribution(q, "majorizes");
  require_distribution(r, "majorizes");
  std::vector<double> a = q, b = r;
  const std::size_t n = std::max(a.size(), b.size());
  a.resize(n, 0.0);
  b.resize(n, 0.0);
  std::sort(a.begin(), a.end(), std::greater<>());
  std::sort(b.begin(), b.end(), std::greater<>());
  CompensatedSum sa, sb;
  for (std::size_t i = 0; i < n; ++i) {
    sa.add(a[i]);
    sb.add(b[i]);
    if (sa.value() < sb.value() - tol::kMajorization) return false;
  }
  return true;
}

bool incoherent_transformable(const std::vector<double>& src_probs,
                              const std::vector<double>& dst_probs) {
  return majorizes(dst_probs, src_probs);
}

bool incoherent_transformable(const PureState& src, const PureState& dst) {
  return majorizes(dst.probabilities(), src.probabilities());
}

std::uint64_t binomial_exact(std::size_t n, std::size_t k) {
  if (n > 64) throw DimensionError("binomial_exact: n must be <= 64");
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (std::size_t i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
  return static_cast<std::uint64_t>(c);
}

std::size_t max_coherent_qubits(std::size_t m, std::size_t k) {
  if (k > m) throw DimensionError("max_coherent_qubits: k must be <= m");
  return static_cast<std::size_t>(std::bit_width(binomial_exact(m, k))) - 1;
}

std::vector<double> dicke_distribution(std::size_t m, std::size_t k) {
  if (k > m) throw DimensionError("dicke_distribution: k must be <= m");
  const std::uint64_t c = binomial_exact(m, k);
  if (c > kDistributionCap) throw DimensionError("dicke_distribution: support too large");
  return std::vector<double>(c, 1.0 / static_cast<double>(c));
}

std::vector<double> coherent_qubits_distribution(std::size_t q) {
  if (q > 26) throw DimensionError("coherent_qubits_distribution: q must be <= 26");
  const std::size_t n = std::size_t{1} << q;
  return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

// Strong-monotonicity fuzz ------------------------------------------------------

FuzzReport monotonicity_fuzz(const PureFunctional& f, const FuzzOptions& opts) {
  if (opts.dims.empty()) throw DimensionError("monotonicity_fuzz: no dims given");
  if (opts.max_ops == 0) throw DimensionError("monotonicity_fuzz: max_ops must be >= 1");
  FuzzReport report;
  report.strategy = f.name;
  report.trials = opts.trials;
  report.tolerance = opts.tolerance;
  report.seed = opts.seed;

  std::vector<std::optional<FuzzViolation>> found(opts.trials);
  parallel_for(opts.trials, [&](std::size_t i) {
    Rng rng = stream(opts.seed, i);
    const Dims& dims = opts.dims[i % opts.dims.size()];
    const PureState psi = random_pure(dims, rng);
    std::uniform_int_distribution<std::size_t> pick(1, opts.max_ops);
    const KrausChannel ch = random_incoherent_channel(dims, dims, pick(rng), rng);
    double lhs = 0.0;
    for (const auto& o : apply_selective(ch, psi)) lhs += o.probability * f.evaluate(o.state);
    const double rhs = f.evaluate(psi);
    if (lhs > rhs + opts.tolerance) found[i] = FuzzViolation{i, psi, ch.kraus_ops(), lhs, rhs};
  });
  for (auto& v : found) {
    if (v) report.violations.push_back(std::move(*v));
  }
  return report;
}

}  // namespace qres
