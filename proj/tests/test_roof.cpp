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

#include <doctest.h>

#include "oracles.hpp"
#include "qres/roof.hpp"

#include <algorithm>
#include <random>

using namespace qres;

namespace {

std::vector<double> random_distribution(std::size_t n, Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(n);
  double s = 0.0;
  for (auto& x : p) s += (x = e(rng));
  for (auto& x : p) x /= s;
  return p;
}

// Descending partial sums compared directly, without the library's sorting.
bool majorizes_reference(std::vector<double> q, std::vector<double> r) {
  const std::size_t n = std::max(q.size(), r.size());
  q.resize(n, 0.0);
  r.resize(n, 0.0);
  std::sort(q.rbegin(), q.rend());
  std::sort(r.rbegin(), r.rend());
  long double sq = 0, sr = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sq += q[i];
    sr += r[i];
    if (sq < sr - 1e-12L) return false;
  }
  return true;
}

double l1_coherence(const PureState& psi) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) s += std::abs(psi.amplitudes()(i));
  return s * s - 1.0;
}

}  // namespace

TEST_SUITE("roof") {
  TEST_CASE("decomposition sampling examples") {
    Rng rng = stream(71, 0);
    const State pure = State::from_pure(random_pure({3}, rng));
    for (std::uint64_t seed : {0, 1, 99}) {
      const auto ens = sample_decompositions(pure, 5, 3, seed);
      REQUIRE(ens.size() == 1);
      CHECK(ens[0].members.size() == 1);
      CHECK(reconstruction_error(ens[0], pure) < 1e-12);
    }

    const State mixed(0.5 * Matrix::Identity(2, 2), {2});
    for (const auto& e : sample_decompositions(mixed, 20, 2, 7)) {
      REQUIRE(e.members.size() == 2);
      CHECK(std::abs(e.probabilities[0] - 0.5) < 1e-10);
      CHECK(std::abs(e.probabilities[1] - 0.5) < 1e-10);
      CHECK(std::abs(e.members[0].amplitudes().dot(e.members[1].amplitudes())) < 1e-10);
    }

    const State r2 = random_mixed({2, 2}, 2, rng);
    const auto many = sample_decompositions(r2, 100, 4, 8);
    CHECK(many.size() == 100);
    for (const auto& e : many) {
      CHECK(reconstruction_error(e, r2) < 1e-8);
      double tot = 0.0;
      for (double p : e.probabilities) {
        CHECK(p > 0.0);
        tot += p;
      }
      CHECK(std::abs(tot - 1.0) <= 1e-9);
    }
    CHECK_THROWS_AS(sample_decompositions(r2, 3, 1, 0), DimensionError);
  }

  TEST_CASE("roof examples") {
    Rng rng = stream(72, 0);
    const PureState psi = random_pure({3}, rng);
    for (const PureFunctional& f :
         {rel_entropy_functional(), superradiance_embedding_functional(), trivial_coherence_functional()}) {
      CHECK(convex_roof_upper(State::from_pure(psi), f) == doctest::Approx(f.evaluate(psi)).epsilon(1e-12));
    }

    const State diag = random_diagonal({2, 2}, rng);
    CHECK(convex_roof_upper(diag, superradiance_embedding_functional()) < 1e-12);

    const State mixed(0.5 * Matrix::Identity(2, 2), {2});
    RoofOptions o;
    o.samples = 200;
    CHECK(convex_roof_upper(mixed, rel_entropy_functional(), o) <= 1e-8);
  }

  TEST_CASE("roof upper bound never increases with more samples") {
    Rng rng = stream(73, 0);
    const State s = random_mixed({3}, 2, rng);
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t n : {1, 5, 20, 80, 200}) {
      RoofOptions o;
      o.samples = n;
      o.seed = 5;
      const double v = convex_roof_upper(s, rel_entropy_functional(), o);
      CHECK(v <= prev + 1e-15);
      CHECK(v >= 0.0);
      prev = v;
    }
  }

  TEST_CASE("roof over a mixed pool is convex") {
    for (std::size_t t = 0; t < 20; ++t) {
      Rng rng = stream(74, t);
      const State a = random_mixed({2}, 2, rng);
      const State b = random_mixed({2}, 2, rng);
      const double p = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
      const auto ea = sample_decompositions(a, 30, 3, t);
      const auto eb = sample_decompositions(b, 30, 3, t + 100);
      std::vector<Ensemble> mixed_pool;
      for (std::size_t i = 0; i < ea.size(); ++i) {
        for (std::size_t j = 0; j < eb.size(); ++j) mixed_pool.push_back(mix_ensembles(p, ea[i], eb[j]));
      }
      const State mix(p * a.rho() + (1 - p) * b.rho(), {2});
      CHECK(reconstruction_error(mixed_pool.front(), mix) < 1e-8);
      const auto f = rel_entropy_functional();
      const double lhs = convex_roof_upper(mixed_pool, f);
      const double rhs = p * convex_roof_upper(ea, f) + (1 - p) * convex_roof_upper(eb, f);
      CHECK(lhs <= rhs + 1e-12);
    }
  }

  TEST_CASE("roof of relative entropy dominates the mixed-state measure") {
    for (std::size_t t = 0; t < 20; ++t) {
      Rng rng = stream(75, t);
      const State s = random_mixed({3}, 2, rng);
      RoofOptions o;
      o.samples = 50;
      CHECK(convex_roof_upper(s, rel_entropy_functional(), o) >= oracle::rel_entropy_coherence(s.rho()) - 1e-9);
    }
  }

  TEST_CASE("functionals") {
    Rng rng = stream(76, 0);
    for (std::size_t t = 0; t < 50; ++t) {
      const PureState psi = random_pure(t % 2 ? Dims{3} : Dims{2, 2}, rng);
      std::vector<double> p = psi.probabilities();
      CHECK(std::abs(rel_entropy_functional().evaluate(psi) - oracle::entropy_bits(p)) < 1e-12);
      CHECK(std::abs(superradiance_embedding_functional().evaluate(psi) - l1_coherence(psi)) < 1e-10);
      CHECK(trivial_coherence_functional().evaluate(psi) == 1.0);
    }
    const PureState g = make_ghz(2);
    CHECK(std::abs(superradiance_embedding_functional().evaluate(g) - 1.0) < 1e-12);
    CHECK(trivial_coherence_functional().evaluate(make_basis_state({1}, {2})) == 0.0);
  }

  TEST_CASE("superradiance of the raw state is not monotone") {
    // CNOT is incoherent but turns S = 0 into S = 1.
    Vector v = Vector::Zero(4);
    v(1) = v(3) = M_SQRT1_2;
    const PureState in(v, {2, 2});
    Matrix cx = Matrix::Zero(4, 4);
    cx(0, 0) = cx(1, 1) = cx(3, 2) = cx(2, 3) = 1.0;
    const KrausChannel c = KrausChannel::unitary(cx, {2, 2});
    CHECK(is_incoherent(c).incoherent);
    const PureState out = apply_unitary(c, in);
    CHECK(std::abs(oracle::superradiance(State::from_pure(in).rho(), 2)) < 1e-12);
    CHECK(std::abs(oracle::superradiance(State::from_pure(out).rho(), 2) - 1.0) < 1e-12);
    // The embedding value sees the coherence of the input already.
    const auto f = superradiance_embedding_functional();
    CHECK(f.evaluate(out) <= f.evaluate(in) + 1e-12);
  }

  TEST_CASE("majorization examples") {
    CHECK(majorizes({1.0, 0.0}, {0.5, 0.5}));
    CHECK_FALSE(majorizes({0.5, 0.5}, {1.0, 0.0}));
    CHECK(majorizes({0.5, 0.5}, {0.5, 0.5}));
    CHECK(majorizes(std::vector<double>(4, 0.25), std::vector<double>(6, 1.0 / 6.0)));
    CHECK_FALSE(majorizes(std::vector<double>(6, 1.0 / 6.0), std::vector<double>(4, 0.25)));
    CHECK_THROWS_AS(majorizes({0.5, 0.4}, {1.0}), InvariantError);
  }

  TEST_CASE("majorization is a preorder matching the partial-sum definition") {
    for (std::size_t t = 0; t < 1000; ++t) {
      Rng rng = stream(77, t);
      const std::size_t n = 2 + t % 5;
      const auto a = random_distribution(n, rng);
      const auto b = random_distribution(n, rng);
      const auto c = random_distribution(n, rng);
      CHECK(majorizes(a, a));
      CHECK(majorizes(a, b) == majorizes_reference(a, b));
      if (majorizes(a, b) && majorizes(b, c)) CHECK(majorizes(a, c));
    }
  }

  TEST_CASE("incoherent transformability examples") {
    Vector four = Vector::Constant(4, 0.5);
    CHECK(incoherent_transformable(make_dicke(4, 2), PureState(four, {2, 2})));
    Vector plus(2);
    plus << M_SQRT1_2, M_SQRT1_2;
    const PureState p(plus, {2});
    CHECK(incoherent_transformable(p, make_ghz(3)));
    CHECK_FALSE(incoherent_transformable(make_basis_state({0}, {2}), p));
    CHECK(incoherent_transformable(p, make_basis_state({0}, {2})));
  }

  TEST_CASE("transformability is transitive") {
    for (std::size_t t = 0; t < 200; ++t) {
      Rng rng = stream(78, t);
      const PureState a = random_pure({4}, rng);
      const PureState b = random_pure({4}, rng);
      const PureState c = random_pure({4}, rng);
      if (incoherent_transformable(a, b) && incoherent_transformable(b, c)) {
        CHECK(incoherent_transformable(a, c));
      }
      CHECK(incoherent_transformable(a, a));
    }
  }

  TEST_CASE("maximal coherent qubits") {
    CHECK(max_coherent_qubits(20, 10) == 17);
    CHECK(max_coherent_qubits(4, 2) == 2);
    for (std::size_t m = 0; m <= 64; m += 7) CHECK(max_coherent_qubits(m, 0) == 0);
    CHECK(binomial_exact(20, 10) == 184756U);
    CHECK(binomial_exact(64, 32) == 1832624140942590534ULL);
    CHECK(max_coherent_qubits(64, 32) == 60);
    for (std::size_t m = 1; m <= 64; ++m) {
      for (std::size_t k = 0; k <= m; ++k) {
        const std::size_t q = max_coherent_qubits(m, k);
        CHECK(q == max_coherent_qubits(m, m - k));
        const unsigned __int128 c = binomial_exact(m, k);
        CHECK(((unsigned __int128){1} << q) <= c);
        CHECK(((unsigned __int128){1} << (q + 1)) > c);
      }
    }
  }

  TEST_CASE("Dicke states reach their maximal coherent qubits") {
    for (std::size_t m = 2; m <= 20; ++m) {
      for (std::size_t k = 1; k < m; ++k) {
        const std::size_t q = max_coherent_qubits(m, k);
        CHECK(incoherent_transformable(dicke_distribution(m, k), coherent_qubits_distribution(q)));
        CHECK_FALSE(incoherent_transformable(dicke_distribution(m, k), coherent_qubits_distribution(q + 1)));
      }
    }
  }

  TEST_CASE("strong monotonicity fuzz") {
    for (const PureFunctional& f :
         {rel_entropy_functional(), superradiance_embedding_functional(), trivial_coherence_functional()}) {
      FuzzOptions o;
      o.trials = 500;
      o.seed = 3;
      const FuzzReport r = monotonicity_fuzz(f, o);
      CHECK(r.trials == 500);
      CHECK(r.strategy == f.name);
      CHECK(r.violations.empty());
    }
  }

  TEST_CASE("fuzz reports a planted violation") {
    PureFunctional bad{"support_size", Concavity::kConcave,
                       [](const PureState& psi) { return static_cast<double>(psi.dims()[0] - psi.support_size()); }};
    FuzzOptions o;
    o.trials = 100;
    const FuzzReport r = monotonicity_fuzz(bad, o);
    CHECK_FALSE(r.violations.empty());
    for (const auto& v : r.violations) CHECK(v.lhs > v.rhs);
  }
}
