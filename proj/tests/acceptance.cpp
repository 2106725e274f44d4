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

// End-to-end acceptance checks. Prints one line per criterion and exits
// nonzero when any of them fails.

#include "oracles.hpp"
#include "qres/protocols.hpp"
#include "qres/roof.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace qres;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) note << "; failed: ";
      else note << ", ";
      note << what;
      pass = false;
    }
  }
};

bool run_criterion(int id, const std::string& title, double budget_s,
                   const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (dt > budget_s) {
    std::ostringstream s;
    s << "runtime " << dt << " s over " << budget_s << " s";
    o.require(false, s.str());
  }
  std::printf("criterion %d: %s %s (%.3f s)%s\n", id, o.pass ? "PASS" : "FAIL", title.c_str(), dt,
              o.note.str().c_str());
  std::fflush(stdout);
  return o.pass;
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

void fig2_endpoints(Outcome& o) {
  const double f = qfi(make_ghz_symmetric(20)) / 4.0;
  const double s = superradiant_quantity(make_dicke_symmetric(20, 10));
  o.note << " F(GHZ)=" << f << " S(Dicke)=" << s;
  o.require(close(f, 100.0, 1e-8), "qfi(GHZ)/4 != 100");
  o.require(close(s, 100.0, 1e-8), "S(Dicke(20,10)) != 100");
}

void fig2_boundary(Outcome& o) {
  const auto pts = tradeoff_sweep(20, unit_grid(101));
  double worst = 0.0, worst_sat = 0.0;
  for (const auto& p : pts) {
    worst = std::max(worst, std::abs(p.S + p.F - 100.0));
    worst_sat = std::max(worst_sat, std::abs(p.S + p.F - p.mu * (20.0 - p.mu)));
  }
  o.note << " points=" << pts.size() << " max|S+F-100|=" << worst << " max|S+F-mu(N-mu)|=" << worst_sat;
  o.require(pts.size() == 101, "expected 101 points");
  o.require(worst <= 1e-8, "S+F deviates from 100");
  o.require(worst_sat <= 1e-8, "bound not saturated");
}

void tradeoff_fuzz(Outcome& o) {
  std::size_t violations = 0;
  double min_slack = 1e300;
  for (std::size_t t = 0; t < 1000; ++t) {
    Rng rng = stream(0x3003, t);
    const std::size_t n = 2 + t % 5;
    const std::size_t rank = 1 + t % 4;
    const State s = random_mixed(Dims(n, 2), rank, rng);
    const double lhs = superradiant_quantity(s) + qfi(s, collective_sz(n)) / 4.0;
    const double slack = tradeoff_bound(s) - lhs;
    min_slack = std::min(min_slack, slack);
    if (slack < -1e-8) ++violations;
  }
  o.note << " violations=" << violations << " min_slack=" << min_slack;
  o.require(violations == 0, "trade-off inequality violated");
}

void lemma1_closed_form(Outcome& o) {
  double worst_quoted = 0.0, worst_dense = 0.0, worst_parity = 0.0;
  for (std::size_t t = 0; t < 20; ++t) {
    Rng rng = stream(0x4004, t);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double l1 = 0.5 + 0.45 * u(rng);
    const std::size_t n = 2 + t % 5;
    std::vector<Matrix> terms;
    double phi = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double gap = 0.2 + 1.8 * u(rng);
      Matrix h = Matrix::Zero(2, 2);
      h(0, 0) = -0.5 * gap;
      h(1, 1) = 0.5 * gap;
      terms.push_back(h);
      phi += gap;
    }
    const LocalHamiltonian h(terms);
    Vector amp(2);
    amp << std::sqrt(l1), std::polar(std::sqrt(1.0 - l1), 2.0 * M_PI * u(rng));
    const PureState probe(amp, {2});
    const MetrologyRun two = lemma1_run_optimal(probe, h, Lemma1Path::kTwoTerm);
    const MetrologyRun dense = lemma1_run_optimal(probe, h, Lemma1Path::kDense);
    const double quoted = lemma1_quoted_precision(l1, 1.0 - l1, phi);
    const double parity = lemma1_parity_precision(l1, 1.0 - l1, phi);
    worst_quoted = std::max(worst_quoted, std::abs(two.precision - quoted) / quoted);
    worst_dense = std::max(worst_dense, std::abs(two.precision - dense.precision) / two.precision);
    worst_parity = std::max(worst_parity, std::abs(two.precision - parity) / parity);
  }
  std::vector<std::size_t> ns;
  for (std::size_t n = 4; n <= 64; ++n) ns.push_back(n);
  Vector amp(2);
  amp << std::sqrt(0.7), std::sqrt(0.3);
  const ScalingFit fit = lemma1_scaling(PureState(amp, {2}), ns);
  o.note << " rel_err_vs_quoted=" << worst_quoted << " rel_err_dense_vs_two_term=" << worst_dense
         << " rel_err_vs_error_propagation=" << worst_parity << " exponent=" << fit.slope;
  o.require(worst_quoted <= 1e-8, "precision differs from (sqrt(l1)+sqrt(l2))^2/(2 phi^2)");
  o.require(worst_dense <= 1e-8, "dense and two-term paths disagree");
  o.require(std::abs(fit.slope - 2.0) <= 0.05, "scaling exponent outside 2 +- 0.05");
}

void fig1_shape(Outcome& o) {
  std::vector<std::size_t> ks;
  for (std::size_t k = 1; k < 20; ++k) ks.push_back(k);
  const DickeTable t = dicke_comparison(20, ks, 10);
  const auto col = [&](std::size_t i, int c) {
    const DickeRow& r = t.rows[i];
    return c == 0 ? r.c_s_norm : c == 1 ? r.c_f_norm : r.c_r_norm;
  };
  const std::size_t anchor = 9;  // row of k = 10
  for (int c = 0; c < 3; ++c) {
    o.require(close(col(anchor, c), 1.0, 1e-12), "normalized curves do not coincide at k=10");
    double top = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) top = std::max(top, col(i, c));
    o.require(close(top, col(anchor, c), 0.0), "maximum not at k=10");
    for (std::size_t i = 1; i < ks.size(); ++i) {
      if (i <= anchor) o.require(col(i, c) >= col(i - 1, c), "not increasing before k=10");
      else o.require(col(i, c) <= col(i - 1, c), "not decreasing after k=10");
    }
    for (std::size_t i = 0; i < ks.size(); ++i) {
      o.require(close(col(i, c), col(ks.size() - 1 - i, c), 1e-9), "not symmetric under k <-> m-k");
    }
  }
  o.note << " strategy=" << t.strategy << " C_F(k=1)/C_F(k=10)=" << t.rows[0].c_f_norm;
}

void interconversion(Outcome& o) {
  std::size_t mismatches = 0;
  double worst_2ab = 0.0;
  for (std::size_t t = 0; t < 200; ++t) {
    Rng rng = stream(0x6006, t);
    State q = random_diagonal({2}, rng);
    double two_ab = 0.0;
    if (t >= 50 && t < 125) {
      const PureState psi = random_pure({2}, rng);
      two_ab = 2.0 * std::abs(psi.amplitudes()(0)) * std::abs(psi.amplitudes()(1));
      q = State::from_pure(psi);
    } else if (t >= 125) {
      q = random_mixed({2}, 2, rng);
      two_ab = 2.0 * std::abs(q.rho()(0, 1));
    }
    const bool coherent = std::abs(q.rho()(0, 1)) > 1e-9;
    const Conversion s = coherence_to_superradiance(q);
    const Conversion e = coherence_to_entanglement(q);
    const double f = coherence_to_qfi(q);
    if ((s.value > 0.0) != coherent || (e.value > 0.0) != coherent || (f > 0.0) != coherent) ++mismatches;
    worst_2ab = std::max(worst_2ab, std::abs(s.value - two_ab));
  }
  o.note << " faithfulness_mismatches=" << mismatches << " max|S-2ab|=" << worst_2ab;
  o.require(mismatches == 0, "positivity does not track coherence");
  o.require(worst_2ab <= 1e-10, "S differs from 2ab");
}

void axiom_suites(Outcome& o) {
  std::size_t mono = 0, strong = 0;
  const std::vector<Dims> shapes = {{2}, {3}, {2, 2}, {4}};
  for (std::size_t t = 0; t < 500; ++t) {
    Rng rng = stream(0x7007, t);
    const Dims& d = shapes[t % shapes.size()];
    const KrausChannel ch = random_incoherent_channel(d, d, 1 + t % 4, rng);
    const State rho = random_mixed(d, 1 + t % product(d), rng);
    const double before = rel_entropy_coherence(rho);
    if (rel_entropy_coherence(apply(ch, rho)) > before + 1e-8) ++mono;
    double avg = 0.0;
    for (const auto& out : apply_selective(ch, rho)) avg += out.probability * rel_entropy_coherence(out.state);
    if (avg > before + 1e-8) ++strong;
  }
  std::size_t certified = 0;
  double leak = 0.0;
  for (std::size_t t = 0; certified < 100; ++t) {
    Rng rng = stream(0x7107, t);
    const Dims& d = shapes[t % shapes.size()];
    const KrausChannel ch = random_incoherent_channel(d, shapes[(t + 1) % shapes.size()], 1 + t % 5, rng);
    if (!is_incoherent(ch).incoherent) continue;
    ++certified;
    for (std::size_t k = 0; k < 100; ++k) {
      leak = std::max(leak, oracle::max_offdiag(apply(ch, random_diagonal(d, rng)).rho()));
    }
  }
  o.note << " monotonicity_violations=" << mono << " strong_violations=" << strong
         << " certified=" << certified << " max_leak=" << leak;
  o.require(mono == 0, "C_R increased");
  o.require(strong == 0, "C_R increased on average over outcomes");
  o.require(leak <= 1e-9, "certified channel leaked coherence");
}

void oracle_equivalences(Outcome& o) {
  double w_var = 0.0, w_sym_s = 0.0, w_sym_f = 0.0, w_lin = 0.0, w_sec = 0.0;
  for (std::size_t t = 0; t < 500; ++t) {
    Rng rng = stream(0x8008, t);
    const std::size_t n = 1 + t % 5;
    const PureState psi = random_pure(Dims(n, 2), rng);
    const Matrix rho = psi.amplitudes() * psi.amplitudes().adjoint();
    const Matrix h = oracle::total_sz(n);
    w_var = std::max(w_var, std::abs(qfi(psi, Operator(h, Dims(n, 2))) - 4.0 * oracle::variance(rho, h)));
  }
  for (std::size_t n = 2; n <= 12; ++n) {
    for (std::size_t t = 0; t < (n <= 8 ? 5U : 2U); ++t) {
      Rng rng = stream(0x8108, n * 100 + t);
      const SymmetricState sym = random_symmetric(n, 1 + t % 3, rng);
      const State dense = from_symmetric(sym);
      w_sym_s = std::max(w_sym_s, std::abs(superradiant_quantity(sym) - superradiant_quantity(dense)));
      w_sym_f = std::max(w_sym_f, std::abs(qfi(sym) - qfi(dense, collective_sz(n))));
    }
  }
  for (std::size_t t = 0; t < 100; ++t) {
    Rng rng = stream(0x8208, t);
    const std::size_t n = 2 + t % 3;
    const Dims dims(n, 2);
    const State a = random_mixed(dims, 2, rng);
    const State b = random_mixed(dims, 3, rng);
    const double p = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const State mix(p * a.rho() + (1.0 - p) * b.rho(), dims);
    w_lin = std::max(w_lin, std::abs(superradiant_quantity(mix) - p * superradiant_quantity(a) -
                                     (1.0 - p) * superradiant_quantity(b)));
    double sum = 0.0;
    for (std::size_t m = 0; m <= n; ++m) {
      const Matrix pi = excitation_projector(n, m).matrix();
      const Matrix block = pi * a.rho() * pi;
      const double pm = block.trace().real();
      if (pm > 1e-14) sum += pm * superradiant_quantity(State(block / pm, dims));
    }
    w_sec = std::max(w_sec, std::abs(superradiant_quantity(a) - sum));
  }
  o.note << " max|qfi-4var|=" << w_var << " sym_vs_dense_S=" << w_sym_s << " sym_vs_dense_qfi=" << w_sym_f
         << " linearity=" << w_lin << " sectors=" << w_sec;
  o.require(w_var <= 1e-8, "pure-state qfi != 4 var");
  o.require(w_sym_s <= 1e-9, "symmetric and dense superradiance differ");
  o.require(w_sym_f <= 1e-9, "symmetric and dense qfi differ");
  o.require(w_lin <= 1e-9, "superradiance not linear");
  o.require(w_sec <= 1e-9, "sector decomposition fails");
}

void majorization_pipeline(Outcome& o) {
  const std::size_t mk = max_coherent_qubits(20, 10);
  o.require(mk == 17, "max_coherent_qubits(20,10) != 17");
  std::size_t failures = 0, pairs = 0;
  for (std::size_t m = 2; m <= 20; ++m) {
    for (std::size_t k = 1; k < m; ++k) {
      ++pairs;
      if (!incoherent_transformable(dicke_distribution(m, k), coherent_qubits_distribution(max_coherent_qubits(m, k)))) {
        ++failures;
      }
    }
  }
  o.note << " m_20,10=" << mk << " pairs=" << pairs << " failures=" << failures;
  o.require(failures == 0, "Dicke state not transformable to m_k coherent qubits");
}

}  // namespace

int main() {
  bool ok = true;
  ok &= run_criterion(1, "GHZ and Dicke endpoints at N=20", 1.0, fig2_endpoints);
  ok &= run_criterion(2, "trade-off boundary saturation at N=20", 5.0, fig2_boundary);
  ok &= run_criterion(3, "trade-off inequality on 1000 random states", 120.0, tradeoff_fuzz);
  ok &= run_criterion(4, "incoherent metrology closed form and scaling", 30.0, lemma1_closed_form);
  ok &= run_criterion(5, "Dicke comparison curve shape at m=20", 1.0, fig1_shape);
  ok &= run_criterion(6, "coherence interconversion faithfulness", 10.0, interconversion);
  ok &= run_criterion(7, "incoherent channel axiom suites", 60.0, axiom_suites);
  ok &= run_criterion(8, "oracle equivalences", 120.0, oracle_equivalences);
  ok &= run_criterion(9, "majorization pipeline", 1.0, majorization_pipeline);
  return ok ? 0 : 1;
}
