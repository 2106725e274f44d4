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

#include "qres/suites.hpp"

#include "qres/measures.hpp"
#include "qres/parallel.hpp"

#include <algorithm>
#include <optional>

namespace qres {

namespace {

constexpr double kMonotoneTol = 1e-8;
constexpr double kLeakTol = 1e-9;
constexpr double kTradeoffTol = 1e-8;
constexpr std::size_t kDiagonalProbes = 5;

// Distinct stream families per suite so suites never share draws.
constexpr std::uint64_t kIncoherenceSalt = 0x1000;
constexpr std::uint64_t kTradeoffSalt = 0x2000;

double max_offdiag(const Matrix& m) {
  double w = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i != j) w = std::max(w, std::abs(m(i, j)));
    }
  }
  return w;
}

std::vector<Json> collect(std::vector<std::optional<Json>>& slots) {
  std::vector<Json> out;
  for (auto& s : slots) {
    if (s) out.push_back(std::move(*s));
  }
  return out;
}

}  // namespace

Json SuiteReport::to_json() const {
  return Json{{"suite", suite},
              {"trials", trials},
              {"seed", seed},
              {"details", details},
              {"violation_count", violations.size()},
              {"violations", violations}};
}

SuiteReport monotonicity_suite(std::size_t trials, std::uint64_t seed) {
  SuiteReport r{"monotonicity", trials, seed, Json::object(), {}};
  Json per = Json::array();
  for (const auto& f : {rel_entropy_functional(), superradiance_embedding_functional(),
                        trivial_coherence_functional()}) {
    FuzzOptions opts;
    opts.trials = trials;
    opts.seed = seed;
    const FuzzReport fr = monotonicity_fuzz(f, opts);
    const Json j = qres::to_json(fr);
    per.push_back(j);
    for (const auto& v : j["violations"]) {
      Json w = v;
      w["strategy"] = f.name;
      r.violations.push_back(std::move(w));
    }
  }
  r.details["strategies"] = per;
  return r;
}

SuiteReport incoherence_suite(std::size_t trials, std::uint64_t seed) {
  SuiteReport r{"incoherence", trials, seed, Json::object(), {}};
  const std::vector<Dims> shapes = {{2}, {3}, {2, 2}, {4}};
  std::vector<std::optional<Json>> found(trials);
  std::vector<double> leaks(trials, 0.0);
  parallel_for(trials, [&](std::size_t i) {
    Rng rng = stream(seed ^ kIncoherenceSalt, i);
    const Dims& dims = shapes[i % shapes.size()];
    std::uniform_int_distribution<std::size_t> pick_ops(1, 4);
    const KrausChannel ch = random_incoherent_channel(dims, dims, pick_ops(rng), rng);
    auto report = [&](const char* kind, double lhs, double rhs) {
      found[i] = Json{{"seed_index", i}, {"kind", kind}, {"lhs", lhs}, {"rhs", rhs},
                      {"channel", qres::to_json(ch)}};
    };
    const IncoherenceReport cert = is_incoherent(ch);
    if (!cert.incoherent) {
      report("certificate", cert.max_offdiagonal, kLeakTol);
      return;
    }
    double leak = 0.0;
    for (std::size_t t = 0; t < kDiagonalProbes; ++t) {
      leak = std::max(leak, max_offdiag(apply(ch, random_diagonal(dims, rng)).rho()));
    }
    leaks[i] = leak;
    if (leak > kLeakTol) {
      report("diagonal_leak", leak, kLeakTol);
      return;
    }
    std::uniform_int_distribution<std::size_t> pick_rank(1, product(dims));
    const State rho = random_mixed(dims, pick_rank(rng), rng);
    const double before = rel_entropy_coherence(rho);
    const double after = rel_entropy_coherence(apply(ch, rho));
    if (after > before + kMonotoneTol) {
      report("monotonicity", after, before);
      return;
    }
    double avg = 0.0;
    for (const auto& o : apply_selective(ch, rho)) avg += o.probability * rel_entropy_coherence(o.state);
    if (avg > before + kMonotoneTol) report("strong_monotonicity", avg, before);
  });
  r.violations = collect(found);
  r.details["max_diagonal_leak"] = leaks.empty() ? 0.0 : *std::max_element(leaks.begin(), leaks.end());
  r.details["tolerances"] = Json{{"monotonicity", kMonotoneTol}, {"leak", kLeakTol}};
  return r;
}

SuiteReport tradeoff_suite(std::size_t trials, std::uint64_t seed) {
  SuiteReport r{"tradeoff", trials, seed, Json::object(), {}};
  std::vector<std::optional<Json>> found(trials);
  std::vector<double> slack(trials, 0.0);
  parallel_for(trials, [&](std::size_t i) {
    Rng rng = stream(seed ^ kTradeoffSalt, i);
    const std::size_t n = 2 + i % 5;
    const Dims dims(n, 2);
    const std::size_t dim = product(dims);
    // Mix generic states with pure and symmetric ones, which sit closer to
    // the boundary.
    std::optional<State> rho;
    switch ((i / 5) % 3) {
      case 0: {
        std::uniform_int_distribution<std::size_t> pick(1, std::min<std::size_t>(dim, 4));
        rho = random_mixed(dims, pick(rng), rng);
        break;
      }
      case 1:
        rho = State::from_pure(random_pure(dims, rng));
        break;
      default: {
        std::uniform_int_distribution<std::size_t> pick(1, n + 1);
        rho = from_symmetric(random_symmetric(n, pick(rng), rng));
        break;
      }
    }
    const double s = superradiant_quantity(*rho);
    const double f = qfi(*rho, collective_sz(n)) / 4.0;
    const double bound = tradeoff_bound(*rho);
    slack[i] = bound - s - f;
    if (s + f > bound + kTradeoffTol) {
      found[i] = Json{{"seed_index", i}, {"n", n}, {"S", s}, {"F", f}, {"bound", bound},
                      {"state", qres::to_json(*rho)}};
    }
  });
  r.violations = collect(found);
  r.details["min_slack"] = slack.empty() ? 0.0 : *std::min_element(slack.begin(), slack.end());
  r.details["tolerance"] = kTradeoffTol;
  return r;
}

}  // namespace qres
