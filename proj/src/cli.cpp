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

#include "qres/cli.hpp"

#include "qres/io.hpp"
#include "qres/measures.hpp"
#include "qres/protocols.hpp"
#include "qres/suites.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>

namespace qres {

namespace {

constexpr double kSlopeLow = 1.9;
constexpr double kSlopeHigh = 2.1;

struct Output {
  std::string path;
  std::string format = "csv";
};

struct Table {
  Json metadata;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

void emit(const std::string& text, const Output& o, std::ostream& out) {
  if (o.path.empty()) {
    out << text;
  } else {
    write_text_file(o.path, text);
  }
}

Json json_number(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

std::string render(const Table& t, const std::string& format) {
  if (format == "json") {
    Json rows = Json::array();
    for (const auto& r : t.rows) {
      Json obj = Json::object();
      for (std::size_t i = 0; i < t.header.size(); ++i) obj[t.header[i]] = json_number(r[i]);
      rows.push_back(std::move(obj));
    }
    return Json{{"metadata", t.metadata}, {"rows", rows}}.dump(2) + "\n";
  }
  std::ostringstream s;
  write_csv(s, t.metadata, t.header, t.rows);
  return s.str();
}

Json base_metadata(const std::string& command, std::uint64_t seed) {
  return Json{{"command", command}, {"seed", seed}};
}

void add_output_options(CLI::App* sub, Output& o, bool with_format) {
  sub->add_option("--out", o.path, "Output file (default: stdout)");
  if (with_format) {
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  }
}

// tradeoff ------------------------------------------------------------------------

struct TradeoffArgs {
  std::size_t n = 20;
  std::size_t steps = 101;
  std::uint64_t seed = 0;
  Output out;
};

int cmd_tradeoff(const TradeoffArgs& a, std::ostream& out) {
  if (a.n < 2 || a.n % 2 != 0) throw DimensionError("--n must be even and >= 2");
  if (a.steps < 1) throw DimensionError("--steps must be >= 1");
  const auto pts = tradeoff_sweep(a.n, unit_grid(a.steps));
  Table t;
  t.metadata = base_metadata("tradeoff", a.seed);
  t.metadata["figure"] = "fig2";
  t.metadata["n"] = a.n;
  t.metadata["steps"] = a.steps;
  t.metadata["tolerances"] = Json{{"tradeoff", 1e-8}, {"qfi_pair_cutoff", tol::kQfiPairCutoff}};
  t.header = {"p", "F", "S", "mu", "bound"};
  for (const auto& p : pts) t.rows.push_back({p.p, p.F, p.S, p.mu, p.bound});
  emit(render(t, a.out.format), a.out, out);
  return kExitOk;
}

// dicke-compare ----------------------------------------------------------------

struct DickeArgs {
  std::size_t m = 20;
  std::size_t anchor = 10;
  std::size_t probe_spins = 1;
  std::size_t max_parts = 0;
  std::uint64_t seed = 0;
  Output out;
};

int cmd_dicke(const DickeArgs& a, std::ostream& out) {
  if (a.m < 2 || a.m > 64) throw DimensionError("--m must be in [2, 64]");
  if (a.anchor < 1 || a.anchor + 1 > a.m) throw DimensionError("--anchor must be in [1, m-1]");
  if (a.probe_spins < 1) throw DimensionError("--probe-spins must be >= 1");
  std::vector<std::size_t> ks;
  for (std::size_t k = 1; k < a.m; ++k) ks.push_back(k);
  const auto table = dicke_comparison(a.m, ks, a.anchor, ghz_fanout_strategy(a.probe_spins, a.max_parts));
  Table t;
  t.metadata = base_metadata("dicke-compare", a.seed);
  t.metadata["figure"] = "fig1";
  t.metadata["m"] = a.m;
  t.metadata["anchor"] = a.anchor;
  t.metadata["strategy"] = table.strategy;
  t.header = {"k", "m_k", "C_S_lower", "C_F_lower", "C_R", "C_S_norm", "C_F_norm", "C_R_norm"};
  for (const auto& r : table.rows) {
    t.rows.push_back({static_cast<double>(r.k), static_cast<double>(r.m_k), r.c_s, r.c_f, r.c_r,
                      r.c_s_norm, r.c_f_norm, r.c_r_norm});
  }
  emit(render(t, a.out.format), a.out, out);
  return kExitOk;
}

// heisenberg ---------------------------------------------------------------------

struct HeisenbergArgs {
  double lambda1 = 0.5;
  std::vector<std::size_t> n_list = {4, 8, 16, 32, 64};
  std::uint64_t seed = 0;
  Output out;
};

int cmd_heisenberg(const HeisenbergArgs& a, std::ostream& out, std::ostream& err) {
  if (!(a.lambda1 > 0.0 && a.lambda1 < 1.0)) {
    throw NoCoherenceError("--lambda1 must lie strictly between 0 and 1");
  }
  Vector amp(2);
  amp << std::sqrt(a.lambda1), std::sqrt(1.0 - a.lambda1);
  const ScalingFit fit = lemma1_scaling(PureState(amp, Dims{2}), a.n_list);
  Table t;
  t.metadata = base_metadata("heisenberg", a.seed);
  t.metadata["lambda1"] = a.lambda1;
  t.metadata["exponent"] = fit.slope;
  t.metadata["exponent_window"] = Json::array({kSlopeLow, kSlopeHigh});
  t.header = {"n", "phi", "tau", "mean_M", "var_M", "precision", "parity_closed_form",
              "quoted_closed_form"};
  for (const auto& r : fit.runs) {
    t.rows.push_back({static_cast<double>(r.n_spins), r.phi, r.tau, r.mean_M, r.var_M, r.precision,
                      lemma1_parity_precision(r.lambda1, r.lambda2, r.phi),
                      lemma1_quoted_precision(r.lambda1, r.lambda2, r.phi)});
  }
  emit(render(t, a.out.format), a.out, out);
  if (!(fit.slope >= kSlopeLow && fit.slope <= kSlopeHigh)) {
    err << "scaling exponent " << format_double(fit.slope) << " outside [1.9, 2.1]\n";
    return kExitInvariant;
  }
  return kExitOk;
}

// fuzz ------------------------------------------------------------------------------

struct FuzzArgs {
  std::string suite;
  std::size_t trials = 500;
  std::uint64_t seed = 0;
  Output out;
};

int cmd_fuzz(const FuzzArgs& a, std::ostream& out, std::ostream& err) {
  SuiteReport r;
  if (a.suite == "monotonicity") {
    r = monotonicity_suite(a.trials, a.seed);
  } else if (a.suite == "incoherence") {
    r = incoherence_suite(a.trials, a.seed);
  } else {
    r = tradeoff_suite(a.trials, a.seed);
  }
  Json j = r.to_json();
  j["metadata"] = base_metadata("fuzz", a.seed);
  emit(j.dump(2) + "\n", a.out, out);
  if (!r.violations.empty()) {
    err << r.violations.size() << " violation(s) in suite " << a.suite << "\n";
    return kExitFuzzViolation;
  }
  return kExitOk;
}

// measures --------------------------------------------------------------------------

struct MeasuresArgs {
  std::string state_path;
  std::string hamiltonian_path;
  Output out;
};

bool all_qubits(const Dims& d) {
  return std::all_of(d.begin(), d.end(), [](std::size_t x) { return x == 2; });
}

int cmd_measures(const MeasuresArgs& a, std::ostream& out) {
  const State s = state_from_json(read_json_file(a.state_path));
  const bool qubits = all_qubits(s.dims());
  std::optional<Operator> h;
  std::string h_name;
  if (!a.hamiltonian_path.empty()) {
    h = operator_from_json(read_json_file(a.hamiltonian_path));
    h_name = a.hamiltonian_path;
  } else if (qubits) {
    h = collective_sz(s.dims().size()).to_operator();
    h_name = "collective_sz";
  } else {
    throw DimensionError("--hamiltonian is required for non-qubit states");
  }
  if (h->dim() != s.dim()) throw DimensionError("Hamiltonian and state dimensions differ");
  if (!h->is_hermitian()) throw InvariantError("Hamiltonian is not Hermitian");

  Json j;
  j["hamiltonian"] = h_name;
  j["qfi"] = qfi(s, *h);
  j["variance"] = variance(s, *h);
  j["c_rel_entropy"] = rel_entropy_coherence(s);
  j["mean_excitation"] = mean_excitation(s);
  const bool multi = s.dims().size() >= 2;
  j["superradiance"] = multi ? Json(superradiant_quantity(s)) : Json(nullptr);
  if (qubits) {
    const double bound = tradeoff_bound(s);
    const double fz = qfi(s, collective_sz(s.dims().size())) / 4.0;
    j["tradeoff_bound"] = bound;
    j["tradeoff_slack"] = multi ? Json(bound - fz - superradiant_quantity(s)) : Json(nullptr);
  } else {
    j["tradeoff_bound"] = nullptr;
    j["tradeoff_slack"] = nullptr;
  }
  emit(j.dump(2) + "\n", a.out, out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coherence resource numerics", "qres"};
  app.require_subcommand(1);

  TradeoffArgs ta;
  auto* tradeoff = app.add_subcommand("tradeoff", "QFI/superradiance trade-off sweep");
  tradeoff->add_option("--n", ta.n, "Number of spins (even)");
  tradeoff->add_option("--steps", ta.steps, "Grid points on p in [0, 1]");
  tradeoff->add_option("--seed", ta.seed, "Seed (echoed in metadata)");
  add_output_options(tradeoff, ta.out, true);

  DickeArgs da;
  auto* dicke = app.add_subcommand("dicke-compare", "Dicke-state resource lower bounds");
  dicke->add_option("--m", da.m, "Number of qubits");
  dicke->add_option("--anchor", da.anchor, "k used for normalization");
  dicke->add_option("--probe-spins", da.probe_spins, "Spins per GHZ probe");
  dicke->add_option("--max-parts", da.max_parts, "Cap on probes (0 = m)");
  dicke->add_option("--seed", da.seed, "Seed (echoed in metadata)");
  add_output_options(dicke, da.out, true);

  HeisenbergArgs ha;
  auto* heis = app.add_subcommand("heisenberg", "Incoherent metrology scaling fit");
  heis->add_option("--lambda1", ha.lambda1, "Weight of the first probe level");
  heis->add_option("--n-list", ha.n_list, "Comma-separated N values")->delimiter(',');
  heis->add_option("--seed", ha.seed, "Seed (echoed in metadata)");
  add_output_options(heis, ha.out, true);

  FuzzArgs fa;
  auto* fuzz = app.add_subcommand("fuzz", "Randomized property suites");
  fuzz->add_option("--suite", fa.suite, "monotonicity, incoherence or tradeoff")
      ->required()
      ->check(CLI::IsMember({"monotonicity", "incoherence", "tradeoff"}));
  fuzz->add_option("--trials", fa.trials, "Number of trials");
  fuzz->add_option("--seed", fa.seed, "Seed");
  add_output_options(fuzz, fa.out, false);

  MeasuresArgs ma;
  auto* meas = app.add_subcommand("measures", "Resource quantities of a state file");
  meas->add_option("--state", ma.state_path, "State JSON file")->required();
  meas->add_option("--hamiltonian", ma.hamiltonian_path, "Hamiltonian JSON file");
  add_output_options(meas, ma.out, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (tradeoff->parsed()) return cmd_tradeoff(ta, out);
    if (dicke->parsed()) return cmd_dicke(da, out);
    if (heis->parsed()) return cmd_heisenberg(ha, out, err);
    if (fuzz->parsed()) return cmd_fuzz(fa, out, err);
    if (meas->parsed()) return cmd_measures(ma, out);
  } catch (const InvariantError& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace qres
