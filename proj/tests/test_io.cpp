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
#include "qres/io.hpp"

#include <sstream>

using namespace qres;

TEST_SUITE("io") {
  TEST_CASE("state round trip") {
    for (std::size_t t = 0; t < 10; ++t) {
      Rng rng = stream(81, t);
      const State s = random_mixed({2, 3}, 1 + t % 6, rng);
      const State back = state_from_json(parse_json(to_json(s).dump()));
      CHECK(back.dims() == s.dims());
      CHECK(oracle::max_abs(back.rho() - s.rho()) < 1e-15);
    }
  }

  TEST_CASE("pure state round trip and amplitude layout") {
    Rng rng = stream(82, 0);
    const PureState psi = random_pure({3}, rng);
    const Json j = to_json(psi);
    CHECK((pure_state_from_json(j).amplitudes() - psi.amplitudes()).norm() < 1e-15);
    const State as_rho = state_from_json(j);
    CHECK(oracle::max_abs(as_rho.rho() - psi.amplitudes() * psi.amplitudes().adjoint()) < 1e-15);
  }

  TEST_CASE("operator and channel round trip") {
    Rng rng = stream(83, 0);
    const Operator op(random_hermitian(4, rng), {2, 2});
    const Operator op2 = operator_from_json(parse_json(to_json(op).dump()));
    CHECK(op2.dims() == op.dims());
    CHECK(oracle::max_abs(op2.matrix() - op.matrix()) < 1e-15);

    const KrausChannel ch = random_incoherent_channel({3}, {2}, 3, rng);
    const KrausChannel ch2 = channel_from_json(parse_json(to_json(ch).dump()));
    CHECK(ch2.input_dims() == ch.input_dims());
    CHECK(ch2.output_dims() == ch.output_dims());
    REQUIRE(ch2.kraus_ops().size() == ch.kraus_ops().size());
    for (std::size_t k = 0; k < ch.kraus_ops().size(); ++k) {
      CHECK(oracle::max_abs(ch2.kraus_ops()[k] - ch.kraus_ops()[k]) < 1e-15);
    }
  }

  TEST_CASE("invalid documents are rejected") {
    CHECK_THROWS_AS(state_from_json(parse_json(R"({"dims":[2],"re":[[1,0],[0,1]],"im":[[0,0],[0,0]]})")),
                    InvariantError);
    CHECK_THROWS_AS(state_from_json(parse_json(R"({"dims":[2],"re":[[1,0]]})")), ParseError);
    CHECK_THROWS_AS(state_from_json(parse_json(R"({"dims":[3],"re":[[1,0],[0,0]],"im":[[0,0],[0,0]]})")),
                    ParseError);
    CHECK_THROWS_AS(channel_from_json(parse_json(R"({"in_dims":[2],"out_dims":[2],"kraus":[]})")),
                    ParseError);
  }

  TEST_CASE("malformed JSON reports line and column") {
    const std::string text = "{\n  \"dims\": [2],\n  \"re\": [[1, 0],, [0, 0]]\n}\n";
    try {
      parse_json(text, "state.json");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(e.column() > 0);
      const std::string what = e.what();
      CHECK(what.find("state.json:3:") == 0);
    }
  }

  TEST_CASE("number formatting") {
    CHECK(format_double(100.0) == "100");
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0 / 3.0) == "0.333333333333333");
    CHECK(format_double(2.5e-17) == "2.5e-17");
  }

  TEST_CASE("csv layout and round trip") {
    std::ostringstream s;
    const Json meta = {{"figure", "fig2"}, {"seed", 0}};
    write_csv(s, meta, {"p", "F"}, {{0.0, 100.0}, {0.5, 1.0 / 3.0}});
    const std::string text = s.str();
    CHECK(text.find('\r') == std::string::npos);
    CHECK(text.rfind("# {", 0) == 0);
    CHECK(text.find("\np,F\n0,100\n0.5,0.333333333333333\n") != std::string::npos);

    std::istringstream in(text);
    const CsvTable t = read_csv(in);
    CHECK(t.metadata == meta);
    CHECK(t.header == std::vector<std::string>{"p", "F"});
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[1][1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  }

  TEST_CASE("fuzz report serialization") {
    FuzzReport r;
    r.strategy = "pure_rel_entropy";
    r.trials = 3;
    r.seed = 9;
    Rng rng = stream(84, 0);
    r.violations.push_back(FuzzViolation{2, random_pure({2}, rng), {Matrix::Identity(2, 2)}, 1.5, 1.0});
    const Json j = to_json(r);
    CHECK(j.at("trials") == 3);
    CHECK(j.at("strategy") == "pure_rel_entropy");
    REQUIRE(j.at("violations").size() == 1);
    CHECK(j.at("violations")[0].at("seed_index") == 2);
    CHECK(j.at("violations")[0].contains("kraus"));
    CHECK(j.at("tolerances").contains("monotonicity"));
  }
}
