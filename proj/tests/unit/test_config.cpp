// Copyright 2026 The edgecert Authors.
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

#include "edgecert/errors.hpp"
#include "runner/config.hpp"

using namespace edgecert;
using namespace edgecert::runner;

TEST_CASE("parse a typical config") {
  const ExperimentConfig cfg = parse_config(R"(
# fixture
config_version = 1
dataset = sbm
sbm.center_scale = 3.0
train.epochs = 20
smoothing.beta_drop = 0.9
smoothing.mu = 200
smoothing.k_grid = 0,2,4
smoothing.delta_mode = paper
smoothing.delta_e = 12
attack.mode = global
attack.rate = 0.05
seed = 7
)");
  CHECK(cfg.sbm.center_scale == 3.0);
  CHECK(cfg.train.epochs == 20);
  CHECK(cfg.smoothing.spec.beta_drop == 0.9);
  CHECK(cfg.k_grid == std::vector<std::size_t>{0, 2, 4});
  CHECK(cfg.smoothing.policy.mode == DeltaMode::kPaper);
  CHECK(cfg.smoothing.policy.fixed_e == std::optional<std::size_t>(12));
  CHECK(cfg.attack.mode == AttackMode::kGlobal);
  CHECK(cfg.seed == 7);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config("no_such_key = 1\n"), ParseError);
  CHECK_THROWS_AS(parse_config("seed 4\n"), ParseError);
  CHECK_THROWS_AS(parse_config("smoothing.delta_mode = fancy\n"), ParseError);
  CHECK_THROWS_AS(parse_config("config_version = 99\n"), ParseError);
  CHECK_THROWS_AS(parse_config("smoothing.alpha = 1.5\n"), DomainError);
  CHECK_THROWS_AS(parse_config("split.train = 0.5\n"), DomainError);
  CHECK_THROWS_AS(parse_config("smoothing.beta_drop = 1.0\n"), DomainError);
  CHECK_THROWS_AS(parse_config("dataset = files\n"), DomainError);
  try {
    parse_config("seed = 1\n\nbogus = 2\n", "x.cfg");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("x.cfg") != std::string::npos);
    CHECK(std::string(e.what()).find('3') != std::string::npos);
  }
}

TEST_CASE("canonical text round trips") {
  ExperimentConfig cfg = parse_config("seed = 11\nsmoothing.beta_drop = 0.7\nsbm.p_in = 0.123456789\n");
  const ExperimentConfig back = parse_config(to_config_text(cfg));
  CHECK(canonical_settings(back) == canonical_settings(cfg));
  CHECK(config_hash(back) == config_hash(cfg));
  CHECK(config_hash(cfg).size() == 16);
}

TEST_CASE("hash tracks results-relevant settings only") {
  const ExperimentConfig base = parse_config("");
  ExperimentConfig c = base;
  c.out = "/elsewhere";
  c.threads = 3;
  CHECK(config_hash(c) == config_hash(base));

  for (const char* change : {"seed = 1", "smoothing.mu = 201", "train.epochs = 199", "sbm.p_out = 0.02",
                             "attack.budget = 4", "smoothing.delta_mode = paper"}) {
    CHECK_MESSAGE(config_hash(parse_config(change)) != config_hash(base), change);
  }
}

TEST_CASE("stage seeds are distinct") {
  ExperimentConfig cfg;
  cfg.seed = 3;
  CHECK(stage_seed(cfg, "train") != stage_seed(cfg, "split"));
  CHECK(stage_seed(cfg, "train") == stage_seed(cfg, "train"));
  ExperimentConfig other = cfg;
  other.seed = 4;
  CHECK(stage_seed(cfg, "train") != stage_seed(other, "train"));
}
