// Copyright 2026 The Friendlab Authors.
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

#include <cmath>

#include "friendlab/theory.h"
#include "test_main.h"

using namespace friendlab;

// Values from an exact rational evaluation of the four agreement terms
// done outside this code base.
TEST_CASE("closed form against exact rational evaluation") {
  struct Row {
    TheoryParams p;
    double error, agree;
  };
  const Row rows[] = {
      {{0.7, 0.8, 50}, 0.0084985835694051, 0.567624},
      {{0.3, 0.3, 1000}, 0.002327901563019621, 0.09042049},
      {{0.5, 0.5, 1}, 0.5, 1.0},
      {{0.9, 0.6, 10}, 0.01098901098901099, 0.5824},
      {{0.3, 0.3, 1000000}, 2.3333278889015926e-06, 0.09000042000049},
  };
  for (const Row& r : rows) {
    TheoryResult t = closed_form(r.p);
    CHECK(t.error_rate == doctest::Approx(r.error).epsilon(1e-12));
    CHECK(t.agreement_rate == doctest::Approx(r.agree).epsilon(1e-12));
  }
  CHECK(std::abs(closed_form({0.7, 0.8, 50}).error_rate - 0.00850) <= 1e-4);
}

TEST_CASE("closed form limiting cases") {
  CHECK(closed_form({1.0, 1.0, 7}).error_rate == 0.0);
  for (int i = 0; i < 10; ++i) {
    const double eta_a = 0.05 + 0.1 * i;
    const double eta_b = 0.95 - 0.1 * i;
    CHECK(std::abs(closed_form({eta_a, eta_b, 1}).error_rate - (1.0 - eta_a)) < 1e-15);
  }
  CHECK(closed_form({0.0, 0.0, 1000000000}).error_rate == 1.0);
  CHECK_THROWS_AS(closed_form({1.2, 0.5, 3}), std::invalid_argument);
  CHECK_THROWS_AS(closed_form({0.5, 0.5, 0}), std::invalid_argument);
}

TEST_CASE("closed form is nonincreasing in sigma") {
  double prev = 2.0;
  for (std::int64_t s : {1, 2, 5, 10, 50, 100, 1000, 1000000}) {
    const double e = closed_form({0.3, 0.3, s}).error_rate;
    CHECK(e <= prev);
    prev = e;
  }
  CHECK(prev < 1e-4);
}

TEST_CASE("Monte Carlo agrees with the closed form") {
  for (TheoryParams p : {TheoryParams{0.7, 0.8, 50}, TheoryParams{0.5, 0.5, 1},
                         TheoryParams{0.9, 0.6, 10}}) {
    TheoryResult mc = monte_carlo(p, 400000, 3);
    TheoryResult cf = closed_form(p);
    CHECK(std::abs(mc.error_rate - cf.error_rate) < 0.005);
    CHECK(std::abs(mc.agreement_rate - cf.agreement_rate) < 0.005);
    CHECK(std::abs(mc.Z - cf.Z) < 0.005);
  }
}

TEST_CASE("uniform translation noise shows the both-wrong discrepancy") {
  // With translations uniform over Sigma two wrong predictions meet with
  // probability eps instead of eps^2; at (0.9, 0.6, 10) that moves the
  // error rate by about 0.006.
  TheoryParams p{0.9, 0.6, 10};
  const double eps = 0.1;
  const double z = 0.9 * (0.6 + eps * 0.4), fp = 0.6 * eps * 0.1, e = eps * 0.1 * 0.4;
  const double uniform_error = (fp + e) / (z + fp + e);
  TheoryResult mc = monte_carlo(p, 1000000, 4, TranslationNoise::kUniform);
  CHECK(std::abs(mc.error_rate - uniform_error) < 0.003);
  CHECK(std::abs(mc.error_rate - closed_form(p).error_rate) > 0.004);
}

TEST_CASE("parallel and serial Monte Carlo are identical") {
  TheoryParams p{0.6, 0.7, 20};
  for (std::uint64_t n : {1ull, 1000ull, 65536ull, 65537ull, 300000ull}) {
    TheoryResult a = monte_carlo(p, n, 11);
    TheoryResult b = monte_carlo_serial(p, n, 11);
    CHECK(a.error_rate == b.error_rate);
    CHECK(a.agreement_rate == b.agreement_rate);
  }
  CHECK_THROWS_AS(monte_carlo(p, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(monte_carlo({0.5, 0.5, 1}, 10, 1, TranslationNoise::kNeverGold),
                  std::invalid_argument);
}

TEST_CASE("sweep grid parsing and table") {
  auto grid = parse_grid("eta_a=0.3;eta_b=0.3,0.5;sigma=1,10,100");
  REQUIRE(grid.size() == 6);
  SweepTable t = sweep(grid, 20000, 5);
  CHECK(t.monotone);
  CHECK(t.rows.size() == 6);
  const std::string csv = sweep_csv(t);
  CHECK(csv.rfind("eta_a,eta_b,sigma,closed_error,mc_error,closed_agree,mc_agree,n_samples,seed\n",
                  0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
  CHECK_THROWS_AS(parse_grid("eta_a=0.3;eta_b=0.3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("eta_a=0.3;eta_b=0.3;sigma=1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("eta_a=0.3;eta_b=x;sigma=1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("gamma=1;eta_a=0.3;eta_b=0.3;sigma=1"), std::invalid_argument);
  CHECK_THROWS_AS(sweep({}, 10, 1), std::invalid_argument);
}
