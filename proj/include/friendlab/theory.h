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

// Error rate of pseudo-labels selected by total agreement between two
// independent classifiers whose predictions are translated into a shared
// space of size |Sigma|. A wrong prediction is translated onto any given
// point with probability eps = 1/|Sigma|.
//
//   Z = eta_a (eta_b + eps (1 - eta_b))      f_a correct and agreement
//   FP = eta_b eps (1 - eta_a)               f_a wrong, f_b correct
//   E = eps^2 (1 - eta_a)(1 - eta_b)         both wrong, translations meet
//   error = 1 - Z / (Z + FP + E)

#ifndef FRIENDLAB_THEORY_H_
#define FRIENDLAB_THEORY_H_

#include <cstdint>
#include <string>
#include <vector>

namespace friendlab {

struct TheoryParams {
  double eta_a = 0.0;
  double eta_b = 0.0;
  std::int64_t sigma_size = 1;

  double epsilon() const { return 1.0 / static_cast<double>(sigma_size); }
  void validate() const;
};

struct TheoryResult {
  double error_rate = 0.0;
  double agreement_rate = 0.0;
  double Z = 0.0;
  double E = 0.0;
};

TheoryResult closed_form(const TheoryParams& params);

// How a wrong prediction is translated in the simulator.
enum class TranslationNoise {
  // Lands on the gold point with probability eps; otherwise on a point
  // private to that classifier. Realizes the four agreement cases above
  // exactly, including eps^2 for two wrong predictions.
  kGoldHit,
  // Uniform over Sigma including gold. Two wrong predictions then meet
  // with probability eps, not eps^2.
  kUniform,
  // Uniform over Sigma without the gold point. Needs |Sigma| >= 2.
  kNeverGold,
};

struct MonteCarloCounts {
  std::uint64_t samples = 0;
  std::uint64_t agree = 0;
  std::uint64_t agree_a_correct = 0;
  std::uint64_t agree_both_wrong = 0;

  MonteCarloCounts& operator+=(const MonteCarloCounts& o);
  TheoryResult result() const;
};

// Samples are drawn in fixed-size shards; shard s uses
// derive_seed(seed, s). Counts are exact, so the result does not depend
// on how shards are spread over threads.
inline constexpr std::uint64_t kShardSamples = 1 << 16;

MonteCarloCounts simulate_shard(const TheoryParams& params, std::uint64_t samples,
                                std::uint64_t shard_seed, TranslationNoise noise);

// OpenMP over shards.
TheoryResult monte_carlo(const TheoryParams& params, std::uint64_t n_samples,
                         std::uint64_t seed,
                         TranslationNoise noise = TranslationNoise::kGoldHit);
// Single-threaded reference over the same shards.
TheoryResult monte_carlo_serial(const TheoryParams& params, std::uint64_t n_samples,
                                std::uint64_t seed,
                                TranslationNoise noise = TranslationNoise::kGoldHit);

struct SweepRow {
  TheoryParams params;
  TheoryResult closed;
  TheoryResult simulated;
  bool monotone_in_sigma = true;  // closed error <= that at the previous sigma
};

struct SweepTable {
  std::vector<SweepRow> rows;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  bool monotone = true;  // every row's flag holds
};

// Rows keep grid order. Monotonicity is checked within each (eta_a,
// eta_b) group after ordering by sigma. Throws on an empty grid.
SweepTable sweep(const std::vector<TheoryParams>& grid, std::uint64_t n_samples,
                 std::uint64_t seed,
                 TranslationNoise noise = TranslationNoise::kGoldHit);

// "eta_a=0.3;eta_b=0.3,0.5;sigma=1,10,100" -> cartesian product.
std::vector<TheoryParams> parse_grid(const std::string& text);

std::string sweep_csv(const SweepTable& table);

}  // namespace friendlab

#endif  // FRIENDLAB_THEORY_H_
