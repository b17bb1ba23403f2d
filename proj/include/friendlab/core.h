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

#ifndef FRIENDLAB_CORE_H_
#define FRIENDLAB_CORE_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace friendlab {

// Ordered token identifiers. Tokens never contain whitespace.
using TokenSeq = std::vector<std::string>;

// A real number in [0, 1]. Construction outside the range throws.
class Score {
 public:
  Score() = default;
  explicit Score(double value);

  double value() const { return value_; }
  explicit operator double() const { return value_; }

  friend bool operator==(Score a, Score b) = default;
  friend auto operator<=>(Score a, Score b) = default;

 private:
  double value_ = 0.0;
};

// (prod values)^(1/n). Exactly 0 when any value is 0. Throws
// std::invalid_argument("empty aggregate") on an empty list.
Score geometric_mean(std::span<const Score> values);
Score geometric_mean(std::span<const double> values);

// Token-level Levenshtein distance with unit costs.
std::size_t edit_distance(std::span<const std::string> a,
                          std::span<const std::string> b);

// 1 - dist(a,b) / max(|a|,|b|); two empty sequences score 1.
Score norm_edit_distance_score(std::span<const std::string> a,
                               std::span<const std::string> b);

// Length of the longest common subsequence.
std::size_t lcs_length(std::span<const std::string> a,
                       std::span<const std::string> b);

// Mixes a base seed with a stream index (splitmix64 finalizer). Used to
// derive independent seeds for shards, iterations and tasks.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Seeded generator with a platform-independent draw contract. Only raw
// mt19937_64 output is consumed; std distributions are avoided because
// their algorithms are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  // Uniform integer in [0, n). n must be positive.
  std::uint64_t uniform_index(std::uint64_t n);
  // Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);
  // Uniform double in [0, 1) with 53 random bits.
  double uniform01();
  bool bernoulli(double p) { return uniform01() < p; }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_index(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace friendlab

#endif  // FRIENDLAB_CORE_H_
