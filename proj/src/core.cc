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

#include "friendlab/core.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace friendlab {

Score::Score(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::invalid_argument("score out of [0,1]: " +
                                std::to_string(value));
  }
}

Score geometric_mean(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("empty aggregate");
  double lo = 1.0, hi = 0.0, log_sum = 0.0;
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("geometric_mean: value out of [0,1]");
    }
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    if (v == 0.0) return Score(0.0);
    log_sum += std::log(v);
  }
  double gm = std::exp(log_sum / static_cast<double>(values.size()));
  // Rounding in exp/log must not push the mean outside [min, max].
  return Score(std::clamp(gm, lo, hi));
}

Score geometric_mean(std::span<const Score> values) {
  std::vector<double> raw;
  raw.reserve(values.size());
  for (Score s : values) raw.push_back(s.value());
  return geometric_mean(std::span<const double>(raw));
}

std::size_t edit_distance(std::span<const std::string> a,
                          std::span<const std::string> b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

Score norm_edit_distance_score(std::span<const std::string> a,
                               std::span<const std::string> b) {
  std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return Score(1.0);
  double d = static_cast<double>(edit_distance(a, b));
  return Score(1.0 - d / static_cast<double>(longest));
}

std::size_t lcs_length(std::span<const std::string> a,
                       std::span<const std::string> b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                    : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::uniform_index(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: empty range");
  // Rejection sampling keeps the draw exactly uniform.
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

int Rng::uniform_int(int lo, int hi) {
  if (hi < lo) throw std::invalid_argument("uniform_int: hi < lo");
  auto span = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo) + 1;
  return lo + static_cast<int>(uniform_index(span));
}

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

}  // namespace friendlab
