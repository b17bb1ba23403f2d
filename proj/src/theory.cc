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

#include "friendlab/theory.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "friendlab/core.h"

namespace friendlab {
namespace {

constexpr std::int64_t kGold = 0;
constexpr std::int64_t kMissA = -1;
constexpr std::int64_t kMissB = -2;

std::int64_t translate(bool correct, const TheoryParams& p, std::int64_t miss,
                       TranslationNoise noise, Rng& rng) {
  if (correct) return kGold;
  switch (noise) {
    case TranslationNoise::kGoldHit:
      return rng.bernoulli(p.epsilon()) ? kGold : miss;
    case TranslationNoise::kUniform:
      return static_cast<std::int64_t>(rng.uniform_index(p.sigma_size));
    case TranslationNoise::kNeverGold:
      return 1 + static_cast<std::int64_t>(rng.uniform_index(p.sigma_size - 1));
  }
  return miss;
}

std::uint64_t shard_count(std::uint64_t n) { return (n + kShardSamples - 1) / kShardSamples; }

std::uint64_t shard_size(std::uint64_t n, std::uint64_t s) {
  return std::min(kShardSamples, n - s * kShardSamples);
}

void check_mc(const TheoryParams& p, std::uint64_t n, TranslationNoise noise) {
  p.validate();
  if (n < 1) throw std::invalid_argument("monte_carlo: n_samples < 1");
  if (noise == TranslationNoise::kNeverGold && p.sigma_size < 2) {
    throw std::invalid_argument("never-gold translation needs |Sigma| >= 2");
  }
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad grid value: " + item);
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty grid axis");
  return out;
}

}  // namespace

void TheoryParams::validate() const {
  if (!(eta_a >= 0.0 && eta_a <= 1.0) || !(eta_b >= 0.0 && eta_b <= 1.0)) {
    throw std::invalid_argument("eta out of [0,1]");
  }
  if (sigma_size < 1) throw std::invalid_argument("sigma_size < 1");
}

TheoryResult closed_form(const TheoryParams& p) {
  p.validate();
  const double eps = p.epsilon();
  TheoryResult r;
  r.Z = p.eta_a * (p.eta_b + eps * (1.0 - p.eta_b));
  const double fp = p.eta_b * eps * (1.0 - p.eta_a);
  r.E = eps * eps * (1.0 - p.eta_a) * (1.0 - p.eta_b);
  r.agreement_rate = r.Z + fp + r.E;
  if (!(r.agreement_rate > 0.0)) {
    throw std::domain_error("closed_form: agreement probability is zero");
  }
  // 1 - Z/A written as (FP + E)/A keeps exact zeros exact.
  r.error_rate = std::clamp((fp + r.E) / r.agreement_rate, 0.0, 1.0);
  return r;
}

MonteCarloCounts& MonteCarloCounts::operator+=(const MonteCarloCounts& o) {
  samples += o.samples;
  agree += o.agree;
  agree_a_correct += o.agree_a_correct;
  agree_both_wrong += o.agree_both_wrong;
  return *this;
}

TheoryResult MonteCarloCounts::result() const {
  TheoryResult r;
  if (samples == 0) return r;
  const double n = static_cast<double>(samples);
  r.agreement_rate = static_cast<double>(agree) / n;
  r.Z = static_cast<double>(agree_a_correct) / n;
  r.E = static_cast<double>(agree_both_wrong) / n;
  r.error_rate = agree == 0 ? 0.0
                            : static_cast<double>(agree - agree_a_correct) /
                                  static_cast<double>(agree);
  return r;
}

MonteCarloCounts simulate_shard(const TheoryParams& p, std::uint64_t samples,
                                std::uint64_t shard_seed, TranslationNoise noise) {
  Rng rng(shard_seed);
  MonteCarloCounts c;
  c.samples = samples;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const bool a_ok = rng.bernoulli(p.eta_a);
    const bool b_ok = rng.bernoulli(p.eta_b);
    const std::int64_t ta = translate(a_ok, p, kMissA, noise, rng);
    const std::int64_t tb = translate(b_ok, p, kMissB, noise, rng);
    if (ta != tb) continue;
    ++c.agree;
    c.agree_a_correct += a_ok;
    c.agree_both_wrong += !a_ok && !b_ok;
  }
  return c;
}

TheoryResult monte_carlo(const TheoryParams& p, std::uint64_t n, std::uint64_t seed,
                         TranslationNoise noise) {
  check_mc(p, n, noise);
  const auto shards = static_cast<std::int64_t>(shard_count(n));
  std::vector<MonteCarloCounts> parts(shards);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t s = 0; s < shards; ++s) {
    const auto us = static_cast<std::uint64_t>(s);
    parts[s] = simulate_shard(p, shard_size(n, us), derive_seed(seed, us), noise);
  }
  MonteCarloCounts total;
  for (const MonteCarloCounts& c : parts) total += c;
  return total.result();
}

TheoryResult monte_carlo_serial(const TheoryParams& p, std::uint64_t n,
                                std::uint64_t seed, TranslationNoise noise) {
  check_mc(p, n, noise);
  MonteCarloCounts total;
  for (std::uint64_t s = 0; s < shard_count(n); ++s) {
    total += simulate_shard(p, shard_size(n, s), derive_seed(seed, s), noise);
  }
  return total.result();
}

SweepTable sweep(const std::vector<TheoryParams>& grid, std::uint64_t n,
                 std::uint64_t seed, TranslationNoise noise) {
  if (grid.empty()) throw std::invalid_argument("sweep: empty grid");
  SweepTable table;
  table.n_samples = n;
  table.seed = seed;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    SweepRow row;
    row.params = grid[i];
    row.closed = closed_form(grid[i]);
    row.simulated = monte_carlo(grid[i], n, derive_seed(seed, i), noise);
    table.rows.push_back(row);
  }
  std::map<std::pair<double, double>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    groups[{grid[i].eta_a, grid[i].eta_b}].push_back(i);
  }
  for (auto& [key, idx] : groups) {
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
      return grid[x].sigma_size < grid[y].sigma_size;
    });
    for (std::size_t q = 1; q < idx.size(); ++q) {
      SweepRow& row = table.rows[idx[q]];
      row.monotone_in_sigma =
          row.closed.error_rate <= table.rows[idx[q - 1]].closed.error_rate;
      table.monotone = table.monotone && row.monotone_in_sigma;
    }
  }
  return table;
}

std::vector<TheoryParams> parse_grid(const std::string& text) {
  std::map<std::string, std::vector<double>> axes;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) {
    if (part.empty()) continue;
    auto eq = part.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bad grid term: " + part);
    std::string key = part.substr(0, eq);
    if (key != "eta_a" && key != "eta_b" && key != "sigma") {
      throw std::invalid_argument("unknown grid axis: " + key);
    }
    axes[key] = parse_list(part.substr(eq + 1));
  }
  for (const char* k : {"eta_a", "eta_b", "sigma"}) {
    if (!axes.count(k)) throw std::invalid_argument(std::string("grid lacks axis ") + k);
  }
  std::vector<TheoryParams> grid;
  for (double a : axes["eta_a"]) {
    for (double b : axes["eta_b"]) {
      for (double s : axes["sigma"]) {
        TheoryParams p{a, b, static_cast<std::int64_t>(s)};
        if (static_cast<double>(p.sigma_size) != s) {
          throw std::invalid_argument("sigma must be an integer");
        }
        p.validate();
        grid.push_back(p);
      }
    }
  }
  return grid;
}

std::string sweep_csv(const SweepTable& t) {
  std::string out =
      "eta_a,eta_b,sigma,closed_error,mc_error,closed_agree,mc_agree,n_samples,seed\n";
  char buf[512];
  for (const SweepRow& r : t.rows) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%lld,%.17g,%.17g,%.17g,%.17g,%llu,%llu\n",
                  r.params.eta_a, r.params.eta_b,
                  static_cast<long long>(r.params.sigma_size), r.closed.error_rate,
                  r.simulated.error_rate, r.closed.agreement_rate,
                  r.simulated.agreement_rate, static_cast<unsigned long long>(t.n_samples),
                  static_cast<unsigned long long>(t.seed));
    out += buf;
  }
  return out;
}

}  // namespace friendlab
