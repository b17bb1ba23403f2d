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

// File formats: JSONL corpora, JSON checkpoints, CSV reports.
//
// Corpus line (keys in this order, absent gold omitted):
//   {"id":"7-0","utterances":[{"speaker":"A","tokens":["E01","v2","E05"]}],
//    "predicates":[{"utt":2,"idx":1}],
//    "gold_a":[{"ARG0":{"utt":0,"start":0,"end":0}}],"gold_b":["E01","v2"]}

#ifndef FRIENDLAB_IO_H_
#define FRIENDLAB_IO_H_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "friendlab/datagen.h"
#include "friendlab/loop.h"
#include "friendlab/models.h"

namespace friendlab {

// Malformed input file. `line` is 1-based, 0 when not line-oriented.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

std::string serialize_instance(const Instance& instance);
// Throws FormatError on schema violations and std::invalid_argument on
// semantic ones (see validate_instance).
Instance parse_instance(std::string_view line);

std::string serialize_corpus(const std::vector<Instance>& corpus);
// Blank lines are rejected. Errors name the 1-based line number.
std::vector<Instance> parse_corpus(std::string_view text);

std::vector<Instance> read_corpus(const std::filesystem::path& path);
void write_corpus(const std::filesystem::path& path, const std::vector<Instance>& corpus);

std::string serialize_model(const LinearModel& model);
LinearModel parse_model(std::string_view text);
LinearModel load_checkpoint(const std::filesystem::path& path);
void save_checkpoint(const std::filesystem::path& path, const LinearModel& model);

// Header plus one row per (iteration, task, metric). Task-A metrics are
// micro-averaged over spans.
std::string report_csv(const std::vector<IterationReport>& reports, LoopMode mode,
                       std::uint64_t seed);

std::string read_file(const std::filesystem::path& path);
// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace friendlab

#endif  // FRIENDLAB_IO_H_
