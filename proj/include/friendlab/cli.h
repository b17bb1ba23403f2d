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

// Command-line front end.
//
//   friendlab gen-data --seed S --n N --out PATH [world flags]
//   friendlab pretrain --task a|b --train PATH --dev PATH --out CKPT
//   friendlab run --mode MODE --config PATH [overrides]
//   friendlab theory --eta-a X --eta-b Y --sigma K --samples N --seed S [--sweep GRID]
//   friendlab evaluate --task a|b --ckpt PATH --data PATH
//
// Exit codes: 0 success, 1 runtime error, 2 usage or configuration error.

#ifndef FRIENDLAB_CLI_H_
#define FRIENDLAB_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "friendlab/datagen.h"
#include "friendlab/loop.h"

namespace friendlab {

// Invalid configuration; reported with exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Everything `run` needs. Corpus paths left empty are generated from the
// world config and seed with the sizes in `data`.
struct RunConfig {
  std::uint64_t seed = 1;
  WorldConfig world;
  LoopConfig loop;
  struct Data {
    int labeled = 100;
    int unlabeled = 2000;
    int dev = 500;
  } data;
  struct Paths {
    std::string labeled_a, labeled_b, unlabeled, dev_a, dev_b;
    std::string report_dir = "report";
    std::string checkpoint_dir;  // empty: same as report_dir
  } paths;

  // Throws ConfigError naming the offending value.
  void validate() const;
};

// Parses a JSON config document on top of the defaults. Unknown keys and
// out-of-range values throw ConfigError.
RunConfig parse_run_config(std::string_view json_text);
// Effective configuration as pretty-printed JSON.
std::string run_config_json(const RunConfig& cfg);

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int dispatch(int argc, const char* const* argv);

}  // namespace friendlab

#endif  // FRIENDLAB_CLI_H_
