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

#include "friendlab/io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace friendlab {
namespace {

using ordered = nlohmann::ordered_json;
using json = nlohmann::json;

constexpr std::string_view kCheckpointFormat = "friendlab-checkpoint-1";

[[noreturn]] void bad(const std::string& what) { throw FormatError(what); }

const json& field(const json& obj, const char* key) {
  if (!obj.is_object()) bad(std::string("expected object holding '") + key + "'");
  auto it = obj.find(key);
  if (it == obj.end()) bad(std::string("missing key '") + key + "'");
  return *it;
}

int as_int(const json& v, const char* what) {
  if (!v.is_number_integer()) bad(std::string(what) + " must be an integer");
  return v.get<int>();
}

std::string as_string(const json& v, const char* what) {
  if (!v.is_string()) bad(std::string(what) + " must be a string");
  return v.get<std::string>();
}

TokenSeq as_tokens(const json& v, const char* what) {
  if (!v.is_array()) bad(std::string(what) + " must be an array of strings");
  TokenSeq out;
  out.reserve(v.size());
  for (const json& t : v) out.push_back(as_string(t, what));
  return out;
}

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (std::string_view k : allowed) known = known || it.key() == k;
    if (!known) bad("unknown key '" + it.key() + "'");
  }
}

ordered span_json(const Span& s) {
  ordered o;
  o["utt"] = s.utterance_index;
  o["start"] = s.start;
  o["end"] = s.end;
  return o;
}

std::string csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string serialize_instance(const Instance& inst) {
  ordered o;
  o["id"] = inst.id;
  ordered utts = ordered::array();
  for (const Utterance& u : inst.utterances) {
    ordered uo;
    uo["speaker"] = u.speaker == Speaker::kA ? "A" : "B";
    uo["tokens"] = u.tokens;
    utts.push_back(std::move(uo));
  }
  o["utterances"] = std::move(utts);
  ordered preds = ordered::array();
  for (const PredicateRef& p : inst.predicates) {
    ordered po;
    po["utt"] = p.utterance_index;
    po["idx"] = p.token_index;
    preds.push_back(std::move(po));
  }
  o["predicates"] = std::move(preds);
  if (inst.gold_a) {
    ordered ga = ordered::array();
    for (const ArgumentSet& args : *inst.gold_a) {
      ordered ao = ordered::object();
      for (int r = 0; r < kRoleCount; ++r) {
        const auto& s = args.get(static_cast<Role>(r));
        if (s) ao[std::string(role_name(static_cast<Role>(r)))] = span_json(*s);
      }
      ga.push_back(std::move(ao));
    }
    o["gold_a"] = std::move(ga);
  }
  if (inst.gold_b) o["gold_b"] = *inst.gold_b;
  return o.dump();
}

Instance parse_instance(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) bad("instance must be a JSON object");
  check_keys(j, {"id", "utterances", "predicates", "gold_a", "gold_b"});
  Instance inst;
  inst.id = as_string(field(j, "id"), "id");
  const json& utts = field(j, "utterances");
  if (!utts.is_array()) bad("utterances must be an array");
  for (const json& u : utts) {
    check_keys(u, {"speaker", "tokens"});
    Utterance out;
    std::string sp = as_string(field(u, "speaker"), "speaker");
    if (sp == "A") {
      out.speaker = Speaker::kA;
    } else if (sp == "B") {
      out.speaker = Speaker::kB;
    } else {
      bad("speaker must be \"A\" or \"B\"");
    }
    out.tokens = as_tokens(field(u, "tokens"), "tokens");
    inst.utterances.push_back(std::move(out));
  }
  const json& preds = field(j, "predicates");
  if (!preds.is_array()) bad("predicates must be an array");
  for (const json& p : preds) {
    check_keys(p, {"utt", "idx"});
    inst.predicates.push_back({as_int(field(p, "utt"), "utt"), as_int(field(p, "idx"), "idx")});
  }
  if (auto it = j.find("gold_a"); it != j.end()) {
    if (!it->is_array()) bad("gold_a must be an array");
    std::vector<ArgumentSet> gold;
    for (const json& args : *it) {
      if (!args.is_object()) bad("gold_a entries must be objects");
      ArgumentSet set;
      for (auto r = args.begin(); r != args.end(); ++r) {
        Role role;
        try {
          role = parse_role(r.key());
        } catch (const std::invalid_argument&) {
          bad("unknown role '" + r.key() + "'");
        }
        check_keys(r.value(), {"utt", "start", "end"});
        set.set(role, {as_int(field(r.value(), "utt"), "utt"),
                       as_int(field(r.value(), "start"), "start"),
                       as_int(field(r.value(), "end"), "end")});
      }
      gold.push_back(set);
    }
    inst.gold_a = std::move(gold);
  }
  if (auto it = j.find("gold_b"); it != j.end()) inst.gold_b = as_tokens(*it, "gold_b");
  validate_instance(inst);
  return inst;
}

std::string serialize_corpus(const std::vector<Instance>& corpus) {
  std::string out;
  for (const Instance& inst : corpus) {
    out += serialize_instance(inst);
    out += '\n';
  }
  return out;
}

std::vector<Instance> parse_corpus(std::string_view text) {
  std::vector<Instance> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    try {
      if (line.empty()) bad("empty line");
      out.push_back(parse_instance(line));
    } catch (const std::exception& e) {
      throw FormatError("line " + std::to_string(line_no) + ": " + e.what(), line_no);
    }
  }
  return out;
}

std::vector<Instance> read_corpus(const std::filesystem::path& path) {
  try {
    return parse_corpus(read_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what(), e.line());
  }
}

void write_corpus(const std::filesystem::path& path, const std::vector<Instance>& corpus) {
  write_file_atomic(path, serialize_corpus(corpus));
}

std::string serialize_model(const LinearModel& model) {
  model.check();
  ordered o;
  o["format"] = kCheckpointFormat;
  o["task"] = task_name(model.space.task);
  ordered fs;
  fs["version"] = model.space.version();
  fs["n_entities"] = model.space.n_entities;
  fs["n_predicates"] = model.space.n_predicates;
  o["feature_space"] = std::move(fs);
  o["labels"] = model.labels;
  o["n_features"] = model.n_features();
  o["bias"] = model.bias;
  ordered w = ordered::array();
  for (int l = 0; l < model.n_labels(); ++l) {
    for (int f = 0; f < model.n_features(); ++f) {
      const double v = model.w(l, f);
      // Negative zero is kept so the round trip is bit-exact.
      if (v != 0.0 || std::signbit(v)) w.push_back(ordered::array({l, f, v}));
    }
  }
  o["weights"] = std::move(w);
  return o.dump() + "\n";
}

LinearModel parse_model(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("invalid checkpoint JSON: ") + e.what());
  }
  if (as_string(field(j, "format"), "format") != kCheckpointFormat) {
    bad("unsupported checkpoint format");
  }
  const std::string task = as_string(field(j, "task"), "task");
  if (task != "a" && task != "b") bad("checkpoint task must be \"a\" or \"b\"");
  const json& fs = field(j, "feature_space");
  LinearModel model = make_model(task == "a" ? Task::kA : Task::kB,
                                 as_int(field(fs, "n_entities"), "n_entities"),
                                 as_int(field(fs, "n_predicates"), "n_predicates"));
  if (as_string(field(fs, "version"), "version") != model.space.version()) {
    bad("feature-space version mismatch");
  }
  if (as_tokens(field(j, "labels"), "labels") != model.labels) bad("label order mismatch");
  if (as_int(field(j, "n_features"), "n_features") != model.n_features()) {
    bad("feature count mismatch");
  }
  const json& bias = field(j, "bias");
  if (!bias.is_array() || static_cast<int>(bias.size()) != model.n_labels()) {
    bad("bias must have one entry per label");
  }
  for (int l = 0; l < model.n_labels(); ++l) {
    if (!bias[l].is_number()) bad("bias entries must be numbers");
    model.bias[l] = bias[l].get<double>();
  }
  const json& weights = field(j, "weights");
  if (!weights.is_array()) bad("weights must be an array");
  for (const json& t : weights) {
    if (!t.is_array() || t.size() != 3 || !t[2].is_number()) {
      bad("weights must be [label, feature, value] triples");
    }
    const int l = as_int(t[0], "label index");
    const int f = as_int(t[1], "feature index");
    if (l < 0 || l >= model.n_labels() || f < 0 || f >= model.n_features()) {
      bad("weight index out of range");
    }
    model.w(l, f) = t[2].get<double>();
  }
  try {
    model.check();
  } catch (const std::invalid_argument& e) {
    bad(e.what());
  }
  return model;
}

LinearModel load_checkpoint(const std::filesystem::path& path) {
  try {
    return parse_model(read_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void save_checkpoint(const std::filesystem::path& path, const LinearModel& model) {
  write_file_atomic(path, serialize_model(model));
}

std::string report_csv(const std::vector<IterationReport>& reports, LoopMode mode,
                       std::uint64_t seed) {
  std::ostringstream out;
  out << "iteration,task,metric,value,selected_count,pool_size,oracle_pseudo_error,mode,seed\n";
  const std::string tail = "," + std::string(mode_name(mode)) + "," + std::to_string(seed) + "\n";
  for (const IterationReport& r : reports) {
    auto row = [&](const char* task, const char* metric, double value, int selected,
                   const std::optional<double>& err) {
      out << r.iteration << ',' << task << ',' << metric << ',' << csv_number(value) << ','
          << selected << ',' << r.pool_size << ',' << (err ? csv_number(*err) : "") << tail;
    };
    row("a", "precision_micro", r.dev.precision_a, r.selected_count_a, r.oracle_pseudo_error_a);
    row("a", "recall_micro", r.dev.recall_a, r.selected_count_a, r.oracle_pseudo_error_a);
    row("a", "f1_micro", r.dev.f1_a, r.selected_count_a, r.oracle_pseudo_error_a);
    row("b", "em", r.dev.em_b, r.selected_count_b, r.oracle_pseudo_error_b);
    row("b", "wer", r.dev.wer_b, r.selected_count_b, r.oracle_pseudo_error_b);
    row("b", "rouge_l", r.dev.rouge_l_b, r.selected_count_b, r.oracle_pseudo_error_b);
  }
  return out.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw std::runtime_error("cannot read " + path.string());
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw std::runtime_error("cannot write " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace friendlab
