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

#include "friendlab/cli.h"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "friendlab/io.h"
#include "friendlab/metrics.h"
#include "friendlab/theory.h"
#include "json.hpp"

namespace friendlab {
namespace {

using json = nlohmann::json;
using ordered = nlohmann::ordered_json;
namespace fs = std::filesystem;

// Reads obj[key] into `dst` when present, rejecting wrong types.
template <typename T>
bool read_opt(const json& obj, const char* section, const char* key, T& dst) {
  auto it = obj.find(key);
  if (it == obj.end()) return false;
  try {
    if constexpr (std::is_same_v<T, bool>) {
      if (!it->is_boolean()) throw std::invalid_argument("");
    } else if constexpr (std::is_integral_v<T>) {
      if (!it->is_number_integer()) throw std::invalid_argument("");
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!it->is_number()) throw std::invalid_argument("");
    } else {
      if (!it->is_string()) throw std::invalid_argument("");
    }
    dst = it->get<T>();
  } catch (const std::exception&) {
    const std::string where = *section ? std::string(section) + "." + key : std::string(key);
    throw ConfigError("config: " + where + " has the wrong type");
  }
  return true;
}

const json& section(const json& root, const char* name, const std::vector<std::string>& keys) {
  static const json kEmpty = json::object();
  auto it = root.find(name);
  if (it == root.end()) return kEmpty;
  if (!it->is_object()) throw ConfigError(std::string("config: ") + name + " must be an object");
  for (auto k = it->begin(); k != it->end(); ++k) {
    if (std::find(keys.begin(), keys.end(), k.key()) == keys.end()) {
      throw ConfigError(std::string("config: unknown key ") + name + "." + k.key());
    }
  }
  return *it;
}

// Runs `fn`, turning std::invalid_argument from validators into ConfigError.
template <typename Fn>
void as_config_error(Fn fn) {
  try {
    fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

Task parse_task(const std::string& s) { return s == "a" ? Task::kA : Task::kB; }

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::vector<Instance> corpus_or_generate(const std::string& path, std::uint64_t seed,
                                         std::uint64_t stream, int n, const WorldConfig& w) {
  if (!path.empty()) return read_corpus(path);
  return generate_corpus(derive_seed(seed, stream), n, w);
}

void print_metrics(std::ostream& out, Task task, const DevMetrics& m) {
  if (task == Task::kA) {
    out << "precision_micro=" << fmt(m.precision_a) << "\nrecall_micro=" << fmt(m.recall_a)
        << "\nf1_micro=" << fmt(m.f1_a) << "\n";
  } else {
    out << "em=" << fmt(m.em_b) << "\nwer=" << fmt(m.wer_b) << "\nrouge_l=" << fmt(m.rouge_l_b)
        << "\n";
  }
}

void add_world_flags(CLI::App* app, WorldConfig& w) {
  app->add_option("--n-entities", w.n_entities, "Entity vocabulary size");
  app->add_option("--n-predicates", w.n_predicates, "Predicate vocabulary size");
  app->add_option("--min-context", w.min_context_utterances, "Minimum context utterances");
  app->add_option("--max-context", w.max_context_utterances, "Maximum context utterances");
  app->add_option("--pronoun-rate", w.pronoun_rate, "Probability an eligible slot is PRN");
  app->add_option("--ellipsis-rate", w.ellipsis_rate, "Probability an eligible slot is elided");
  app->add_option("--max-predicates", w.max_predicates_last, "Clauses in the last utterance");
  app->add_option("--entity-types", w.n_entity_types, "Hidden entity types");
  app->add_option("--filler-rate", w.filler_rate, "Leading filler probability");
}

int cmd_gen_data(std::uint64_t seed, int n, const std::string& out_path, const WorldConfig& w,
                 std::ostream& out) {
  as_config_error([&] { w.validate(); });
  if (n < 1) throw ConfigError("--n must be >= 1");
  write_corpus(out_path, generate_corpus(seed, n, w));
  out << "wrote " << n << " instances to " << out_path << "\n";
  return 0;
}

struct PretrainArgs {
  std::string task, train, dev, out;
  int epochs = LoopConfig{}.pretrain_epochs;
  TrainConfig train_cfg;
  std::uint64_t seed = 1;
  int n_entities = WorldConfig{}.n_entities;
  int n_predicates = WorldConfig{}.n_predicates;
};

int cmd_pretrain(const PretrainArgs& a, std::ostream& out) {
  as_config_error([&] {
    a.train_cfg.validate();
    if (a.epochs < 1) throw ConfigError("--epochs must be >= 1");
    if (a.n_entities < 1 || a.n_predicates < 1) throw ConfigError("model sizes must be >= 1");
  });
  const Task task = parse_task(a.task);
  const std::vector<Instance> train = read_corpus(a.train);
  const std::vector<Instance> dev = read_corpus(a.dev);
  if (train.empty()) throw std::runtime_error("training corpus is empty");
  LinearModel model = make_model(task, a.n_entities, a.n_predicates);
  TrainResult res = task == Task::kA
                        ? train_epochs(std::move(model), gold_examples_a(train), {},
                                       a.train_cfg, a.epochs, pretrain_seed(a.seed, task))
                        : train_epochs(std::move(model), gold_examples_b(train), {},
                                       a.train_cfg, a.epochs, pretrain_seed(a.seed, task));
  save_checkpoint(a.out, res.model);
  out << "final_loss=" << fmt(res.loss_trace.back()) << "\n";
  print_metrics(out, task, task == Task::kA ? evaluate_a(res.model, dev)
                                            : evaluate_b(res.model, dev));
  return 0;
}

int cmd_evaluate(const std::string& task_s, const std::string& ckpt, const std::string& data,
                 std::ostream& out) {
  const Task task = parse_task(task_s);
  const LinearModel model = load_checkpoint(ckpt);
  if (model.space.task != task) throw std::runtime_error("checkpoint is for another task");
  const std::vector<Instance> dev = read_corpus(data);
  print_metrics(out, task, task == Task::kA ? evaluate_a(model, dev) : evaluate_b(model, dev));
  return 0;
}

struct TheoryArgs {
  std::optional<double> eta_a, eta_b;
  std::optional<std::int64_t> sigma;
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 1;
  std::string sweep, noise = "gold-hit", out;
};

TranslationNoise parse_noise(const std::string& s) {
  if (s == "gold-hit") return TranslationNoise::kGoldHit;
  if (s == "uniform") return TranslationNoise::kUniform;
  return TranslationNoise::kNeverGold;
}

int cmd_theory(const TheoryArgs& a, std::ostream& out) {
  const TranslationNoise noise = parse_noise(a.noise);
  if (a.samples < 1) throw ConfigError("--samples must be >= 1");
  if (!a.sweep.empty()) {
    std::vector<TheoryParams> grid;
    as_config_error([&] { grid = parse_grid(a.sweep); });
    const SweepTable table = sweep(grid, a.samples, a.seed, noise);
    const std::string csv = sweep_csv(table);
    if (a.out.empty()) {
      out << csv;
    } else {
      write_file_atomic(a.out, csv);
      out << "wrote " << table.rows.size() << " rows to " << a.out << "\n";
    }
    out << "monotone_in_sigma=" << (table.monotone ? "true" : "false") << "\n";
    return 0;
  }
  if (!a.eta_a || !a.eta_b || !a.sigma) {
    throw ConfigError("theory needs --eta-a, --eta-b and --sigma (or --sweep)");
  }
  const TheoryParams p{*a.eta_a, *a.eta_b, *a.sigma};
  as_config_error([&] { p.validate(); });
  const TheoryResult closed = closed_form(p);
  const TheoryResult mc = monte_carlo(p, a.samples, a.seed, noise);
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "closed_form_error=%.6f\nmonte_carlo_error=%.6f\nabs_diff=%.6f\n"
                "closed_form_agreement=%.6f\nmonte_carlo_agreement=%.6f\n"
                "samples=%llu\nseed=%llu\nnoise=%s\n",
                closed.error_rate, mc.error_rate, std::abs(closed.error_rate - mc.error_rate),
                closed.agreement_rate, mc.agreement_rate,
                static_cast<unsigned long long>(a.samples),
                static_cast<unsigned long long>(a.seed), a.noise.c_str());
  out << buf;
  return 0;
}

struct RunOverrides {
  std::string mode, config;
  std::optional<std::uint64_t> seed;
  std::optional<int> max_iterations;
  std::optional<double> alpha, beta, threshold_a, threshold_b;
  std::optional<std::string> retrain_policy, report_dir, checkpoint_dir;
};

int cmd_run(const RunOverrides& o, std::ostream& out) {
  RunConfig cfg = parse_run_config(read_file(o.config));
  as_config_error([&] {
    cfg.loop.mode = parse_mode(o.mode);
    if (o.seed) cfg.seed = *o.seed;
    if (o.max_iterations) cfg.loop.max_iterations = *o.max_iterations;
    if (o.alpha) cfg.loop.selector.alpha = *o.alpha;
    if (o.beta) cfg.loop.selector.beta = *o.beta;
    if (o.alpha || o.beta) cfg.loop.selector_weights_explicit = true;
    if (o.threshold_a) cfg.loop.selector.threshold_a = *o.threshold_a;
    if (o.threshold_b) cfg.loop.selector.threshold_b = *o.threshold_b;
    if (o.retrain_policy) cfg.loop.retrain_policy = parse_policy(*o.retrain_policy);
    if (o.report_dir) cfg.paths.report_dir = *o.report_dir;
    if (o.checkpoint_dir) cfg.paths.checkpoint_dir = *o.checkpoint_dir;
    cfg.validate();
  });

  const WorldConfig& w = cfg.world;
  const auto& p = cfg.paths;
  const std::vector<Instance> labeled_a =
      corpus_or_generate(p.labeled_a, cfg.seed, 1, cfg.data.labeled, w);
  const std::vector<Instance> labeled_b =
      corpus_or_generate(p.labeled_b, cfg.seed, 2, cfg.data.labeled, w);
  const std::vector<Instance> unlabeled =
      corpus_or_generate(p.unlabeled, cfg.seed, 3, cfg.data.unlabeled, w);
  const std::vector<Instance> dev_a = corpus_or_generate(p.dev_a, cfg.seed, 4, cfg.data.dev, w);
  const std::vector<Instance> dev_b =
      p.dev_b.empty() && p.dev_a.empty() ? dev_a
                                         : corpus_or_generate(p.dev_b, cfg.seed, 4, cfg.data.dev, w);

  const LoopResult res = run(labeled_a, labeled_b, unlabeled, dev_a, dev_b, cfg.loop, cfg.seed);

  const fs::path report_dir = p.report_dir;
  const fs::path ckpt_dir = p.checkpoint_dir.empty() ? report_dir : fs::path(p.checkpoint_dir);
  fs::create_directories(report_dir);
  fs::create_directories(ckpt_dir);
  write_file_atomic(report_dir / "effective_config.json", run_config_json(cfg));
  write_file_atomic(report_dir / "report.csv", report_csv(res.reports, cfg.loop.mode, cfg.seed));
  save_checkpoint(ckpt_dir / "model_a.json", res.model_a);
  save_checkpoint(ckpt_dir / "model_b.json", res.model_b);

  for (const IterationReport& r : res.reports) {
    out << "iteration " << r.iteration << ": f1_micro=" << fmt(r.dev.f1_a)
        << " em=" << fmt(r.dev.em_b) << " selected_a=" << r.selected_count_a
        << " selected_b=" << r.selected_count_b << "\n";
  }
  out << "report written to " << (report_dir / "report.csv").string() << "\n";
  return 0;
}

}  // namespace

void RunConfig::validate() const {
  as_config_error([&] {
    world.validate();
    loop.validate();
    if (loop.n_entities != world.n_entities || loop.n_predicates != world.n_predicates) {
      throw ConfigError("model sizes differ from the world config");
    }
    if (data.labeled < 1 || data.unlabeled < 1 || data.dev < 1) {
      throw ConfigError("data sizes must be >= 1");
    }
    if (paths.report_dir.empty()) throw ConfigError("paths.report_dir must be nonempty");
  });
}

RunConfig parse_run_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config: top level must be an object");
  for (auto k = root.begin(); k != root.end(); ++k) {
    static const std::vector<std::string> kTop = {"seed",     "world", "train", "selector",
                                                  "loop",     "data",  "paths", "averaging"};
    if (std::find(kTop.begin(), kTop.end(), k.key()) == kTop.end()) {
      throw ConfigError("config: unknown key " + k.key());
    }
  }
  RunConfig cfg;
  read_opt(root, "", "seed", cfg.seed);
  std::string averaging = "micro";
  read_opt(root, "", "averaging", averaging);
  if (averaging != "micro") throw ConfigError("config: only micro averaging is supported");

  WorldConfig& w = cfg.world;
  const json& ws = section(root, "world",
                           {"n_entities", "n_predicates", "min_context_utterances",
                            "max_context_utterances", "pronoun_rate", "ellipsis_rate",
                            "max_predicates_last", "n_entity_types", "filler_rate"});
  read_opt(ws, "world", "n_entities", w.n_entities);
  read_opt(ws, "world", "n_predicates", w.n_predicates);
  read_opt(ws, "world", "min_context_utterances", w.min_context_utterances);
  read_opt(ws, "world", "max_context_utterances", w.max_context_utterances);
  read_opt(ws, "world", "pronoun_rate", w.pronoun_rate);
  read_opt(ws, "world", "ellipsis_rate", w.ellipsis_rate);
  read_opt(ws, "world", "max_predicates_last", w.max_predicates_last);
  read_opt(ws, "world", "n_entity_types", w.n_entity_types);
  read_opt(ws, "world", "filler_rate", w.filler_rate);

  TrainConfig& t = cfg.loop.train;
  const json& ts =
      section(root, "train", {"learning_rate", "batch_size", "epochs_per_iteration", "lambda"});
  read_opt(ts, "train", "learning_rate", t.learning_rate);
  read_opt(ts, "train", "batch_size", t.batch_size);
  read_opt(ts, "train", "epochs_per_iteration", t.epochs_per_iteration);
  read_opt(ts, "train", "lambda", t.lambda);

  SelectorConfig& s = cfg.loop.selector;
  const json& ss = section(root, "selector",
                           {"alpha", "beta", "threshold_a", "threshold_b", "per_predicate"});
  const bool a = read_opt(ss, "selector", "alpha", s.alpha);
  const bool b = read_opt(ss, "selector", "beta", s.beta);
  cfg.loop.selector_weights_explicit = a || b;
  read_opt(ss, "selector", "threshold_a", s.threshold_a);
  read_opt(ss, "selector", "threshold_b", s.threshold_b);
  read_opt(ss, "selector", "per_predicate", s.per_predicate);

  const json& ls =
      section(root, "loop", {"max_iterations", "mode", "retrain_policy", "pretrain_epochs"});
  read_opt(ls, "loop", "max_iterations", cfg.loop.max_iterations);
  read_opt(ls, "loop", "pretrain_epochs", cfg.loop.pretrain_epochs);
  std::string name;
  if (read_opt(ls, "loop", "mode", name)) as_config_error([&] { cfg.loop.mode = parse_mode(name); });
  if (read_opt(ls, "loop", "retrain_policy", name)) {
    as_config_error([&] { cfg.loop.retrain_policy = parse_policy(name); });
  }
  cfg.loop.n_entities = w.n_entities;
  cfg.loop.n_predicates = w.n_predicates;

  const json& ds = section(root, "data", {"labeled", "unlabeled", "dev"});
  read_opt(ds, "data", "labeled", cfg.data.labeled);
  read_opt(ds, "data", "unlabeled", cfg.data.unlabeled);
  read_opt(ds, "data", "dev", cfg.data.dev);

  auto& p = cfg.paths;
  const json& ps = section(root, "paths", {"labeled_a", "labeled_b", "unlabeled", "dev_a",
                                           "dev_b", "report_dir", "checkpoint_dir"});
  read_opt(ps, "paths", "labeled_a", p.labeled_a);
  read_opt(ps, "paths", "labeled_b", p.labeled_b);
  read_opt(ps, "paths", "unlabeled", p.unlabeled);
  read_opt(ps, "paths", "dev_a", p.dev_a);
  read_opt(ps, "paths", "dev_b", p.dev_b);
  read_opt(ps, "paths", "report_dir", p.report_dir);
  read_opt(ps, "paths", "checkpoint_dir", p.checkpoint_dir);

  cfg.validate();
  return cfg;
}

std::string run_config_json(const RunConfig& cfg) {
  ordered o;
  o["seed"] = cfg.seed;
  const WorldConfig& w = cfg.world;
  o["world"] = {{"n_entities", w.n_entities},
                {"n_predicates", w.n_predicates},
                {"min_context_utterances", w.min_context_utterances},
                {"max_context_utterances", w.max_context_utterances},
                {"pronoun_rate", w.pronoun_rate},
                {"ellipsis_rate", w.ellipsis_rate},
                {"max_predicates_last", w.max_predicates_last},
                {"n_entity_types", w.n_entity_types},
                {"filler_rate", w.filler_rate}};
  const TrainConfig& t = cfg.loop.train;
  o["train"] = {{"learning_rate", t.learning_rate},
                {"batch_size", t.batch_size},
                {"epochs_per_iteration", t.epochs_per_iteration},
                {"lambda", t.lambda}};
  const SelectorConfig s = cfg.loop.effective_selector();
  o["selector"] = {{"alpha", s.alpha},
                   {"beta", s.beta},
                   {"threshold_a", s.threshold_a},
                   {"threshold_b", s.threshold_b},
                   {"per_predicate", s.per_predicate}};
  o["loop"] = {{"max_iterations", cfg.loop.max_iterations},
               {"mode", std::string(mode_name(cfg.loop.mode))},
               {"retrain_policy", std::string(policy_name(cfg.loop.retrain_policy))},
               {"pretrain_epochs", cfg.loop.pretrain_epochs}};
  o["data"] = {{"labeled", cfg.data.labeled},
               {"unlabeled", cfg.data.unlabeled},
               {"dev", cfg.data.dev}};
  const auto& p = cfg.paths;
  o["paths"] = {{"labeled_a", p.labeled_a}, {"labeled_b", p.labeled_b},
                {"unlabeled", p.unlabeled}, {"dev_a", p.dev_a},
                {"dev_b", p.dev_b},         {"report_dir", p.report_dir},
                {"checkpoint_dir", p.checkpoint_dir}};
  o["averaging"] = "micro";
  return o.dump(2) + "\n";
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cross-task friend-training lab", "friendlab"};
  app.require_subcommand(1);

  std::uint64_t gen_seed = 0;
  int gen_n = 0;
  std::string gen_out;
  WorldConfig world;
  CLI::App* gen = app.add_subcommand("gen-data", "Generate a synthetic JSONL corpus");
  gen->add_option("--seed", gen_seed, "Corpus seed")->required();
  gen->add_option("--n", gen_n, "Number of instances")->required();
  gen->add_option("--out", gen_out, "Output JSONL path")->required();
  add_world_flags(gen, world);

  PretrainArgs pre;
  CLI::App* pretrain = app.add_subcommand("pretrain", "Train one task model on labeled data");
  pretrain->add_option("--task", pre.task, "a or b")->required()->check(CLI::IsMember({"a", "b"}));
  pretrain->add_option("--train", pre.train, "Labeled JSONL corpus")->required();
  pretrain->add_option("--dev", pre.dev, "Dev JSONL corpus")->required();
  pretrain->add_option("--out", pre.out, "Checkpoint path")->required();
  pretrain->add_option("--epochs", pre.epochs, "Training epochs");
  pretrain->add_option("--lr", pre.train_cfg.learning_rate, "Learning rate");
  pretrain->add_option("--batch-size", pre.train_cfg.batch_size, "Minibatch size");
  pretrain->add_option("--seed", pre.seed, "Shuffling seed");
  pretrain->add_option("--n-entities", pre.n_entities, "Entity vocabulary size");
  pretrain->add_option("--n-predicates", pre.n_predicates, "Predicate vocabulary size");

  RunOverrides ro;
  CLI::App* runc = app.add_subcommand("run", "Run the iterative training loop");
  runc->add_option("--mode", ro.mode, "friend|self-train|frozen-friend-a|frozen-friend-b")
      ->required();
  runc->add_option("--config", ro.config, "JSON run config")->required();
  runc->add_option("--seed", ro.seed, "Override seed");
  runc->add_option("--max-iterations", ro.max_iterations, "Override iteration count");
  runc->add_option("--alpha", ro.alpha, "Override task-A confidence weight");
  runc->add_option("--beta", ro.beta, "Override task-B confidence weight");
  runc->add_option("--threshold-a", ro.threshold_a, "Override task-A pick threshold");
  runc->add_option("--threshold-b", ro.threshold_b, "Override task-B pick threshold");
  runc->add_option("--retrain-policy", ro.retrain_policy, "continue|reinit");
  runc->add_option("--report-dir", ro.report_dir, "Override report directory");
  runc->add_option("--checkpoint-dir", ro.checkpoint_dir, "Override checkpoint directory");

  TheoryArgs th;
  CLI::App* theory = app.add_subcommand("theory", "Closed-form vs simulated selection error");
  theory->add_option("--eta-a", th.eta_a, "Accuracy of the first classifier");
  theory->add_option("--eta-b", th.eta_b, "Accuracy of the second classifier");
  theory->add_option("--sigma", th.sigma, "Size of the translation space");
  theory->add_option("--samples", th.samples, "Monte Carlo samples");
  theory->add_option("--seed", th.seed, "Monte Carlo seed");
  theory->add_option("--sweep", th.sweep, "Grid, e.g. \"eta_a=0.3;eta_b=0.3;sigma=1,10\"");
  theory->add_option("--noise", th.noise, "gold-hit|uniform|never-gold")
      ->check(CLI::IsMember({"gold-hit", "uniform", "never-gold"}));
  theory->add_option("--out", th.out, "Write the sweep CSV here");

  std::string ev_task, ev_ckpt, ev_data;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Score a checkpoint on a labeled corpus");
  evaluate->add_option("--task", ev_task, "a or b")->required()->check(CLI::IsMember({"a", "b"}));
  evaluate->add_option("--ckpt", ev_ckpt, "Checkpoint path")->required();
  evaluate->add_option("--data", ev_data, "Labeled JSONL corpus")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    CLI::App* failed = &app;
    for (CLI::App* sub : app.get_subcommands()) failed = sub;
    err << failed->help();
    return 2;
  }

  try {
    if (gen->parsed()) return cmd_gen_data(gen_seed, gen_n, gen_out, world, out);
    if (pretrain->parsed()) return cmd_pretrain(pre, out);
    if (runc->parsed()) return cmd_run(ro, out);
    if (theory->parsed()) return cmd_theory(th, out);
    if (evaluate->parsed()) return cmd_evaluate(ev_task, ev_ckpt, ev_data, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

int dispatch(int argc, const char* const* argv) {
  return dispatch(argc, argv, std::cout, std::cerr);
}

}  // namespace friendlab
