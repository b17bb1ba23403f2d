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

#include "friendlab/models.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "friendlab/features.h"

namespace friendlab {
namespace {

// In-place softmax; returns log of the normalizer.
double softmax(std::vector<double>& z) {
  double mx = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& x : z) {
    x = std::exp(x - mx);
    sum += x;
  }
  for (double& x : z) x /= sum;
  return mx + std::log(sum);
}

// First index of the maximum.
int argmax(const std::vector<double>& p) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(p.size()); ++i) {
    if (p[i] > p[best]) best = i;
  }
  return best;
}

void require_space(const LinearModel& model, Task task) {
  if (model.space.task != task) {
    throw std::invalid_argument("model task mismatch");
  }
  if (model.weights.size() !=
          static_cast<std::size_t>(model.n_labels()) * model.n_features() ||
      static_cast<int>(model.bias.size()) != model.n_labels()) {
    throw std::invalid_argument("feature dimensionality mismatch");
  }
}

void add_features(Gradient* g, const LinearModel& m, int label,
                  const FeatureVector& fv, double coef) {
  double* row = g->weights.data() + static_cast<std::size_t>(label) * m.n_features();
  for (const Feature& f : fv) row[f.index] += coef * f.value;
}

int role_of_label(int label) { return (label - 1) / 2; }  // B/I-ARGk -> k
bool is_begin(int label) { return label % 2 == 1; }

Gradient zero_gradient(const LinearModel& m) {
  return {std::vector<double>(m.weights.size(), 0.0),
          std::vector<double>(m.bias.size(), 0.0)};
}

}  // namespace

std::string_view task_name(Task task) { return task == Task::kA ? "a" : "b"; }

std::string FeatureSpace::version() const {
  return task == Task::kA ? "friendlab-a-1" : "friendlab-b-1";
}

double LinearModel::score(int label, const FeatureVector& fv) const {
  const double* row = weights.data() + static_cast<std::size_t>(label) * n_features();
  double s = bias[label];
  for (const Feature& f : fv) s += row[f.index] * f.value;
  return s;
}

void LinearModel::check() const {
  if (weights.size() != static_cast<std::size_t>(n_labels()) * n_features() ||
      bias.size() != labels.size()) {
    throw std::invalid_argument("feature dimensionality mismatch");
  }
  for (double x : weights) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite weight");
  }
  for (double x : bias) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite bias");
  }
}

LinearModel make_model(Task task, int n_entities, int n_predicates) {
  LinearModel m;
  m.space = FeatureSpace{task, n_entities, n_predicates};
  if (task == Task::kA) {
    m.labels.assign(kBioLabels.begin(), kBioLabels.end());
  } else {
    m.labels = {"KEEP", "DELETE", "START", "END"};
  }
  m.weights.assign(static_cast<std::size_t>(m.n_labels()) * m.n_features(), 0.0);
  m.bias.assign(m.labels.size(), 0.0);
  return m;
}

LinearModel make_model(Task task, const WorldConfig& world) {
  return make_model(task, world.n_entities, world.n_predicates);
}

// ---------------------------------------------------------------- task A

TaskAPrediction predict_a(const LinearModel& model, const Instance& inst) {
  require_space(model, Task::kA);
  if (inst.predicates.empty()) throw std::invalid_argument("no predicates");
  const DialogueView view = make_view(inst, model.space);
  const int n = view.size();

  TaskAPrediction out;
  std::vector<double> z(kBioLabelCount);
  for (std::size_t k = 0; k < inst.predicates.size(); ++k) {
    const int pflat = view.last_begin + inst.predicates[k].token_index;
    const int pid = predicate_id(model.space, inst.predicate_token(k));
    std::vector<std::array<double, kBioLabelCount>> probs(n);
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) {
      FeatureVector fv = features_a(model.space, view, pflat, pid, i);
      for (int l = 0; l < kBioLabelCount; ++l) z[l] = model.score(l, fv);
      softmax(z);
      std::copy(z.begin(), z.end(), probs[i].begin());
      labels[i] = argmax(z);
    }

    // BIO extraction; an I tag that does not continue an open span of the
    // same role starts a new span.
    struct Decoded {
      int role, utt, start, end;
      double conf;
    };
    std::vector<Decoded> spans;
    std::optional<Decoded> open;
    auto close = [&] {
      if (open) spans.push_back(*open);
      open.reset();
    };
    for (int i = 0; i < n; ++i) {
      if (i > 0 && view.utterance[i] != view.utterance[i - 1]) close();
      const int l = labels[i];
      const double p = probs[i][l];
      if (l == 0) {
        close();
        continue;
      }
      const int role = role_of_label(l);
      if (!is_begin(l) && open && open->role == role) {
        open->end = view.position[i];
        open->conf *= p;
        continue;
      }
      close();
      open = Decoded{role, view.utterance[i], view.position[i], view.position[i], p};
    }
    close();

    // One span per role: the most confident, earliest on ties.
    ArgumentSet args;
    std::array<std::optional<double>, kRoleCount> conf{};
    for (const Decoded& d : spans) {
      if (!conf[d.role] || d.conf > *conf[d.role]) {
        conf[d.role] = d.conf;
        args.set(static_cast<Role>(d.role), Span{d.utt, d.start, d.end});
      }
    }
    std::vector<double> kept;
    for (const auto& c : conf) {
      if (c) kept.push_back(*c);
    }
    out.confidence.push_back(kept.empty() ? Score(0.0) : geometric_mean(kept));
    out.arguments.push_back(args);
    out.argument_confidence.push_back(conf);
    out.token_probs.push_back(std::move(probs));
  }
  return out;
}

std::vector<int> bio_targets(const Instance& inst, const ArgumentSet& args) {
  std::vector<int> offset(inst.utterances.size() + 1, 0);
  for (std::size_t u = 0; u < inst.utterances.size(); ++u) {
    offset[u + 1] = offset[u] + static_cast<int>(inst.utterances[u].tokens.size());
  }
  std::vector<int> y(offset.back(), 0);
  for (int r = 0; r < kRoleCount; ++r) {
    const auto& s = args.get(static_cast<Role>(r));
    if (!s) continue;
    if (r > 2) throw std::invalid_argument("role outside the task-A label space");
    for (int p = s->start; p <= s->end; ++p) {
      y.at(offset.at(s->utterance_index) + p) = 1 + 2 * r + (p == s->start ? 0 : 1);
    }
  }
  return y;
}

double example_loss_a(const LinearModel& model, const ExampleA& ex,
                      Gradient* grad, double scale) {
  const Instance& inst = *ex.instance;
  const DialogueView view = make_view(inst, model.space);
  std::vector<double> z(kBioLabelCount);
  double loss = 0.0;
  for (std::size_t k = 0; k < inst.predicates.size(); ++k) {
    if (!ex.predicate_mask.empty() && !ex.predicate_mask[k]) continue;
    const std::vector<int> y = bio_targets(inst, ex.target.at(k));
    const int pflat = view.last_begin + inst.predicates[k].token_index;
    const int pid = predicate_id(model.space, inst.predicate_token(k));
    for (int i = 0; i < view.size(); ++i) {
      FeatureVector fv = features_a(model.space, view, pflat, pid, i);
      for (int l = 0; l < kBioLabelCount; ++l) z[l] = model.score(l, fv);
      std::vector<double> logits = z;
      double lse = softmax(z);
      loss += lse - logits[y[i]];
      if (grad) {
        for (int l = 0; l < kBioLabelCount; ++l) {
          double d = scale * (z[l] - (l == y[i] ? 1.0 : 0.0));
          add_features(grad, model, l, fv, d);
          grad->bias[l] += d;
        }
      }
    }
  }
  return loss;
}

// ---------------------------------------------------------------- task B

namespace {

struct SpanScores {
  std::vector<double> start, end;
};

SpanScores span_distributions(const LinearModel& model, const DialogueView& view,
                              const SlotInfo& slot) {
  const int n = view.size();
  SpanScores s{std::vector<double>(n), std::vector<double>(n)};
  for (int i = 0; i < n; ++i) {
    FeatureVector fv = pair_features(model.space, view, slot, i);
    s.start[i] = model.score(kStart, fv);
    s.end[i] = model.score(kEnd, fv);
  }
  return s;
}

}  // namespace

TokenSeq assemble_rewrite(const Instance& inst, const RewriteDecisions& d) {
  std::vector<const std::string*> flat;
  for (const Utterance& u : inst.utterances) {
    for (const std::string& t : u.tokens) flat.push_back(&t);
  }
  const TokenSeq& last = inst.last_utterance();
  const int len = static_cast<int>(last.size());
  if (static_cast<int>(d.keep.size()) != len ||
      static_cast<int>(d.start.size()) != len + 1 ||
      static_cast<int>(d.end.size()) != len + 1) {
    throw std::invalid_argument("rewrite decisions do not fit the instance");
  }
  TokenSeq out;
  for (int j = 0; j <= len; ++j) {
    if (d.start[j] <= d.end[j]) {
      if (d.start[j] < 0 || d.end[j] >= static_cast<int>(flat.size())) {
        throw std::invalid_argument("insertion span out of range");
      }
      for (int i = d.start[j]; i <= d.end[j]; ++i) out.push_back(*flat[i]);
    }
    if (j < len && d.keep[j]) out.push_back(last[j]);
  }
  return out;
}

TaskBPrediction predict_b(const LinearModel& model, const Instance& inst) {
  require_space(model, Task::kB);
  if (inst.utterances.size() < 2) throw std::invalid_argument("no context");
  const DialogueView view = make_view(inst, model.space);
  const int len = view.last_length;

  TaskBPrediction out;
  double conf = 1.0;
  std::vector<double> z(2);
  for (int j = 0; j < len; ++j) {
    FeatureVector fv = keep_features(model.space, view, j);
    z[0] = model.score(kKeep, fv);
    z[1] = model.score(kDelete, fv);
    softmax(z);
    const bool keep = z[0] >= z[1];
    out.keep_probs.push_back({z[0], z[1]});
    out.decisions.keep.push_back(keep);
    conf *= keep ? z[0] : z[1];
  }
  for (int j = 0; j <= len; ++j) {
    SpanScores s = span_distributions(model, view, slot_info(model.space, view, inst, j));
    softmax(s.start);
    softmax(s.end);
    const int st = argmax(s.start);
    const int ed = argmax(s.end);
    out.decisions.start.push_back(st);
    out.decisions.end.push_back(ed);
    if (st <= ed) conf *= s.start[st] * s.end[ed];
    out.start_probs.push_back(std::move(s.start));
    out.end_probs.push_back(std::move(s.end));
  }
  out.rewrite = assemble_rewrite(inst, out.decisions);
  out.confidence = Score(std::clamp(conf, 0.0, 1.0));
  return out;
}

RewriteDecisions canonical_target(const RewriteDecisions& decoded) {
  RewriteDecisions t = decoded;
  for (std::size_t j = 0; j < t.start.size(); ++j) {
    if (t.start[j] > t.end[j]) {
      t.start[j] = kNoInsertStart;
      t.end[j] = kNoInsertEnd;
    }
  }
  return t;
}

RewriteDecisions derive_rewrite_target(const Instance& inst, const TokenSeq& rewrite) {
  if (inst.utterances.size() < 2) throw std::invalid_argument("no context");
  std::vector<const std::string*> flat;
  for (const Utterance& u : inst.utterances) {
    for (const std::string& t : u.tokens) flat.push_back(&t);
  }
  const TokenSeq& x = inst.last_utterance();
  const int len = static_cast<int>(x.size());
  const int glen = static_cast<int>(rewrite.size());
  const int n = static_cast<int>(flat.size());
  const int last_begin = n - len;

  // Latest occurrence of rewrite[a, a+r) in the flattened dialogue,
  // preferring occurrences that lie wholly in the context.
  std::map<std::pair<int, int>, int> found_cache;
  auto find_run = [&](int a, int r) {
    auto key = std::make_pair(a, r);
    if (auto it = found_cache.find(key); it != found_cache.end()) return it->second;
    int in_context = -1, anywhere = -1;
    for (int s = n - r; s >= 0; --s) {
      bool ok = true;
      for (int q = 0; q < r && ok; ++q) ok = *flat[s + q] == rewrite[a + q];
      if (!ok) continue;
      if (anywhere < 0) anywhere = s;
      if (s + r <= last_begin) {
        in_context = s;
        break;
      }
    }
    int pos = in_context >= 0 ? in_context : anywhere;
    found_cache[key] = pos;
    return pos;
  };

  // value = (kept tokens, -insertion runs); lexicographically maximized.
  using Value = std::pair<int, int>;
  constexpr Value kInvalid{std::numeric_limits<int>::min(), 0};
  struct Choice {
    int run = 0;  // inserted tokens before slot j
    bool keep = false;
  };
  std::vector<std::vector<Value>> best(len + 2, std::vector<Value>(glen + 1, kInvalid));
  std::vector<std::vector<Choice>> choice(len + 2, std::vector<Choice>(glen + 1));

  for (int j = len; j >= 0; --j) {
    for (int g = glen; g >= 0; --g) {
      Value top = kInvalid;
      Choice pick;
      // Insertions are tried before the no-insertion option so that ties
      // resolve to the earliest slot.
      for (int r = glen - g; r >= 0; --r) {
        if (r > 0 && find_run(g, r) < 0) continue;
        const int g2 = g + r;
        const int runs = r > 0 ? 1 : 0;
        if (j == len) {
          if (g2 == glen && Value{0, -runs} > top) {
            top = {0, -runs};
            pick = {r, false};
          }
          continue;
        }
        if (g2 < glen && x[j] == rewrite[g2] && best[j + 1][g2 + 1] != kInvalid) {
          Value v{best[j + 1][g2 + 1].first + 1, best[j + 1][g2 + 1].second - runs};
          if (v > top) {
            top = v;
            pick = {r, true};
          }
        }
        if (best[j + 1][g2] != kInvalid) {
          Value v{best[j + 1][g2].first, best[j + 1][g2].second - runs};
          if (v > top) {
            top = v;
            pick = {r, false};
          }
        }
      }
      best[j][g] = top;
      choice[j][g] = pick;
    }
  }
  if (best[0][0] == kInvalid) {
    throw std::invalid_argument("rewrite of instance " + inst.id +
                                " is not expressible as keep/delete/insert");
  }

  RewriteDecisions d;
  int g = 0;
  for (int j = 0; j <= len; ++j) {
    const Choice c = choice[j][g];
    if (c.run > 0) {
      const int s = find_run(g, c.run);
      d.start.push_back(s);
      d.end.push_back(s + c.run - 1);
    } else {
      d.start.push_back(kNoInsertStart);
      d.end.push_back(kNoInsertEnd);
    }
    g += c.run;
    if (j < len) {
      d.keep.push_back(c.keep);
      if (c.keep) ++g;
    }
  }
  return d;
}

double example_loss_b(const LinearModel& model, const ExampleB& ex,
                      Gradient* grad, double scale) {
  const Instance& inst = *ex.instance;
  const DialogueView view = make_view(inst, model.space);
  const int len = view.last_length;
  const RewriteDecisions& t = ex.target;
  if (static_cast<int>(t.keep.size()) != len ||
      static_cast<int>(t.start.size()) != len + 1 ||
      static_cast<int>(t.end.size()) != len + 1) {
    throw std::invalid_argument("rewrite target does not fit the instance");
  }
  double loss = 0.0;
  std::vector<double> z(2);
  for (int j = 0; j < len; ++j) {
    FeatureVector fv = keep_features(model.space, view, j);
    z[0] = model.score(kKeep, fv);
    z[1] = model.score(kDelete, fv);
    std::vector<double> logits = z;
    const int y = t.keep[j] ? 0 : 1;
    loss += softmax(z) - logits[y];
    if (grad) {
      for (int l = 0; l < 2; ++l) {
        double d = scale * (z[l] - (l == y ? 1.0 : 0.0));
        add_features(grad, model, kKeep + l, fv, d);
        grad->bias[kKeep + l] += d;
      }
    }
  }
  const int n = view.size();
  std::vector<FeatureVector> fvs(n);
  for (int j = 0; j <= len; ++j) {
    const SlotInfo slot = slot_info(model.space, view, inst, j);
    for (int i = 0; i < n; ++i) fvs[i] = pair_features(model.space, view, slot, i);
    for (int head : {kStart, kEnd}) {
      const int y = head == kStart ? t.start[j] : t.end[j];
      if (y < 0 || y >= n) throw std::invalid_argument("span target out of range");
      std::vector<double> p(n);
      for (int i = 0; i < n; ++i) p[i] = model.score(head, fvs[i]);
      const double target_logit = p[y];
      loss += softmax(p) - target_logit;
      if (grad) {
        for (int i = 0; i < n; ++i) {
          double d = scale * (p[i] - (i == y ? 1.0 : 0.0));
          add_features(grad, model, head, fvs[i], d);
          grad->bias[head] += d;
        }
      }
    }
  }
  return loss;
}

// ---------------------------------------------------------------- training

namespace {

template <typename Example, typename LossFn>
Objective objective(const LinearModel& model, const std::vector<Example>& labeled,
                    const std::vector<Example>& pseudo, double lambda, LossFn loss_fn) {
  Objective obj{0.0, zero_gradient(model)};
  for (const Example& ex : labeled) obj.loss += loss_fn(model, ex, &obj.gradient, 1.0);
  for (const Example& ex : pseudo) {
    obj.loss += lambda * loss_fn(model, ex, &obj.gradient, lambda);
  }
  return obj;
}

template <typename Example, typename LossFn>
TrainResult train(LinearModel model, const std::vector<Example>& labeled,
                  const std::vector<Example>& pseudo, const TrainConfig& cfg,
                  int epochs, std::uint64_t seed, LossFn loss_fn) {
  cfg.validate();
  if (labeled.empty() && pseudo.empty()) {
    throw std::invalid_argument("train_epochs: no training data");
  }
  model.check();
  const std::size_t total = labeled.size() + pseudo.size();
  std::vector<std::size_t> order(total);
  TrainResult result;
  Gradient grad = zero_gradient(model);
  for (int epoch = 0; epoch < epochs; ++epoch) {
    std::iota(order.begin(), order.end(), 0);
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(epoch)));
    rng.shuffle(order);
    double epoch_loss = 0.0;
    for (std::size_t b = 0; b < total; b += cfg.batch_size) {
      const std::size_t e = std::min(total, b + cfg.batch_size);
      const double inv = 1.0 / static_cast<double>(e - b);
      std::fill(grad.weights.begin(), grad.weights.end(), 0.0);
      std::fill(grad.bias.begin(), grad.bias.end(), 0.0);
      for (std::size_t q = b; q < e; ++q) {
        const std::size_t idx = order[q];
        const bool is_labeled = idx < labeled.size();
        const double weight = is_labeled ? 1.0 : cfg.lambda;
        const Example& ex = is_labeled ? labeled[idx] : pseudo[idx - labeled.size()];
        if (weight == 0.0) continue;
        epoch_loss += weight * loss_fn(model, ex, &grad, weight * inv);
      }
      for (std::size_t k = 0; k < grad.weights.size(); ++k) {
        model.weights[k] -= cfg.learning_rate * grad.weights[k];
      }
      for (std::size_t k = 0; k < grad.bias.size(); ++k) {
        model.bias[k] -= cfg.learning_rate * grad.bias[k];
      }
    }
    result.loss_trace.push_back(epoch_loss / static_cast<double>(total));
  }
  result.model = std::move(model);
  return result;
}

}  // namespace

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw std::invalid_argument("learning_rate must be > 0");
  }
  if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
  if (epochs_per_iteration < 1) {
    throw std::invalid_argument("epochs_per_iteration must be >= 1");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("lambda must be >= 0");
  }
}

Objective objective_a(const LinearModel& model, const std::vector<ExampleA>& labeled,
                      const std::vector<ExampleA>& pseudo, double lambda) {
  return objective(model, labeled, pseudo, lambda, example_loss_a);
}

Objective objective_b(const LinearModel& model, const std::vector<ExampleB>& labeled,
                      const std::vector<ExampleB>& pseudo, double lambda) {
  return objective(model, labeled, pseudo, lambda, example_loss_b);
}

TrainResult train_epochs(LinearModel model, const std::vector<ExampleA>& labeled,
                         const std::vector<ExampleA>& pseudo, const TrainConfig& cfg,
                         int epochs, std::uint64_t seed) {
  require_space(model, Task::kA);
  return train(std::move(model), labeled, pseudo, cfg, epochs, seed, example_loss_a);
}

TrainResult train_epochs(LinearModel model, const std::vector<ExampleB>& labeled,
                         const std::vector<ExampleB>& pseudo, const TrainConfig& cfg,
                         int epochs, std::uint64_t seed) {
  require_space(model, Task::kB);
  return train(std::move(model), labeled, pseudo, cfg, epochs, seed, example_loss_b);
}

std::vector<ExampleA> gold_examples_a(const std::vector<Instance>& corpus) {
  std::vector<ExampleA> out;
  out.reserve(corpus.size());
  for (const Instance& inst : corpus) {
    if (!inst.gold_a) throw std::invalid_argument("instance " + inst.id + " lacks gold_a");
    out.push_back({&inst, *inst.gold_a, {}});
  }
  return out;
}

std::vector<ExampleB> gold_examples_b(const std::vector<Instance>& corpus) {
  std::vector<ExampleB> out;
  out.reserve(corpus.size());
  for (const Instance& inst : corpus) {
    if (!inst.gold_b) throw std::invalid_argument("instance " + inst.id + " lacks gold_b");
    out.push_back({&inst, derive_rewrite_target(inst, *inst.gold_b)});
  }
  return out;
}

}  // namespace friendlab
