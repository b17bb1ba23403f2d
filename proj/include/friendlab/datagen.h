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

// Synthetic friend-task world: multi-utterance dialogues whose last
// utterance carries predicates with pronominal or elided arguments.
// Task A labels argument spans anywhere in the dialogue; task B rewrites
// the last utterance so that it stands alone.

#ifndef FRIENDLAB_DATAGEN_H_
#define FRIENDLAB_DATAGEN_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "friendlab/core.h"

namespace friendlab {

inline constexpr std::string_view kPronoun = "PRN";
inline constexpr int kFillerCount = 5;

enum class TokenClass { kEntity, kPredicate, kPronoun, kFiller, kUnknown };
TokenClass classify_token(std::string_view token);
bool is_entity(std::string_view token);

enum class Speaker { kA, kB };

struct Utterance {
  Speaker speaker = Speaker::kA;
  TokenSeq tokens;
};

struct PredicateRef {
  int utterance_index = 0;
  int token_index = 0;
  friend bool operator==(const PredicateRef&, const PredicateRef&) = default;
};

// Inclusive token range inside one utterance.
struct Span {
  int utterance_index = 0;
  int start = 0;
  int end = 0;
  friend bool operator==(const Span&, const Span&) = default;
};

// Roles in canonical concatenation order.
enum class Role { kArg0, kArg1, kArg2, kArg3, kArg4, kArgmTmp, kArgmLoc, kArgmPrp };
inline constexpr int kRoleCount = 8;
std::string_view role_name(Role role);
// Throws std::invalid_argument for unknown names.
Role parse_role(std::string_view name);

// At most one span per role; iteration is always in canonical order.
class ArgumentSet {
 public:
  void set(Role role, Span span) { spans_[static_cast<int>(role)] = span; }
  void erase(Role role) { spans_[static_cast<int>(role)].reset(); }
  const std::optional<Span>& get(Role role) const {
    return spans_[static_cast<int>(role)];
  }
  bool empty() const;
  int size() const;

  friend bool operator==(const ArgumentSet&, const ArgumentSet&) = default;

 private:
  std::array<std::optional<Span>, kRoleCount> spans_;
};

// Per-slot sampling decision, kept for distributional checks.
enum class SlotRealization { kExplicit, kPronoun, kElided };
struct SlotTrace {
  bool eligible = false;  // a compatible antecedent existed in context
  SlotRealization realization = SlotRealization::kExplicit;
};
struct GenerationTrace {
  // [predicate][0 = subject, 1 = object]
  std::vector<std::array<SlotTrace, 2>> slots;
};

struct Instance {
  std::string id;
  std::vector<Utterance> utterances;
  std::vector<PredicateRef> predicates;
  std::optional<std::vector<ArgumentSet>> gold_a;
  std::optional<TokenSeq> gold_b;
  // Populated by the generator only; never serialized.
  std::optional<GenerationTrace> trace;

  const TokenSeq& last_utterance() const { return utterances.back().tokens; }
  const std::string& predicate_token(std::size_t k) const;
};

// Throws std::invalid_argument if structural invariants fail (empty
// utterances, predicates outside the last utterance, gold arity, spans).
void validate_instance(const Instance& instance);

struct WorldConfig {
  int n_entities = 20;
  int n_predicates = 10;
  int min_context_utterances = 2;
  int max_context_utterances = 4;
  double pronoun_rate = 0.4;
  double ellipsis_rate = 0.3;
  int max_predicates_last = 2;
  // Hidden entity types driving selectional preferences.
  int n_entity_types = 4;
  double filler_rate = 0.3;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

std::string entity_token(int index);
std::string predicate_token(int index);
std::string filler_token(int index);

// Selectional preferences of the world. Fixed functions of the config so
// that corpora drawn with different seeds share one lexicon.
int entity_type(const WorldConfig& cfg, int entity);
int subject_type(const WorldConfig& cfg, int predicate);
int object_type(const WorldConfig& cfg, int predicate);

// Deterministic in (seed, n, cfg). Instance i depends only on (seed, i,
// cfg), so a longer corpus extends a shorter one. Throws on n < 1.
std::vector<Instance> generate_corpus(std::uint64_t seed, int n,
                                      const WorldConfig& cfg);

// Parameter-free sentence-level labeler used as the task-B translation:
// ARG0 is the token left of the predicate and ARG1 the token right of it,
// each only when that token is an entity. Spans carry `utterance_index`.
// Throws std::out_of_range for bad predicate indices.
std::vector<ArgumentSet> oracle_labeler(std::span<const std::string> utterance,
                                        std::span<const int> predicates,
                                        int utterance_index = 0);

}  // namespace friendlab

#endif  // FRIENDLAB_DATAGEN_H_
