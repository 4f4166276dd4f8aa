/* Copyright 2026 The skiptree Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Evaluation prompts derived from validation theorems: type inference (easy
// and hard), missing assumptions, equality completion and the free-form
// conjecturing prompt.

#ifndef SKIPTREE_EVALTASKS_H_
#define SKIPTREE_EVALTASKS_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "skiptree/rng.h"
#include "skiptree/sexpr.h"
#include "skiptree/statement.h"

namespace skiptree {

enum class TaskKind {
  kTypeInference,
  kHardTypeInference,
  kAssumptions,
  kEqualities,
  kFreeForm,
};

// "type", "type-hard", "assumptions", "equalities", "freeform".
std::string_view to_string(TaskKind kind);
std::optional<TaskKind> parse_task_kind(std::string_view s);

struct EvalTask {
  TaskKind kind = TaskKind::kFreeForm;
  std::string task_id;
  std::string source_id;
  Path site_path;  // relative to the statement body
  TokenSeq input;  // full statement with exactly one <PREDICT>
  std::optional<TokenSeq> ground_truth;
  // The unmasked source statement, carried only when the input hides more
  // than the predicted site (hard type inference).
  std::optional<TokenSeq> source;
};

class NoCandidatesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TypeVariant { kEasy, kHard };

// Paths of the type annotation (second child) of every (v T n) / (c T n)
// node, in preorder. Types nested inside other types are not sites.
std::vector<Path> type_sites(const SExpr& body);

EvalTask type_inference_at(const Statement& s, const Path& site,
                           TypeVariant variant);
// Samples one site uniformly. Throws NoCandidatesError.
EvalTask extract_type_inference(const Statement& s, TypeVariant variant,
                                Rng& rng);
// Up to `count` distinct sites, in sampling order.
std::vector<EvalTask> extract_type_inference(const Statement& s,
                                             TypeVariant variant,
                                             std::size_t count, Rng& rng);

// Paths of the `==>` applications reachable from the root through the
// bodies of `!`/`?`, both sides of `/\` and `\/`, and the right side of
// other top-level implications.
std::vector<Path> top_level_implications(const SExpr& body);
// Paths of the `=` applications reachable the same way.
std::vector<Path> top_level_equalities(const SExpr& body);

// One task per top-level implication; the left operand is predicted.
std::vector<EvalTask> extract_assumptions(const Statement& s);
// Two tasks per top-level equality: left side, then right side.
std::vector<EvalTask> extract_equalities(const Statement& s);

// (<theorem> <PREDICT>) without ground truth.
EvalTask free_form_prompt();

// Replaces the single <PREDICT> token of `input` by `fill`.
TokenSeq splice(const TokenSeq& input, const TokenSeq& fill);

// Path of the first <PREDICT> atom, if any.
std::optional<Path> find_predict(const SExpr& e);

}  // namespace skiptree

#endif  // SKIPTREE_EVALTASKS_H_
