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

// Scoring of beam-search predictions against evaluation tasks: exact match
// at k, parse and typecheck rates of the reconstructed statements, and
// novelty with respect to the training corpus.

#ifndef SKIPTREE_SCORER_H_
#define SKIPTREE_SCORER_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "skiptree/evaltasks.h"
#include "skiptree/hol.h"
#include "skiptree/statement.h"

namespace skiptree {

// Drops one leading <START> and one trailing <END>, if present.
TokenSeq strip_frame(std::span<const std::string> pred);

class MissingGroundTruthError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// True iff one of the first k stripped beams equals the ground truth token
// for token.
bool exact_match(const EvalTask& task, std::span<const TokenSeq> beams,
                 std::size_t k);

// ParseFailure: the prediction, or the statement it completes, is not a
// single well-formed S-expression.
class ReconstructError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The unmasked source statement with the task site replaced by <PREDICT>.
TokenSeq unmasked_prompt(const EvalTask& task);

// Splices the stripped prediction into the unmasked source at the task site.
Statement reconstruct(const EvalTask& task, std::span<const std::string> pred);

// Renames bound variables, in binder preorder, to b0, b1, ... (skipping
// names taken by free variables). Free variables are untouched.
Term alpha_normalize(const Term& t);
// Normalizes if `e` parses as a term, returns it unchanged otherwise.
SExpr alpha_normalize(const SExpr& e);

enum class NoveltyGranularity {
  kStatements,      // whole training statements only
  kSubexpressions,  // plus every subtree of them
};

std::string_view to_string(NoveltyGranularity g);

// Alpha-normalized token sequences from the training split.
class CorpusIndex {
 public:
  static constexpr std::uint32_t kFormatVersion = 1;

  static CorpusIndex build(std::span<const CorpusRecord> corpus,
                           NoveltyGranularity granularity =
                               NoveltyGranularity::kSubexpressions);

  // `body` and `e` are normalized before lookup.
  bool contains_statement(const SExpr& body) const;
  bool contains_subtree(const SExpr& e) const;

  NoveltyGranularity granularity() const { return granularity_; }
  std::size_t statement_count() const { return statements_.size(); }
  std::size_t subtree_count() const { return subtrees_.size(); }

  // Versioned binary form: magic, version, granularity, then two sections
  // of length-prefixed token sequences.
  void save(std::ostream& out) const;
  void save(const std::string& path) const;
  static CorpusIndex load(std::istream& in);
  static CorpusIndex load(const std::string& path);

 private:
  NoveltyGranularity granularity_ = NoveltyGranularity::kSubexpressions;
  std::unordered_set<std::string> statements_;
  std::unordered_set<std::string> subtrees_;
};

// True iff the stripped prediction differs from the ground truth and
// neither the completed statement nor the prediction itself is in the
// index. Requires reconstruct(task, pred) to succeed.
bool novelty(const EvalTask& task, std::span<const std::string> pred,
             const CorpusIndex& index);

struct BeamRecord {
  std::string task_id;
  std::vector<TokenSeq> beams;  // best first
};

class AlignmentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Verdict {
  std::string task_id;
  std::size_t beam = 0;
  std::optional<bool> exact;  // absent without ground truth
  bool parsed = false;
  bool typechecks = false;
  std::optional<bool> novel;  // absent without an index
  std::string error;
};

// Rates are absent when their denominator is zero. Exact match is over
// tasks; parse, typecheck and novelty rates are over (task, beam) pairs.
struct ScoreReport {
  std::optional<TaskKind> task_kind;  // absent for an empty task list
  std::size_t n_tasks = 0;
  std::size_t n_predictions = 0;
  std::size_t width = 0;
  std::optional<double> exact_match_at_1;
  std::optional<double> exact_match_at_width;
  std::optional<double> parse_rate;
  std::optional<double> typecheck_rate;
  std::optional<double> novelty_rate;
  std::vector<Verdict> rows;
};

// One report per task kind present, in TaskKind order; a single empty
// report when there are no tasks. Every task needs
// exactly one beam record with the same id, and vice versa.
std::vector<ScoreReport> score(std::span<const EvalTask> tasks,
                               std::span<const BeamRecord> beams,
                               const CorpusIndex* index = nullptr,
                               std::size_t workers = 1);

// Fraction of (task, beam) pairs whose reconstruction typechecks.
double typecheck_rate(std::span<const EvalTask> tasks,
                      std::span<const BeamRecord> beams);

}  // namespace skiptree

#endif  // SKIPTREE_SCORER_H_
