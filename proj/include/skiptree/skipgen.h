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

// Self-supervised training examples from training-split statements.
//
// Skip-tree: one subexpression of the statement body is replaced by
// <PREDICT> and becomes the target; up to k further subexpressions are
// hidden behind <MASK> wherever they occur. Skip-sequence: a contiguous
// token span, ignoring tree structure, is replaced instead.
//
// Every input is a full statement serialization `(<theorem> ...)`; every
// target is framed as `<START> ... <END>`.

#ifndef SKIPTREE_SKIPGEN_H_
#define SKIPTREE_SKIPGEN_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "skiptree/rng.h"
#include "skiptree/sexpr.h"
#include "skiptree/statement.h"

namespace skiptree {

enum class GenMode {
  kSkipTreeUniform,
  kSkipTreeWeighted,
  kSkipSeqShort,
  kSkipSeqMedium,
  kSkipSeqLong,
};

std::string_view to_string(GenMode mode);
std::optional<GenMode> parse_gen_mode(std::string_view s);
bool is_skip_tree(GenMode mode);

// Maximum span length for the bounded skip-sequence variants.
inline constexpr std::size_t kShortSpanLimit = 50;
inline constexpr std::size_t kMediumSpanLimit = 100;

struct GenConfig {
  GenMode mode = GenMode::kSkipTreeWeighted;
  std::size_t mask_count = 2;               // k; ignored by skip-sequence
  std::size_t samples_per_statement = 100;  // n
  std::size_t max_input_tokens = 1024;
  std::size_t max_output_tokens = 512;
  std::uint64_t seed = 0;
};

struct MaskedExample {
  TokenSeq input;
  TokenSeq target;
  std::string source_id;
  std::size_t sample_index = 0;

  // Provenance, relative to the statement body. Not serialized.
  Path predict_path;
  std::vector<Path> mask_paths;                 // applied masks, in order
  std::pair<std::size_t, std::size_t> span{};   // skip-sequence only
};

struct DatasetStats {
  std::size_t example_count = 0;
  std::size_t input_token_total = 0;
  std::size_t output_token_total = 0;
  std::size_t statements_used = 0;
  std::size_t records_skipped = 0;  // malformed or not in the training split
  std::size_t truncated_inputs = 0;
  std::size_t dropped_long_targets = 0;
  std::size_t dropped_truncated_predict = 0;

  double mean_input_len() const;
  double mean_output_len() const;
  void add(const MaskedExample& ex);
  void merge(const DatasetStats& other);
};

struct Candidate {
  Path path;
  SExpr node;
  std::size_t weight;  // token count of the subtree
};

// Proper subtrees of the body in preorder. A body that is a single atom is
// its own sole candidate.
std::vector<Candidate> candidates(const Statement& s);

class ExhaustedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Draws an unused candidate (uniformly or proportionally to weight) and adds
// its path to `used`. Throws ExhaustedError when every candidate is used.
Path sample_predict(std::span<const Candidate> cands, GenMode mode, Rng& rng,
                    std::set<Path>& used);

// Draws k distinct candidates uniformly, drops those overlapping the
// predicted subtree, then keeps the largest first and drops any later one
// that overlaps an already kept mask. Result is in application order.
std::vector<Path> sample_masks(std::span<const Candidate> cands, std::size_t k,
                               const Path& predict_path, Rng& rng);

// Replaces the predicted subtree by <PREDICT>, then every occurrence of each
// masked subtree (outer-first, largest mask first) by <MASK>. No length
// limits are applied here.
MaskedExample apply_masking(const Statement& s, const Path& predict_path,
                            std::span<const Path> mask_paths);

enum class LimitOutcome { kKept, kTruncated, kDroppedTarget, kDroppedPredict };

// Drops over-long targets; cuts over-long inputs to their prefix and drops
// the example if that removes <PREDICT>.
LimitOutcome enforce_limits(MaskedExample& ex, std::size_t max_input_tokens,
                            std::size_t max_output_tokens);

// Half-open span [first, second) of a `len`-token body for the given
// skip-sequence variant.
std::pair<std::size_t, std::size_t> sample_span(std::size_t len, GenMode mode,
                                                Rng& rng);
std::size_t span_count(std::size_t len, GenMode mode);
MaskedExample skip_sequence_example(const Statement& s,
                                    std::pair<std::size_t, std::size_t> span);
MaskedExample generate_skip_sequence(const Statement& s, GenMode mode,
                                     Rng& rng);

// All examples for one statement; `statement_index` keys its random stream.
std::vector<MaskedExample> generate_for_statement(const Statement& s,
                                                  std::size_t statement_index,
                                                  const GenConfig& cfg,
                                                  DatasetStats& stats);

using ExampleSink = std::function<void(const MaskedExample&)>;

// Streams examples for every training statement to `sink`, ordered by
// (record order, sample_index) whatever the worker count.
DatasetStats generate(std::span<const CorpusRecord> corpus,
                      const GenConfig& cfg, const ExampleSink& sink,
                      std::size_t workers = 1);

}  // namespace skiptree

#endif  // SKIPTREE_SKIPGEN_H_
