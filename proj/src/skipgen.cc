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

#include "skiptree/skipgen.h"

#include <algorithm>
#include <numeric>

#include "skiptree/parallel.h"

namespace skiptree {

std::string_view to_string(GenMode mode) {
  switch (mode) {
    case GenMode::kSkipTreeUniform: return "skip-tree-uniform";
    case GenMode::kSkipTreeWeighted: return "skip-tree-weighted";
    case GenMode::kSkipSeqShort: return "skip-seq-short";
    case GenMode::kSkipSeqMedium: return "skip-seq-medium";
    case GenMode::kSkipSeqLong: return "skip-seq-long";
  }
  return "skip-tree-weighted";
}

std::optional<GenMode> parse_gen_mode(std::string_view s) {
  for (GenMode m : {GenMode::kSkipTreeUniform, GenMode::kSkipTreeWeighted,
                    GenMode::kSkipSeqShort, GenMode::kSkipSeqMedium,
                    GenMode::kSkipSeqLong}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

bool is_skip_tree(GenMode mode) {
  return mode == GenMode::kSkipTreeUniform ||
         mode == GenMode::kSkipTreeWeighted;
}

double DatasetStats::mean_input_len() const {
  return example_count == 0 ? 0.0
                            : static_cast<double>(input_token_total) /
                                  static_cast<double>(example_count);
}

double DatasetStats::mean_output_len() const {
  return example_count == 0 ? 0.0
                            : static_cast<double>(output_token_total) /
                                  static_cast<double>(example_count);
}

void DatasetStats::add(const MaskedExample& ex) {
  ++example_count;
  input_token_total += ex.input.size();
  output_token_total += ex.target.size();
}

void DatasetStats::merge(const DatasetStats& o) {
  example_count += o.example_count;
  input_token_total += o.input_token_total;
  output_token_total += o.output_token_total;
  statements_used += o.statements_used;
  records_skipped += o.records_skipped;
  truncated_inputs += o.truncated_inputs;
  dropped_long_targets += o.dropped_long_targets;
  dropped_truncated_predict += o.dropped_truncated_predict;
}

std::vector<Candidate> candidates(const Statement& s) {
  std::vector<Candidate> out;
  if (s.body.is_atom()) {
    out.push_back({{}, s.body, 1});
    return out;
  }
  for (Subexpression& sub : subexpressions(s.body)) {
    if (sub.is_root) continue;
    const std::size_t weight = sub.node.token_count();
    out.push_back({std::move(sub.path), std::move(sub.node), weight});
  }
  return out;
}

Path sample_predict(std::span<const Candidate> cands, GenMode mode, Rng& rng,
                    std::set<Path>& used) {
  std::vector<std::size_t> open;
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (used.count(cands[i].path) != 0) continue;
    open.push_back(i);
    total += mode == GenMode::kSkipTreeWeighted ? cands[i].weight : 1;
  }
  if (open.empty()) throw ExhaustedError("every candidate has been used");
  std::size_t pick = open.back();
  if (mode == GenMode::kSkipTreeWeighted) {
    std::uint64_t r = rng.uniform(total);
    for (std::size_t i : open) {
      if (r < cands[i].weight) {
        pick = i;
        break;
      }
      r -= cands[i].weight;
    }
  } else {
    pick = open[rng.uniform(open.size())];
  }
  used.insert(cands[pick].path);
  return cands[pick].path;
}

std::vector<Path> sample_masks(std::span<const Candidate> cands, std::size_t k,
                               const Path& predict_path, Rng& rng) {
  k = std::min(k, cands.size());
  std::vector<std::size_t> order(cands.size());
  std::iota(order.begin(), order.end(), 0);
  // Partial Fisher-Yates: the first k slots are a uniform draw without
  // replacement.
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.uniform(order.size() - i);
    std::swap(order[i], order[j]);
  }
  std::vector<std::size_t> drawn;
  for (std::size_t i = 0; i < k; ++i) {
    if (!overlaps(cands[order[i]].path, predict_path)) drawn.push_back(order[i]);
  }
  std::stable_sort(drawn.begin(), drawn.end(),
                   [&](std::size_t a, std::size_t b) {
                     return cands[a].weight > cands[b].weight;
                   });
  std::vector<Path> applied;
  for (std::size_t i : drawn) {
    const bool clash = std::any_of(
        applied.begin(), applied.end(),
        [&](const Path& p) { return overlaps(p, cands[i].path); });
    if (!clash) applied.push_back(cands[i].path);
  }
  return applied;
}

namespace {

SExpr mask_all(const SExpr& e, const SExpr& content, const SExpr& mask,
               bool& changed) {
  if (e == content) {
    changed = true;
    return mask;
  }
  if (e.is_atom()) return e;
  std::vector<SExpr> kids;
  kids.reserve(e.size());
  bool any = false;
  for (const SExpr& c : e.children()) {
    bool child_changed = false;
    kids.push_back(mask_all(c, content, mask, child_changed));
    any = any || child_changed;
  }
  if (!any) return e;
  changed = true;
  return SExpr::list(std::move(kids));
}

TokenSeq frame_target(const SExpr& e) {
  TokenSeq t{std::string(kStartToken)};
  flatten_into(e, t);
  t.emplace_back(kEndToken);
  return t;
}

}  // namespace

MaskedExample apply_masking(const Statement& s, const Path& predict_path,
                            std::span<const Path> mask_paths) {
  const SExpr predicted = at_path(s.body, predict_path);
  SExpr body = replace_at_path(s.body, predict_path,
                               SExpr::atom(std::string(kPredictToken)));
  std::vector<Path> order(mask_paths.begin(), mask_paths.end());
  std::stable_sort(order.begin(), order.end(), [&](const Path& a, const Path& b) {
    return at_path(s.body, a).token_count() > at_path(s.body, b).token_count();
  });
  const SExpr mask = SExpr::atom(std::string(kMaskToken));
  for (const Path& p : order) {
    bool changed = false;
    body = mask_all(body, at_path(s.body, p), mask, changed);
  }
  Statement masked = s;
  masked.body = body;
  MaskedExample ex;
  ex.input = masked.tokens();
  ex.target = frame_target(predicted);
  ex.source_id = s.source_id;
  ex.predict_path = predict_path;
  ex.mask_paths = std::move(order);
  return ex;
}

LimitOutcome enforce_limits(MaskedExample& ex, std::size_t max_input_tokens,
                            std::size_t max_output_tokens) {
  if (ex.target.size() > max_output_tokens) return LimitOutcome::kDroppedTarget;
  if (ex.input.size() <= max_input_tokens) return LimitOutcome::kKept;
  ex.input.resize(max_input_tokens);
  if (count_atoms(ex.input, kPredictToken) == 0) {
    return LimitOutcome::kDroppedPredict;
  }
  return LimitOutcome::kTruncated;
}

namespace {

std::size_t span_limit(GenMode mode, std::size_t len) {
  switch (mode) {
    case GenMode::kSkipSeqShort: return std::min(len, kShortSpanLimit);
    case GenMode::kSkipSeqMedium: return std::min(len, kMediumSpanLimit);
    case GenMode::kSkipSeqLong: return len;
    default:
      throw std::invalid_argument("not a skip-sequence mode");
  }
}

}  // namespace

std::pair<std::size_t, std::size_t> sample_span(std::size_t len, GenMode mode,
                                                Rng& rng) {
  if (len < 2) throw std::invalid_argument("skip-sequence needs >= 2 tokens");
  const std::size_t limit = span_limit(mode, len);
  for (;;) {
    const std::size_t a = rng.uniform(len + 1);
    const std::size_t b = rng.uniform(len + 1);
    if (a == b) continue;
    const std::size_t lo = std::min(a, b);
    const std::size_t hi = std::max(a, b);
    if (hi - lo <= limit) return {lo, hi};
  }
}

std::size_t span_count(std::size_t len, GenMode mode) {
  const std::size_t limit = span_limit(mode, len);
  std::size_t n = 0;
  for (std::size_t width = 1; width <= limit; ++width) n += len - width + 1;
  return n;
}

MaskedExample skip_sequence_example(const Statement& s,
                                    std::pair<std::size_t, std::size_t> span) {
  const TokenSeq body = flatten(s.body);
  MaskedExample ex;
  ex.input.emplace_back("(");
  ex.input.emplace_back(s.tag == StatementTag::kTheorem ? kTheoremTag : kGoalTag);
  ex.input.insert(ex.input.end(), body.begin(), body.begin() + span.first);
  ex.input.emplace_back(kPredictToken);
  ex.input.insert(ex.input.end(), body.begin() + span.second, body.end());
  ex.input.emplace_back(")");
  ex.target.emplace_back(kStartToken);
  ex.target.insert(ex.target.end(), body.begin() + span.first,
                   body.begin() + span.second);
  ex.target.emplace_back(kEndToken);
  ex.source_id = s.source_id;
  ex.span = span;
  return ex;
}

MaskedExample generate_skip_sequence(const Statement& s, GenMode mode,
                                     Rng& rng) {
  return skip_sequence_example(s, sample_span(s.body.token_count(), mode, rng));
}

namespace {

// Applies the length limits, books the outcome and appends survivors.
void keep_if_fits(MaskedExample ex, const GenConfig& cfg, DatasetStats& stats,
                  std::vector<MaskedExample>& out) {
  switch (enforce_limits(ex, cfg.max_input_tokens, cfg.max_output_tokens)) {
    case LimitOutcome::kDroppedTarget:
      ++stats.dropped_long_targets;
      return;
    case LimitOutcome::kDroppedPredict:
      ++stats.dropped_truncated_predict;
      return;
    case LimitOutcome::kTruncated:
      ++stats.truncated_inputs;
      break;
    case LimitOutcome::kKept:
      break;
  }
  ex.sample_index = out.size();
  stats.add(ex);
  out.push_back(std::move(ex));
}

}  // namespace

std::vector<MaskedExample> generate_for_statement(const Statement& s,
                                                  std::size_t statement_index,
                                                  const GenConfig& cfg,
                                                  DatasetStats& stats) {
  std::vector<MaskedExample> out;
  Rng rng = Rng::stream(cfg.seed, statement_index);
  const std::size_t n = cfg.samples_per_statement;
  if (is_skip_tree(cfg.mode)) {
    const std::vector<Candidate> cands = candidates(s);
    std::set<Path> used;
    while (out.size() < n && used.size() < cands.size()) {
      const Path predict = sample_predict(cands, cfg.mode, rng, used);
      const std::vector<Path> masks =
          cfg.mask_count == 0
              ? std::vector<Path>{}
              : sample_masks(cands, cfg.mask_count, predict, rng);
      keep_if_fits(apply_masking(s, predict, masks), cfg, stats, out);
    }
    return out;
  }
  const std::size_t len = s.body.token_count();
  if (len < 2) return out;
  const std::size_t available = span_count(len, cfg.mode);
  std::set<std::pair<std::size_t, std::size_t>> used;
  while (out.size() < n && used.size() < available) {
    const auto span = sample_span(len, cfg.mode, rng);
    if (!used.insert(span).second) continue;
    keep_if_fits(skip_sequence_example(s, span), cfg, stats, out);
  }
  return out;
}

DatasetStats generate(std::span<const CorpusRecord> corpus,
                      const GenConfig& cfg, const ExampleSink& sink,
                      std::size_t workers) {
  constexpr std::size_t kChunk = 256;
  DatasetStats total;
  for (std::size_t begin = 0; begin < corpus.size(); begin += kChunk) {
    const std::size_t end = std::min(corpus.size(), begin + kChunk);
    std::vector<std::vector<MaskedExample>> results(end - begin);
    std::vector<DatasetStats> stats(end - begin);
    parallel_for(end - begin, workers, [&](std::size_t i) {
      const CorpusRecord& rec = corpus[begin + i];
      if (!rec.statement || rec.statement->split != Split::kTrain) {
        stats[i].records_skipped = 1;
        return;
      }
      stats[i].statements_used = 1;
      results[i] = generate_for_statement(*rec.statement, rec.index, cfg, stats[i]);
    });
    for (std::size_t i = 0; i < results.size(); ++i) {
      for (const MaskedExample& ex : results[i]) sink(ex);
      total.merge(stats[i]);
    }
  }
  return total;
}

}  // namespace skiptree
