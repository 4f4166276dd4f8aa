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

#include "skiptree/scorer.h"

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "skiptree/parallel.h"
#include "skiptree/typecheck.h"

namespace skiptree {

TokenSeq strip_frame(std::span<const std::string> pred) {
  std::size_t begin = 0;
  std::size_t end = pred.size();
  if (begin < end && pred[begin] == kStartToken) ++begin;
  if (begin < end && pred[end - 1] == kEndToken) --end;
  return TokenSeq(pred.begin() + begin, pred.begin() + end);
}

bool exact_match(const EvalTask& task, std::span<const TokenSeq> beams,
                 std::size_t k) {
  if (!task.ground_truth) {
    throw MissingGroundTruthError("task " + task.task_id +
                                  " has no ground truth");
  }
  k = std::min(k, beams.size());
  for (std::size_t i = 0; i < k; ++i) {
    if (strip_frame(beams[i]) == *task.ground_truth) return true;
  }
  return false;
}

TokenSeq unmasked_prompt(const EvalTask& task) {
  if (!task.source) return task.input;
  const SExpr source = parse_flat(*task.source);
  Path site{1};
  site.insert(site.end(), task.site_path.begin(), task.site_path.end());
  return flatten(
      replace_at_path(source, site, SExpr::atom(std::string(kPredictToken))));
}

Statement reconstruct(const EvalTask& task, std::span<const std::string> pred) {
  const TokenSeq stripped = strip_frame(pred);
  try {
    parse_flat(stripped);
    const SExpr whole = parse_flat(splice(unmasked_prompt(task), stripped));
    return statement_from_sexpr(whole, Split::kValid, task.source_id);
  } catch (const ParseError& e) {
    throw ReconstructError(std::string("ParseFailure: ") + e.what());
  }
}

namespace {

struct Binding {
  std::string name;
  HType type;
  std::string renamed;
};

void free_names(const Term& t, std::vector<Binding>& bound,
                std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::kVar: {
      const bool is_bound = std::any_of(
          bound.begin(), bound.end(), [&](const Binding& b) {
            return b.name == t.name() && b.type == t.type();
          });
      if (!is_bound) out.insert(t.name());
      return;
    }
    case Term::Kind::kConst:
      return;
    case Term::Kind::kApp:
      free_names(t.fn(), bound, out);
      free_names(t.arg(), bound, out);
      return;
    case Term::Kind::kAbs:
      bound.push_back({t.binder().name(), t.binder().type(), ""});
      free_names(t.body(), bound, out);
      bound.pop_back();
      return;
  }
}

class Renamer {
 public:
  explicit Renamer(std::set<std::string> taken) : taken_(std::move(taken)) {}

  Term rename(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::kVar:
        for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
          if (it->name == t.name() && it->type == t.type()) {
            return Term::var(t.type(), it->renamed);
          }
        }
        return t;
      case Term::Kind::kConst:
        return t;
      case Term::Kind::kApp: {
        Term fn = rename(t.fn());
        return Term::app(std::move(fn), rename(t.arg()));
      }
      case Term::Kind::kAbs: {
        const Term& b = t.binder();
        std::string fresh = next_name();
        env_.push_back({b.name(), b.type(), fresh});
        Term body = rename(t.body());
        env_.pop_back();
        return Term::abs(Term::var(b.type(), std::move(fresh)), std::move(body));
      }
    }
    return t;
  }

 private:
  std::string next_name() {
    for (;;) {
      std::string name = "b" + std::to_string(counter_++);
      if (taken_.count(name) == 0) return name;
    }
  }

  std::set<std::string> taken_;
  std::vector<Binding> env_;
  std::size_t counter_ = 0;
};

std::string key_of(const SExpr& e) { return join_tokens(flatten(e)); }

}  // namespace

Term alpha_normalize(const Term& t) {
  std::vector<Binding> bound;
  std::set<std::string> free;
  free_names(t, bound, free);
  return Renamer(std::move(free)).rename(t);
}

SExpr alpha_normalize(const SExpr& e) {
  try {
    return to_sexpr(alpha_normalize(parse_term(e)));
  } catch (const TypeError&) {
    return e;
  }
}

std::string_view to_string(NoveltyGranularity g) {
  return g == NoveltyGranularity::kStatements ? "statements" : "subexpressions";
}

CorpusIndex CorpusIndex::build(std::span<const CorpusRecord> corpus,
                               NoveltyGranularity granularity) {
  CorpusIndex index;
  index.granularity_ = granularity;
  for (const CorpusRecord& rec : corpus) {
    if (!rec.statement || rec.statement->split != Split::kTrain) continue;
    const SExpr& body = rec.statement->body;
    index.statements_.insert(key_of(alpha_normalize(body)));
    if (granularity == NoveltyGranularity::kSubexpressions) {
      for (const Subexpression& sub : subexpressions(body)) {
        index.subtrees_.insert(key_of(alpha_normalize(sub.node)));
      }
    }
  }
  return index;
}

bool CorpusIndex::contains_statement(const SExpr& body) const {
  return statements_.count(key_of(alpha_normalize(body))) != 0;
}

bool CorpusIndex::contains_subtree(const SExpr& e) const {
  if (subtrees_.empty()) return false;
  return subtrees_.count(key_of(alpha_normalize(e))) != 0;
}

namespace {

constexpr std::array<char, 8> kIndexMagic{'S', 'K', 'T', 'I', 'D', 'X', 0, 0};

void put_u32(std::ostream& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::ostream& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_le(std::istream& in, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) {
    const int c = in.get();
    if (c == EOF) throw std::runtime_error("truncated index file");
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
  }
  return v;
}

void put_section(std::ostream& out, const std::unordered_set<std::string>& keys) {
  // Sorted so that equal indexes serialize to equal bytes.
  std::vector<std::string> sorted(keys.begin(), keys.end());
  std::sort(sorted.begin(), sorted.end());
  put_u64(out, sorted.size());
  for (const std::string& key : sorted) {
    const std::vector<Token> tokens = tokenize(key);
    put_u32(out, static_cast<std::uint32_t>(tokens.size()));
    for (const Token& t : tokens) {
      put_u32(out, static_cast<std::uint32_t>(t.text.size()));
      out.write(t.text.data(), static_cast<std::streamsize>(t.text.size()));
    }
  }
}

void get_section(std::istream& in, std::unordered_set<std::string>& keys) {
  const std::uint64_t n = get_le(in, 8);
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint64_t count = get_le(in, 4);
    TokenSeq tokens;
    tokens.reserve(count);
    for (std::uint64_t j = 0; j < count; ++j) {
      const std::uint64_t len = get_le(in, 4);
      std::string tok(len, '\0');
      if (!in.read(tok.data(), static_cast<std::streamsize>(len))) {
        throw std::runtime_error("truncated index file");
      }
      tokens.push_back(std::move(tok));
    }
    keys.insert(join_tokens(tokens));
  }
}

}  // namespace

void CorpusIndex::save(std::ostream& out) const {
  out.write(kIndexMagic.data(), kIndexMagic.size());
  put_u32(out, kFormatVersion);
  put_u32(out, granularity_ == NoveltyGranularity::kStatements ? 0 : 1);
  put_section(out, statements_);
  put_section(out, subtrees_);
}

void CorpusIndex::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write index " + path);
  save(out);
}

CorpusIndex CorpusIndex::load(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kIndexMagic) {
    throw std::runtime_error("not a corpus index file");
  }
  const std::uint64_t version = get_le(in, 4);
  if (version != kFormatVersion) {
    throw std::runtime_error("unsupported index version " +
                             std::to_string(version));
  }
  CorpusIndex index;
  index.granularity_ = get_le(in, 4) == 0 ? NoveltyGranularity::kStatements
                                          : NoveltyGranularity::kSubexpressions;
  get_section(in, index.statements_);
  get_section(in, index.subtrees_);
  return index;
}

CorpusIndex CorpusIndex::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open index " + path);
  return load(in);
}

bool novelty(const EvalTask& task, std::span<const std::string> pred,
             const CorpusIndex& index) {
  const TokenSeq stripped = strip_frame(pred);
  if (task.ground_truth && stripped == *task.ground_truth) return false;
  const Statement whole = reconstruct(task, pred);
  if (index.contains_statement(whole.body)) return false;
  return !index.contains_subtree(parse_flat(stripped));
}

namespace {

std::vector<std::size_t> align(std::span<const EvalTask> tasks,
                               std::span<const BeamRecord> beams) {
  std::map<std::string, std::size_t> by_id;
  for (std::size_t i = 0; i < beams.size(); ++i) {
    if (!by_id.emplace(beams[i].task_id, i).second) {
      throw AlignmentError("duplicate beam record for task " + beams[i].task_id);
    }
  }
  std::set<std::string> seen;
  std::vector<std::size_t> out;
  out.reserve(tasks.size());
  for (const EvalTask& t : tasks) {
    if (!seen.insert(t.task_id).second) {
      throw AlignmentError("duplicate task id " + t.task_id);
    }
    auto it = by_id.find(t.task_id);
    if (it == by_id.end()) {
      throw AlignmentError("no beams for task " + t.task_id);
    }
    out.push_back(it->second);
  }
  if (beams.size() != tasks.size()) {
    for (const BeamRecord& b : beams) {
      if (seen.count(b.task_id) == 0) {
        throw AlignmentError("beams for unknown task " + b.task_id);
      }
    }
  }
  return out;
}

std::vector<Verdict> judge(const EvalTask& task, const BeamRecord& rec,
                           const CorpusIndex* index) {
  std::vector<Verdict> rows;
  for (std::size_t b = 0; b < rec.beams.size(); ++b) {
    Verdict v;
    v.task_id = task.task_id;
    v.beam = b;
    const TokenSeq& pred = rec.beams[b];
    if (task.ground_truth) v.exact = strip_frame(pred) == *task.ground_truth;
    try {
      const Statement whole = reconstruct(task, pred);
      v.parsed = true;
      if (auto err = check_statement(whole)) {
        v.error = std::string(to_string(err->kind())) + ": " + err->what();
      } else {
        v.typechecks = true;
      }
      if (index != nullptr) v.novel = novelty(task, pred, *index);
    } catch (const ReconstructError& e) {
      v.error = e.what();
      if (index != nullptr) v.novel = false;
    }
    rows.push_back(std::move(v));
  }
  return rows;
}

std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::vector<ScoreReport> score(std::span<const EvalTask> tasks,
                               std::span<const BeamRecord> beams,
                               const CorpusIndex* index, std::size_t workers) {
  const std::vector<std::size_t> beam_of = align(tasks, beams);
  std::vector<std::vector<Verdict>> rows(tasks.size());
  parallel_for(tasks.size(), workers, [&](std::size_t i) {
    rows[i] = judge(tasks[i], beams[beam_of[i]], index);
  });

  std::vector<ScoreReport> reports;
  for (TaskKind kind : {TaskKind::kTypeInference, TaskKind::kHardTypeInference,
                        TaskKind::kAssumptions, TaskKind::kEqualities,
                        TaskKind::kFreeForm}) {
    ScoreReport r;
    r.task_kind = kind;
    std::size_t with_truth = 0, hit1 = 0, hitw = 0;
    std::size_t parsed = 0, typed = 0, novel = 0;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      if (tasks[i].kind == kind) {
        r.width = std::max(r.width, beams[beam_of[i]].beams.size());
      }
    }
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      if (tasks[i].kind != kind) continue;
      ++r.n_tasks;
      const auto& task_beams = beams[beam_of[i]].beams;
      if (tasks[i].ground_truth) {
        ++with_truth;
        if (exact_match(tasks[i], task_beams, 1)) ++hit1;
        if (exact_match(tasks[i], task_beams, r.width)) ++hitw;
      }
      for (Verdict& v : rows[i]) {
        ++r.n_predictions;
        parsed += v.parsed ? 1 : 0;
        typed += v.typechecks ? 1 : 0;
        novel += v.novel.value_or(false) ? 1 : 0;
        r.rows.push_back(std::move(v));
      }
    }
    if (r.n_tasks == 0) continue;
    r.exact_match_at_1 = ratio(hit1, with_truth);
    r.exact_match_at_width = ratio(hitw, with_truth);
    r.parse_rate = ratio(parsed, r.n_predictions);
    r.typecheck_rate = ratio(typed, r.n_predictions);
    if (index != nullptr) r.novelty_rate = ratio(novel, r.n_predictions);
    reports.push_back(std::move(r));
  }
  if (reports.empty()) reports.emplace_back();
  return reports;
}

double typecheck_rate(std::span<const EvalTask> tasks,
                      std::span<const BeamRecord> beams) {
  const std::vector<std::size_t> beam_of = align(tasks, beams);
  std::size_t pairs = 0, typed = 0;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    for (const Verdict& v : judge(tasks[i], beams[beam_of[i]], nullptr)) {
      ++pairs;
      typed += v.typechecks ? 1 : 0;
    }
  }
  return pairs == 0 ? 0.0 : static_cast<double>(typed) / static_cast<double>(pairs);
}

}  // namespace skiptree
