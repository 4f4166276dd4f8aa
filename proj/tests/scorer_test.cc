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

#include <sstream>

#include <gtest/gtest.h>

#include "golden.h"
#include "oracles.h"
#include "skiptree/typecheck.h"
#include "test_util.h"

namespace skiptree {
namespace {

using testing::toks;

TokenSeq framed(const TokenSeq& core) {
  TokenSeq out{"<START>"};
  out.insert(out.end(), core.begin(), core.end());
  out.push_back("<END>");
  return out;
}

const std::string kNumEq = "(fun (num) (fun (num) (bool)))";
const std::string kNumOp = "(fun (num) (fun (num) (num)))";
const std::string kForallNum = "(fun (fun (num) (bool)) (bool))";

std::string num(const std::string& n) { return "(v (num) " + n + ")"; }

// !m n. n <= m ==> m - n + n = m
Statement sub_add() {
  const std::string body =
      "(a (c " + kForallNum + " !) (l " + num("m") + " (a (c " + kForallNum +
      " !) (l " + num("n") + " " +
      testing::imp(testing::bin(kNumEq, "<=", num("n"), num("m")),
                   testing::bin(kNumEq, "=",
                                testing::bin(kNumOp, "+",
                                             testing::bin(kNumOp, "-", num("m"), num("n")),
                                             num("n")),
                                num("m"))) +
      "))))";
  return testing::theorem(body, Split::kValid, "sub_add");
}

// x = y ==> a + x = a + y, with the assumption task.
EvalTask hypothesis_task() {
  const std::string hyp = testing::bin(kNumEq, "=", num("x"), num("y"));
  const Statement s = testing::theorem(
      testing::imp(hyp, testing::bin(kNumEq, "=",
                                     testing::bin(kNumOp, "+", num("a"), num("x")),
                                     testing::bin(kNumOp, "+", num("a"), num("y")))),
      Split::kValid, "xy");
  return extract_assumptions(s).at(0);
}

TEST(StripFrame, Examples) {
  EXPECT_EQ(strip_frame(toks("<START> (v bool x) <END>")), toks("(v bool x)"));
  EXPECT_EQ(strip_frame(toks("(v bool x)")), toks("(v bool x)"));
  EXPECT_TRUE(strip_frame(toks("<START>")).empty());
}

TEST(ExactMatch, Examples) {
  const Statement s = sub_add();
  const auto eqs = extract_equalities(s);
  ASSERT_EQ(eqs.size(), 2u);
  const EvalTask& rhs = eqs[1];
  EXPECT_EQ(*rhs.ground_truth, toks(num("m")));
  std::vector<TokenSeq> beams;
  for (const char* wrong : {"n", "k", "p", "q", "r", "s", "t"}) {
    beams.push_back(framed(toks(num(wrong))));
  }
  beams.push_back(framed(toks(num("m"))));
  EXPECT_TRUE(exact_match(rhs, beams, 8));
  EXPECT_FALSE(exact_match(rhs, beams, 7));
  EXPECT_FALSE(exact_match(rhs, std::span(beams).first(7), 8));
  EXPECT_TRUE(exact_match(rhs, std::vector<TokenSeq>{framed(*rhs.ground_truth)}, 1));
  EXPECT_THROW(exact_match(free_form_prompt(), beams, 1), MissingGroundTruthError);
}

TEST(Reconstruct, Examples) {
  const EvalTask t = hypothesis_task();
  const Statement back = reconstruct(t, framed(*t.ground_truth));
  EXPECT_EQ(back.tokens(), splice(t.input, *t.ground_truth));
  EXPECT_THROW(reconstruct(t, toks("( v bool")), ReconstructError);
  EXPECT_THROW(reconstruct(t, toks("x y")), ReconstructError);

  const TokenSeq swapped = toks(testing::bin(kNumEq, "=", num("y"), num("x")));
  const Statement other = reconstruct(t, swapped);
  EXPECT_FALSE(check_statement(other));
  EXPECT_NE(swapped, *t.ground_truth);
  EXPECT_FALSE(exact_match(t, std::vector<TokenSeq>{swapped}, 1));
}

TEST(Reconstruct, HardUsesUnmaskedSource) {
  const Statement s = testing::theorem(testing::kXEqX);
  const EvalTask t = type_inference_at(s, {1, 1, 1}, TypeVariant::kHard);
  const Statement back = reconstruct(t, *t.ground_truth);
  EXPECT_EQ(back.tokens(), s.tokens());
  EXPECT_EQ(unmasked_prompt(t),
            toks("(<theorem> (a (a (c <PREDICT> =) (v A x)) (v A x)))"));
}

TEST(TypecheckRate, PureAndMixed) {
  const EvalTask t1 = hypothesis_task();
  const EvalTask t2 = extract_equalities(sub_add()).at(1);
  const std::vector<EvalTask> tasks{t1, t2};
  auto rate = [&](const std::vector<TokenSeq>& b1, const std::vector<TokenSeq>& b2) {
    return typecheck_rate(tasks, std::vector<BeamRecord>{{t1.task_id, b1}, {t2.task_id, b2}});
  };
  EXPECT_EQ(rate({*t1.ground_truth}, {*t2.ground_truth}), 1.0);
  EXPECT_EQ(rate({toks("( (")}, {toks("garbage")}), 0.0);
  // Eight pairs counted by hand: t1 has 3 well-typed of 4 (hypothesis, its
  // mirror, T) and t2 has 2 of 4 (m, n).
  const std::vector<TokenSeq> b1{*t1.ground_truth,
                                 toks(testing::bin(kNumEq, "=", num("y"), num("x"))),
                                 toks("(c (bool) T)"), toks(num("x"))};
  const std::vector<TokenSeq> b2{toks(num("m")), toks("(v (bool) m)"),
                                 toks(num("n")), toks(")")};
  EXPECT_DOUBLE_EQ(rate(b1, b2), 5.0 / 8.0);
}

TEST(AlphaNormalize, Examples) {
  auto norm = [](const std::string& s) { return print(alpha_normalize(parse(s))); };
  EXPECT_EQ(norm("(l (v A x) (v A x))"), "(l (v A b0) (v A b0))");
  EXPECT_EQ(norm("(l (v A x) (l (v A y) (v A x)))"),
            norm("(l (v A u) (l (v A v) (v A u)))"));
  EXPECT_EQ(norm("(l (v A x) (v A y))"), "(l (v A b0) (v A y))");
  // A free b0 is not captured.
  EXPECT_EQ(norm("(l (v A x) (v A b0))"), "(l (v A b1) (v A b0))");
  // Same name, different type: distinct variables.
  EXPECT_EQ(norm("(l (v A x) (v B x))"), "(l (v A b0) (v B x))");
  const SExpr e = parse("(l (v A x) (l (v A x) (v A x)))");
  EXPECT_EQ(alpha_normalize(alpha_normalize(e)), alpha_normalize(e));
  EXPECT_EQ(print(alpha_normalize(e)), "(l (v A b0) (l (v A b1) (v A b1)))");
}

// Reads every key of a serialized index directly from the bytes.
std::vector<std::string> scan_index(const CorpusIndex& index) {
  std::ostringstream out;
  index.save(out);
  const std::string b = out.str();
  std::size_t pos = 16;
  auto le = [&](int n) {
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= std::uint64_t(static_cast<unsigned char>(b[pos++])) << (8 * i);
    return v;
  };
  std::vector<std::string> keys;
  for (int section = 0; section < 2; ++section) {
    const std::uint64_t count = le(8);
    for (std::uint64_t i = 0; i < count; ++i) {
      const std::uint64_t ntok = le(4);
      TokenSeq t;
      for (std::uint64_t k = 0; k < ntok; ++k) {
        const std::uint64_t len = le(4);
        t.push_back(b.substr(pos, len));
        pos += len;
      }
      keys.push_back(join_tokens(t));
    }
  }
  EXPECT_EQ(pos, b.size());
  return keys;
}

TEST(Novelty, Examples) {
  std::vector<CorpusRecord> corpus(1);
  corpus[0].statement = testing::theorem("(a (l (v (bool) p) (v (bool) p)) (c (bool) T))",
                                         Split::kTrain, "train0");
  const CorpusIndex index = CorpusIndex::build(corpus);
  EXPECT_EQ(index.statement_count(), 1u);

  // A task whose completion can hit the training statement.
  EvalTask whole;
  whole.kind = TaskKind::kEqualities;
  whole.task_id = "whole";
  whole.site_path = {2};
  whole.input = toks("(<theorem> (a (l (v (bool) q) (v (bool) q)) <PREDICT>))");
  whole.ground_truth = toks("(v (bool) r)");

  EXPECT_FALSE(novelty(whole, *whole.ground_truth, index));
  // Alpha-equal to the training body once spliced in.
  EXPECT_FALSE(novelty(whole, toks("(c (bool) T)"), index));
  // A subtree of a training statement.
  EXPECT_FALSE(novelty(whole, toks("(l (v (bool) z) (v (bool) z))"), index));

  const TokenSeq fresh = toks("(c (bool) F)");
  EXPECT_TRUE(novelty(whole, fresh, index));
  const std::string fresh_key = join_tokens(fresh);
  const std::string stmt_key =
      print(alpha_normalize(reconstruct(whole, fresh).body));
  for (const std::string& key : scan_index(index)) {
    EXPECT_NE(key, fresh_key);
    EXPECT_NE(key, stmt_key);
  }
}

TEST(Index, OnlyTrainingSplitAndRoundTrip) {
  const auto corpus = read_corpus_file(testing::corpus_path());
  const CorpusIndex index = CorpusIndex::build(corpus);
  std::size_t train = 0;
  for (const auto& r : corpus) train += r.statement->split == Split::kTrain;
  EXPECT_LE(index.statement_count(), train);
  for (const auto& r : corpus) {
    if (r.statement->split == Split::kTrain) {
      EXPECT_TRUE(index.contains_statement(r.statement->body));
    }
  }
  std::stringstream buf;
  index.save(buf);
  const CorpusIndex back = CorpusIndex::load(buf);
  EXPECT_EQ(back.statement_count(), index.statement_count());
  EXPECT_EQ(back.subtree_count(), index.subtree_count());
  std::ostringstream a, b;
  index.save(a);
  back.save(b);
  EXPECT_EQ(a.str(), b.str());

  const CorpusIndex coarse = CorpusIndex::build(corpus, NoveltyGranularity::kStatements);
  EXPECT_EQ(coarse.subtree_count(), 0u);
  std::stringstream bad("SKTIDX\0\0garbage");
  EXPECT_THROW(CorpusIndex::load(bad), std::exception);
}

TEST(Score, EmptyTaskList) {
  const auto reports = score({}, {});
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_FALSE(reports[0].task_kind);
  EXPECT_EQ(reports[0].n_tasks, 0u);
  EXPECT_FALSE(reports[0].exact_match_at_1);
  EXPECT_FALSE(reports[0].exact_match_at_width);
  EXPECT_FALSE(reports[0].parse_rate);
  EXPECT_FALSE(reports[0].typecheck_rate);
  EXPECT_FALSE(reports[0].novelty_rate);
}

TEST(Score, Alignment) {
  const EvalTask t = hypothesis_task();
  const std::vector<EvalTask> tasks{t};
  EXPECT_THROW(score(tasks, std::vector<BeamRecord>{{"other", {}}}), AlignmentError);
  EXPECT_THROW(score(tasks, std::vector<BeamRecord>{{t.task_id, {}}, {t.task_id, {}}}),
               AlignmentError);
  EXPECT_THROW(score(tasks, std::vector<BeamRecord>{}), AlignmentError);
}

TEST(Score, GoldenFixtures) {
  std::vector<EvalTask> tasks;
  std::vector<BeamRecord> beams;
  for (const auto& g : testing::load_golden()) {
    tasks.push_back(testing::golden_task(g));
    beams.push_back({tasks.back().task_id, {g.ground_truth}});
  }
  const auto reports = score(tasks, beams);
  ASSERT_EQ(reports.size(), 4u);
  for (const auto& r : reports) {
    EXPECT_EQ(r.n_tasks, 5u);
    EXPECT_EQ(r.exact_match_at_1, 1.0);
    EXPECT_EQ(r.parse_rate, 1.0);
    EXPECT_EQ(r.typecheck_rate, 1.0) << to_string(*r.task_kind);
  }
}

TEST(Score, DuplicatedBeamsHandComputed) {
  // Task 1: beams {truth, garbage}; task 2: beams {wrong well-typed}.
  const EvalTask t1 = hypothesis_task();
  const EvalTask t2 = extract_equalities(sub_add()).at(1);
  const std::vector<EvalTask> tasks{t1, t2};
  const std::vector<BeamRecord> once{{t1.task_id, {*t1.ground_truth, toks("(")}},
                                     {t2.task_id, {toks(num("n"))}}};
  std::vector<BeamRecord> twice = once;
  for (auto& b : twice) {
    const auto copy = b.beams;
    b.beams.insert(b.beams.end(), copy.begin(), copy.end());
  }
  // Different kinds land in different reports; combine by hand.
  auto totals = [&](const std::vector<BeamRecord>& beams) {
    std::size_t exact = 0, parsed = 0, typed = 0, pairs = 0;
    for (const auto& r : score(tasks, beams)) {
      for (const auto& v : r.rows) {
        ++pairs;
        parsed += v.parsed;
        typed += v.typechecks;
      }
      exact += static_cast<std::size_t>(*r.exact_match_at_width * r.n_tasks + 0.5);
    }
    return std::vector<std::size_t>{exact, parsed, typed, pairs};
  };
  // Once: exact 1 of 2 tasks; pairs 3, parsed 2, typed 2.
  EXPECT_EQ(totals(once), (std::vector<std::size_t>{1, 2, 2, 3}));
  // Twice: exact unchanged; pair counts double, so the fractions agree.
  EXPECT_EQ(totals(twice), (std::vector<std::size_t>{1, 4, 4, 6}));
}

TEST(Score, RatesRecomputableFromRows) {
  const auto corpus = read_corpus_file(testing::corpus_path());
  const CorpusIndex index = CorpusIndex::build(corpus);
  std::vector<EvalTask> tasks;
  for (const auto& r : corpus) {
    for (auto& t : extract_assumptions(*r.statement)) tasks.push_back(t);
    for (auto& t : extract_equalities(*r.statement)) tasks.push_back(t);
  }
  std::vector<BeamRecord> beams;
  for (const auto& t : tasks) {
    beams.push_back({t.task_id, {framed(*t.ground_truth), toks("(c (bool) T)"), toks("((")}});
  }
  for (const auto& r : score(tasks, beams, &index, 4)) {
    std::size_t parsed = 0, typed = 0, novel = 0;
    for (const auto& v : r.rows) {
      parsed += v.parsed;
      typed += v.typechecks;
      novel += v.novel.value_or(false);
      if (v.novel.value_or(false)) EXPECT_NE(v.beam, 0u);
    }
    const double n = static_cast<double>(r.rows.size());
    EXPECT_EQ(r.n_predictions, r.rows.size());
    EXPECT_DOUBLE_EQ(*r.parse_rate, parsed / n);
    EXPECT_DOUBLE_EQ(*r.typecheck_rate, typed / n);
    EXPECT_DOUBLE_EQ(*r.novelty_rate, novel / n);
    EXPECT_LE(*r.exact_match_at_1, *r.exact_match_at_width);
  }
}

}  // namespace
}  // namespace skiptree
