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

#include "skiptree/sexpr.h"

#include <gtest/gtest.h>

#include "json.hpp"

#include "oracles.h"
#include "test_util.h"

namespace skiptree {
namespace {

using testing::kXEqX;

TEST(Tokenize, VarLiteral) {
  const std::vector<Token> t = tokenize("(v bool x)");
  ASSERT_EQ(t.size(), 5u);
  EXPECT_EQ(t[0].kind, TokenKind::kLParen);
  EXPECT_EQ(t[1], (Token{TokenKind::kAtom, "v"}));
  EXPECT_EQ(t[2], (Token{TokenKind::kAtom, "bool"}));
  EXPECT_EQ(t[3], (Token{TokenKind::kAtom, "x"}));
  EXPECT_EQ(t[4].kind, TokenKind::kRParen);
}

TEST(Tokenize, Empty) { EXPECT_TRUE(tokenize("").empty()); }

TEST(Tokenize, SpecialMarkersAreAtoms) {
  const auto t = tokenize("(<theorem> <PREDICT>)");
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t[1], (Token{TokenKind::kAtom, "<theorem>"}));
  EXPECT_EQ(t[2], (Token{TokenKind::kAtom, "<PREDICT>"}));
}

TEST(Tokenize, XEqXMatchesCharacterScan) {
  EXPECT_EQ(tokenize(kXEqX).size(), oracle::count_tokens(kXEqX));
  EXPECT_EQ(oracle::count_tokens(kXEqX), 35u);
}

TEST(Parse, VarLiteral) {
  const SExpr e = parse("(v bool x)");
  ASSERT_TRUE(e.is_list());
  ASSERT_EQ(e.size(), 3u);
  EXPECT_TRUE(e[0].is_atom("v"));
  EXPECT_TRUE(e[1].is_atom("bool"));
  EXPECT_TRUE(e[2].is_atom("x"));
}

TEST(Parse, Errors) {
  auto kind_of = [](const std::string& s) {
    try {
      parse(s);
    } catch (const ParseError& e) {
      return e.kind();
    }
    ADD_FAILURE() << "no error for " << s;
    return ParseErrorKind::kInvalidPath;
  };
  EXPECT_EQ(kind_of("(a (v bool x)"), ParseErrorKind::kUnbalancedParens);
  EXPECT_EQ(kind_of(")"), ParseErrorKind::kUnbalancedParens);
  EXPECT_EQ(kind_of("x y"), ParseErrorKind::kTrailingTokens);
  EXPECT_EQ(kind_of("   "), ParseErrorKind::kEmptyInput);
  EXPECT_EQ(kind_of("(a ())"), ParseErrorKind::kEmptyList);
}

TEST(Parse, XEqXNodeCountsMatchOracle) {
  const SExpr e = parse(kXEqX);
  const oracle::Counts c = oracle::count_nodes(oracle::parse(std::string(kXEqX)));
  EXPECT_EQ(c.lists, 10u);
  EXPECT_EQ(c.atoms, 15u);
  std::size_t lists = 0, atoms = 0;
  for (const Subexpression& s : subexpressions(e)) (s.node.is_atom() ? atoms : lists)++;
  EXPECT_EQ(lists, c.lists);
  EXPECT_EQ(atoms, c.atoms);
  EXPECT_EQ(e.node_count(), 25u);
  EXPECT_EQ(e.token_count(), 35u);
}

TEST(Parse, DeepNestingDoesNotRecurse) {
  std::string s;
  for (int i = 0; i < 200000; ++i) s += "(f ";
  s += "x";
  for (int i = 0; i < 200000; ++i) s += ")";
  EXPECT_EQ(parse(s).token_count(), 200000u * 3 + 1);
}

TEST(Print, Normalizes) {
  EXPECT_EQ(print(SExpr::atom("x")), "x");
  EXPECT_EQ(print(parse("( v  bool   x )")), "(v bool x)");
}

TEST(Print, RoundTripsGoldenPrompts) {
  for (const std::string& line :
       oracle::read_lines(testing::source_path("tests/data/golden_tasks.jsonl"))) {
    const std::string prompt = nlohmann::json::parse(line)["prompt"];
    const TokenSeq before = to_strings(tokenize(prompt));
    EXPECT_EQ(flatten(parse(prompt)), before);
    EXPECT_EQ(to_strings(tokenize(print(parse(prompt)))), before);
  }
}

TEST(Subexpressions, Atom) {
  const auto subs = subexpressions(SExpr::atom("x"));
  ASSERT_EQ(subs.size(), 1u);
  EXPECT_TRUE(subs[0].path.empty());
  EXPECT_TRUE(subs[0].is_root);
}

TEST(Subexpressions, XEqXPreorderPathsMatchOracle) {
  const auto subs = subexpressions(parse(kXEqX));
  const auto paths = oracle::all_paths(oracle::parse(std::string(kXEqX)));
  ASSERT_EQ(subs.size(), paths.size());
  std::size_t proper = 0;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    EXPECT_EQ(subs[i].path, paths[i]);
    proper += subs[i].is_root ? 0 : 1;
  }
  EXPECT_EQ(subs.size(), 25u);
  EXPECT_EQ(proper, 24u);
}

TEST(Subexpressions, MostNodesAreAtomsOnCorpus) {
  std::size_t atoms = 0, total = 0;
  for (const CorpusRecord& r : read_corpus_file(testing::corpus_path())) {
    ASSERT_TRUE(r.statement) << r.error;
    for (const Subexpression& s : subexpressions(r.statement->body)) {
      ++total;
      atoms += s.node.is_atom() ? 1 : 0;
    }
  }
  EXPECT_GT(2 * atoms, total);
}

TEST(Paths, ReplaceRoundTrip) {
  EXPECT_EQ(replace_at_path(SExpr::atom("x"), {}, SExpr::atom("y")),
            SExpr::atom("y"));
  const SExpr e = parse(kXEqX);
  const Path site{1, 1, 1};
  const SExpr prompt = replace_at_path(e, site, SExpr::atom("<PREDICT>"));
  EXPECT_EQ(print(prompt), "(a (a (c <PREDICT> =) (v A x)) (v A x))");
  EXPECT_EQ(replace_at_path(prompt, site, at_path(e, site)), e);
}

TEST(Paths, InvalidPath) {
  EXPECT_THROW(at_path(parse("(a b)"), {5}), ParseError);
  EXPECT_THROW(at_path(parse("(a b)"), {0, 0}), ParseError);
}

TEST(Paths, Overlap) {
  EXPECT_TRUE(overlaps({1}, {1, 2}));
  EXPECT_TRUE(overlaps({1, 2}, {1}));
  EXPECT_TRUE(overlaps({}, {3}));
  EXPECT_FALSE(overlaps({1, 2}, {1, 3}));
}

TEST(Paths, TokenSpansMatchFlatten) {
  const SExpr e = parse(kXEqX);
  const TokenSeq all = flatten(e);
  const auto spans = token_spans(e);
  const auto subs = subexpressions(e);
  ASSERT_EQ(spans.size(), subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const TokenSeq sub(all.begin() + spans[i].first, all.begin() + spans[i].second);
    EXPECT_EQ(sub, flatten(subs[i].node));
  }
}

}  // namespace
}  // namespace skiptree
