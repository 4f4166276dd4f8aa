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

#include "skiptree/typecheck.h"

#include <gtest/gtest.h>

#include "skiptree/hol.h"
#include "test_util.h"

namespace skiptree {
namespace {

using testing::kXEqX;

HType ty(const std::string& s) { return parse_type(parse(s)); }

TEST(HType, ParsesAndPrints) {
  EXPECT_EQ(print(ty("(fun (A) (fun (A) (bool)))")), "(fun (A) (fun (A) (bool)))");
  EXPECT_TRUE(ty("A").is_var());
  EXPECT_TRUE(ty("(bool)").is_app());
  EXPECT_EQ(ty("A"), ty("(A)"));
  EXPECT_NE(ty("A"), ty("B"));
  EXPECT_THROW(ty("(fun (A))"), TypeError);
  EXPECT_THROW(ty("<PREDICT>"), TypeError);
}

TEST(Term, ShapesAndErrors) {
  EXPECT_NO_THROW(parse_term(parse(kXEqX)));
  EXPECT_NO_THROW(parse_term(parse("(l (v A x) (v A x))")));
  EXPECT_THROW(parse_term(parse("(q A x)")), TypeError);
  EXPECT_THROW(parse_term(parse("(l (c A x) (v A x))")), TypeError);
  EXPECT_THROW(parse_term(parse("(a (v A x))")), TypeError);
}

TEST(InferType, Examples) {
  EXPECT_EQ(infer_type(parse_term(parse("(v bool x)"))), HType::boolean());
  EXPECT_EQ(infer_type(parse_term(parse(kXEqX))), HType::boolean());
  EXPECT_EQ(infer_type(parse_term(parse("(l (v A x) (v (bool) y))"))),
            ty("(fun A (bool))"));
  try {
    infer_type(parse_term(parse("(a (v bool x) (v bool y))")));
    FAIL();
  } catch (const TypeError& e) {
    EXPECT_EQ(e.kind(), TypeErrorKind::kNotAFunction);
  }
  try {
    infer_type(parse_term(parse("(a (v (fun (num) (bool)) f) (v (bool) y))")));
    FAIL();
  } catch (const TypeError& e) {
    EXPECT_EQ(e.kind(), TypeErrorKind::kArgMismatch);
  }
}

TEST(CheckStatement, Examples) {
  EXPECT_FALSE(check_statement(testing::theorem(kXEqX)));
  const auto err = check_statement(testing::theorem("(v num n)"));
  ASSERT_TRUE(err);
  EXPECT_EQ(err->kind(), TypeErrorKind::kNotBoolean);
}

TEST(CheckStatement, ArityIsPinnedPerFile) {
  ArityTable table;
  EXPECT_FALSE(check_body(parse("(a (v (fun (list (num)) (bool)) Q) (v (list (num)) m))"), &table));
  EXPECT_FALSE(check_body(parse("(a (v (fun (list (num)) (bool)) P) (v (list (num)) l))"), &table));
  const auto err = check_body(parse("(a (v (fun (list (num) (num)) (bool)) P) (v (list (num) (num)) l))"), &table);
  ASSERT_TRUE(err);
  EXPECT_EQ(err->kind(), TypeErrorKind::kArityViolation);
  EXPECT_EQ(table.arity("list"), 1u);
}

TEST(CheckStatement, BundledCorpus) {
  ArityTable table;
  for (const CorpusRecord& r : read_corpus_file(testing::corpus_path())) {
    ASSERT_TRUE(r.statement);
    const auto err = check_statement(*r.statement, &table);
    EXPECT_FALSE(err) << r.source_id << ": " << (err ? err->what() : "");
  }
}

TEST(Unify, Examples) {
  const Subst s = unify(HType::hole(0), HType::boolean());
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.at(0), HType::boolean());

  auto kind_of = [](const HType& a, const HType& b) {
    try {
      unify(a, b);
    } catch (const UnifyError& e) {
      return e.kind();
    }
    ADD_FAILURE();
    return UnifyErrorKind::kConstructorClash;
  };
  EXPECT_EQ(kind_of(ty("(fun A (bool))"), ty("(fun B (bool))")),
            UnifyErrorKind::kRigidClash);
  EXPECT_EQ(kind_of(HType::hole(0), HType::fun(HType::hole(0), HType::boolean())),
            UnifyErrorKind::kOccursCheck);
  EXPECT_EQ(kind_of(ty("(num)"), ty("(bool)")), UnifyErrorKind::kConstructorClash);
  EXPECT_EQ(kind_of(ty("(list (num))"), ty("(list (num) (num))")),
            UnifyErrorKind::kArityClash);
}

TEST(Unify, IsIdempotent) {
  const HType a = HType::fun(HType::hole(0), HType::hole(1));
  const HType b = HType::fun(HType::hole(1), ty("(num)"));
  const Subst s = unify(a, b);
  EXPECT_EQ(skiptree::apply(s, a), skiptree::apply(s, b));
  EXPECT_EQ(skiptree::apply(s, skiptree::apply(s, a)), skiptree::apply(s, a));
  EXPECT_FALSE(skiptree::apply(s, a).has_holes());
}

TEST(SolveHole, EasyPromptIsUnique) {
  const auto sol = solve_hole(parse("(a (a (c <PREDICT> =) (v A x)) (v A x))"));
  ASSERT_TRUE(std::holds_alternative<Unique>(sol));
  EXPECT_EQ(std::get<Unique>(sol).type, ty("(fun (A) (fun (A) (bool)))"));
}

TEST(SolveHole, HardPromptIsAmbiguous) {
  const auto sol =
      solve_hole(parse("(a (a (c <PREDICT> =) (v <MASK> x)) (v <MASK> x))"));
  ASSERT_TRUE(std::holds_alternative<Ambiguous>(sol));
  EXPECT_GE(std::get<Ambiguous>(sol).free_holes, 1u);
  EXPECT_THROW(solve_hole(parse("(a (a (c <PREDICT> =) (v <MASK> x)) (v <MASK> x))"),
                          MaskPolicy::kReject),
               PromptError);
}

TEST(SolveHole, ForcedByBooleanBody) {
  const auto sol = solve_hole(parse("(v <PREDICT> p)"));
  ASSERT_TRUE(std::holds_alternative<Unique>(sol));
  EXPECT_EQ(std::get<Unique>(sol).type, HType::boolean());
}

TEST(SolveHole, IllTypedAndMalformed) {
  const auto sol = solve_hole(parse("(a (v (num) f) (v <PREDICT> x))"));
  EXPECT_TRUE(std::holds_alternative<IllTyped>(sol));
  EXPECT_THROW(solve_hole(parse("(v (bool) p)")), PromptError);
  EXPECT_THROW(solve_hole(parse("(a (v <PREDICT> f) (v <PREDICT> x))")), PromptError);
  EXPECT_THROW(solve_hole(parse("(v (bool) <PREDICT>)")), PromptError);
}

}  // namespace
}  // namespace skiptree
