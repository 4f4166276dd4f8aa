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

// Loader for tests/data/golden_tasks.jsonl: twenty printed prompts with
// their ground truths, five per task kind.

#ifndef SKIPTREE_TESTS_GOLDEN_H_
#define SKIPTREE_TESTS_GOLDEN_H_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracles.h"
#include "skiptree/evaltasks.h"
#include "skiptree/scorer.h"
#include "skiptree/sexpr.h"
#include "skiptree/statement.h"
#include "skiptree/typecheck.h"
#include "test_util.h"

namespace skiptree::testing {

struct GoldenCase {
  TaskKind kind;
  TokenSeq prompt;        // full statement with one <PREDICT>
  TokenSeq ground_truth;  // framed by <START> ... <END>
  // The prompt with the ground truth spliced back in. Hard prompts keep
  // their <MASK> annotations.
  Statement source;
  Path site;
};

inline std::vector<GoldenCase> load_golden() {
  std::vector<GoldenCase> out;
  int n = 0;
  for (const std::string& line :
       oracle::read_lines(source_path("tests/data/golden_tasks.jsonl"))) {
    const nlohmann::json j = nlohmann::json::parse(line);
    GoldenCase g;
    g.kind = *parse_task_kind(j["kind"].get<std::string>());
    g.prompt = to_strings(tokenize(j["prompt"].get<std::string>()));
    g.ground_truth = to_strings(tokenize(j["ground_truth"].get<std::string>()));
    const TokenSeq source = splice(g.prompt, strip_frame(g.ground_truth));
    g.source = statement_from_sexpr(parse_flat(source), Split::kValid,
                                    "golden" + std::to_string(n++));
    g.site = *find_predict(parse_flat(g.prompt)[1]);
    out.push_back(std::move(g));
  }
  return out;
}

// The task a golden case describes, ready for scoring. For hard prompts the
// printed statement is all that is known, so the source is completed with
// the most general types for its masked annotations.
inline EvalTask golden_task(const GoldenCase& g) {
  EvalTask t;
  t.kind = g.kind;
  t.source_id = g.source.source_id;
  t.task_id = g.source.source_id;
  t.site_path = g.site;
  t.input = g.prompt;
  t.ground_truth = strip_frame(g.ground_truth);
  if (g.kind == TaskKind::kHardTypeInference) {
    Statement full = g.source;
    full.body = *fill_masks(g.source.body);
    t.source = full.tokens();
  }
  return t;
}

}  // namespace skiptree::testing

#endif  // SKIPTREE_TESTS_GOLDEN_H_
