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

// Tagged top-level statements and the corpus files that carry them.

#ifndef SKIPTREE_STATEMENT_H_
#define SKIPTREE_STATEMENT_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skiptree/sexpr.h"

namespace skiptree {

enum class StatementTag { kTheorem, kGoal };
enum class Split { kTrain, kValid, kTest };

std::string_view to_string(StatementTag tag);
std::string_view to_string(Split split);
std::optional<StatementTag> parse_tag(std::string_view s);
std::optional<Split> parse_split(std::string_view s);

struct Statement {
  StatementTag tag = StatementTag::kTheorem;
  SExpr body = SExpr::atom("?");
  Split split = Split::kTrain;
  std::string source_id;

  // (<theorem> BODY) or (<goal> BODY)
  SExpr to_sexpr() const;
  TokenSeq tokens() const { return flatten(to_sexpr()); }
  std::string serialize() const { return print(to_sexpr()); }
};

// Splits `(<theorem> BODY)` into tag and body. Throws ParseError if the
// shape is wrong.
Statement statement_from_sexpr(const SExpr& e, Split split,
                               std::string source_id);

enum class HolePolicy {
  kReject,  // corpus files: <PREDICT>/<MASK> are errors
  kAllow,   // prompt files
};

struct CorpusRecord {
  std::size_t index = 0;  // 0-based position among non-blank lines
  std::string source_id;
  std::optional<Statement> statement;
  std::string error;  // set iff statement is empty
};

struct CorpusOptions {
  HolePolicy holes = HolePolicy::kReject;
  // Split assigned to plain-text lines, which carry none of their own.
  Split plain_text_split = Split::kTrain;
};

// Reads JSON Lines records {"id","split","tag","sexpr"}; lines that do not
// start with '{' are read as plain `(<theorem> ...)` S-expressions.
// Malformed records are returned with `error` set rather than thrown.
std::vector<CorpusRecord> read_corpus(std::istream& in,
                                      const CorpusOptions& options = {});
std::vector<CorpusRecord> read_corpus_file(const std::string& path,
                                           const CorpusOptions& options = {});

std::string corpus_record_json(const Statement& s);

}  // namespace skiptree

#endif  // SKIPTREE_STATEMENT_H_
