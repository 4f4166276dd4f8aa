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

#include "skiptree/statement.h"

#include <fstream>
#include <istream>
#include <stdexcept>

#include "json.hpp"

namespace skiptree {

using json = nlohmann::json;

std::string_view to_string(StatementTag tag) {
  return tag == StatementTag::kTheorem ? "theorem" : "goal";
}

std::string_view to_string(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kValid: return "valid";
    case Split::kTest: return "test";
  }
  return "train";
}

std::optional<StatementTag> parse_tag(std::string_view s) {
  if (s == "theorem" || s == kTheoremTag) return StatementTag::kTheorem;
  if (s == "goal" || s == kGoalTag) return StatementTag::kGoal;
  return std::nullopt;
}

std::optional<Split> parse_split(std::string_view s) {
  if (s == "train") return Split::kTrain;
  if (s == "valid") return Split::kValid;
  if (s == "test") return Split::kTest;
  return std::nullopt;
}

SExpr Statement::to_sexpr() const {
  return SExpr::list({SExpr::atom(std::string(
                          tag == StatementTag::kTheorem ? kTheoremTag
                                                        : kGoalTag)),
                      body});
}

Statement statement_from_sexpr(const SExpr& e, Split split,
                               std::string source_id) {
  if (!e.is_list() || e.size() != 2 || !e[0].is_atom() ||
      (e[0].text() != kTheoremTag && e[0].text() != kGoalTag)) {
    throw ParseError(ParseErrorKind::kTrailingTokens,
                     "statement must have the form (<theorem> BODY) or "
                     "(<goal> BODY)");
  }
  Statement s;
  s.tag = e[0].text() == kTheoremTag ? StatementTag::kTheorem
                                     : StatementTag::kGoal;
  s.body = e[1];
  s.split = split;
  s.source_id = std::move(source_id);
  return s;
}

namespace {

void check_holes(const SExpr& body) {
  for (const Subexpression& sub : subexpressions(body)) {
    if (sub.node.is_atom(kPredictToken) || sub.node.is_atom(kMaskToken)) {
      throw std::invalid_argument("corpus statement contains " +
                                  sub.node.text());
    }
  }
}

Statement read_json_record(const std::string& line, std::size_t index,
                           std::string& id_out) {
  const json j = json::parse(line);
  if (!j.is_object()) throw std::invalid_argument("record is not an object");
  id_out = j.contains("id") && j["id"].is_string()
               ? j["id"].get<std::string>()
               : "record" + std::to_string(index);
  for (const char* field : {"id", "split", "tag", "sexpr"}) {
    if (!j.contains(field) || !j[field].is_string()) {
      throw std::invalid_argument(std::string("missing string field '") +
                                  field + "'");
    }
  }
  const auto split = parse_split(j["split"].get<std::string>());
  if (!split) throw std::invalid_argument("unknown split");
  const auto tag = parse_tag(j["tag"].get<std::string>());
  if (!tag) throw std::invalid_argument("unknown tag");
  const SExpr e = parse(j["sexpr"].get<std::string>());
  Statement s;
  // Both the bare body and the tagged form are accepted in "sexpr".
  if (e.is_list() && e.size() == 2 && e[0].is_atom() &&
      parse_tag(e[0].text()).has_value() && e[0].text().front() == '<') {
    s = statement_from_sexpr(e, *split, id_out);
    if (s.tag != *tag) throw std::invalid_argument("tag field disagrees with sexpr");
  } else {
    s.tag = *tag;
    s.body = e;
    s.split = *split;
    s.source_id = id_out;
  }
  return s;
}

}  // namespace

std::vector<CorpusRecord> read_corpus(std::istream& in,
                                      const CorpusOptions& options) {
  std::vector<CorpusRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    CorpusRecord rec;
    rec.index = records.size();
    try {
      if (line[first] == '{') {
        rec.statement = read_json_record(line, rec.index, rec.source_id);
      } else {
        rec.source_id = "line" + std::to_string(line_no);
        rec.statement = statement_from_sexpr(
            parse(line), options.plain_text_split, rec.source_id);
      }
      if (options.holes == HolePolicy::kReject) check_holes(rec.statement->body);
    } catch (const std::exception& e) {
      rec.statement.reset();
      rec.error = e.what();
      if (rec.source_id.empty()) rec.source_id = "record" + std::to_string(rec.index);
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<CorpusRecord> read_corpus_file(const std::string& path,
                                           const CorpusOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file " + path);
  return read_corpus(in, options);
}

std::string corpus_record_json(const Statement& s) {
  json j;
  j["id"] = s.source_id;
  j["split"] = to_string(s.split);
  j["tag"] = to_string(s.tag);
  j["sexpr"] = s.serialize();
  return j.dump();
}

}  // namespace skiptree
