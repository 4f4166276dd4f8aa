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

#include "skiptree/formats.h"

#include <cstdio>
#include <stdexcept>
#include <unistd.h>

namespace skiptree {

namespace {

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json optional_bool(const std::optional<bool>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

json to_json(const MaskedExample& ex) {
  return {{"format_version", kFormatVersion},
          {"source_id", ex.source_id},
          {"sample_index", ex.sample_index},
          {"input", ex.input},
          {"target", ex.target}};
}

MaskedExample example_from_json(const json& j) {
  MaskedExample ex;
  ex.source_id = j.at("source_id").get<std::string>();
  ex.sample_index = j.at("sample_index").get<std::size_t>();
  ex.input = j.at("input").get<TokenSeq>();
  ex.target = j.at("target").get<TokenSeq>();
  return ex;
}

std::string to_tsv(const MaskedExample& ex) {
  return join_tokens(ex.input) + "\t" + join_tokens(ex.target);
}

json to_json(const DatasetStats& s, std::string_view dataset) {
  return {{"format_version", kFormatVersion},
          {"dataset", dataset.empty() ? json(nullptr) : json(dataset)},
          {"examples", s.example_count},
          {"input_tokens", s.input_token_total},
          {"output_tokens", s.output_token_total},
          {"avg_input_length", s.mean_input_len()},
          {"avg_output_length", s.mean_output_len()},
          {"statements_used", s.statements_used},
          {"records_skipped", s.records_skipped},
          {"truncated_inputs", s.truncated_inputs},
          {"dropped_long_targets", s.dropped_long_targets},
          {"dropped_truncated_predict", s.dropped_truncated_predict}};
}

DatasetStats stats_from_examples(const std::vector<json>& records) {
  DatasetStats s;
  for (const json& j : records) s.add(example_from_json(j));
  return s;
}

json to_json(const EvalTask& t) {
  json j{{"format_version", kFormatVersion},
         {"task_id", t.task_id},
         {"kind", to_string(t.kind)},
         {"source_id", t.source_id},
         {"site_path", t.site_path},
         {"input", t.input},
         {"ground_truth", t.ground_truth ? json(*t.ground_truth) : json(nullptr)}};
  if (t.source) j["source"] = *t.source;
  return j;
}

EvalTask task_from_json(const json& j) {
  EvalTask t;
  const auto kind = parse_task_kind(j.at("kind").get<std::string>());
  if (!kind) throw std::invalid_argument("unknown task kind");
  t.kind = *kind;
  t.source_id = j.value("source_id", "");
  t.task_id = j.value("task_id", t.source_id);
  t.site_path = j.at("site_path").get<Path>();
  t.input = j.at("input").get<TokenSeq>();
  if (j.contains("ground_truth") && !j["ground_truth"].is_null()) {
    t.ground_truth = j["ground_truth"].get<TokenSeq>();
  }
  if (j.contains("source") && !j["source"].is_null()) {
    t.source = j["source"].get<TokenSeq>();
  }
  return t;
}

BeamRecord beam_from_json(const json& j) {
  BeamRecord r;
  r.task_id = j.at("task_id").get<std::string>();
  r.beams = j.at("beams").get<std::vector<TokenSeq>>();
  return r;
}

json to_json(const BeamRecord& rec) {
  return {{"format_version", kFormatVersion},
          {"task_id", rec.task_id},
          {"beams", rec.beams}};
}

json to_json(const ScoreReport& r) {
  return {{"task_kind",
           r.task_kind ? json(to_string(*r.task_kind)) : json(nullptr)},
          {"n_tasks", r.n_tasks},
          {"n_predictions", r.n_predictions},
          {"width", r.width},
          {"exact_match_at_1", optional_number(r.exact_match_at_1)},
          {"exact_match_at_width", optional_number(r.exact_match_at_width)},
          {"parse_rate", optional_number(r.parse_rate)},
          {"typecheck_rate", optional_number(r.typecheck_rate)},
          {"novelty_rate", optional_number(r.novelty_rate)},
          {"provable", nullptr}};
}

json to_json(const Verdict& v) {
  json j{{"format_version", kFormatVersion},
         {"task_id", v.task_id},
         {"beam", v.beam},
         {"exact", optional_bool(v.exact)},
         {"parsed", v.parsed},
         {"typechecks", v.typechecks},
         {"novel", optional_bool(v.novel)}};
  if (!v.error.empty()) j["error"] = v.error;
  return j;
}

std::vector<json> read_json_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::vector<json> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::exception& e) {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": " +
                                  e.what());
    }
  }
  return out;
}

AtomicFile::AtomicFile(std::string path)
    : path_(std::move(path)),
      temp_(path_ + ".tmp." + std::to_string(::getpid())),
      out_(temp_, std::ios::binary | std::ios::trunc) {
  if (!out_) throw std::invalid_argument("cannot write " + path_);
}

AtomicFile::~AtomicFile() {
  if (!committed_) {
    out_.close();
    std::remove(temp_.c_str());
  }
}

void AtomicFile::commit() {
  out_.flush();
  if (!out_) throw std::runtime_error("write failed for " + path_);
  out_.close();
  if (std::rename(temp_.c_str(), path_.c_str()) != 0) {
    throw std::runtime_error("cannot rename onto " + path_);
  }
  committed_ = true;
}

}  // namespace skiptree
