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

// On-disk record formats. Every JSON object written carries
// "format_version": 1.

#ifndef SKIPTREE_FORMATS_H_
#define SKIPTREE_FORMATS_H_

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "skiptree/evaltasks.h"
#include "skiptree/scorer.h"
#include "skiptree/skipgen.h"

namespace skiptree {

using json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

// {"source_id", "sample_index", "input": [tokens], "target": [tokens]}
json to_json(const MaskedExample& ex);
MaskedExample example_from_json(const json& j);
// input and target as space-joined tokens, tab separated.
std::string to_tsv(const MaskedExample& ex);

// `dataset` names the generator mode, or is empty when unknown.
json to_json(const DatasetStats& stats, std::string_view dataset);
// Recomputes the totals of a dataset file.
DatasetStats stats_from_examples(const std::vector<json>& records);

// {"task_id", "kind", "source_id", "site_path", "input", "ground_truth",
//  "source"?}
json to_json(const EvalTask& task);
EvalTask task_from_json(const json& j);

// {"task_id", "beams": [[tokens], ...]}
BeamRecord beam_from_json(const json& j);
json to_json(const BeamRecord& rec);

json to_json(const ScoreReport& report);
json to_json(const Verdict& v);

// Reads one JSON value per non-blank line; throws std::invalid_argument
// naming the line on malformed input.
std::vector<json> read_json_lines(const std::string& path);

// Writes to a temporary sibling and renames over `path` on commit(). An
// uncommitted file is removed on destruction.
class AtomicFile {
 public:
  explicit AtomicFile(std::string path);
  AtomicFile(const AtomicFile&) = delete;
  AtomicFile& operator=(const AtomicFile&) = delete;
  ~AtomicFile();

  std::ofstream& stream() { return out_; }
  void commit();

 private:
  std::string path_;
  std::string temp_;
  std::ofstream out_;
  bool committed_ = false;
};

}  // namespace skiptree

#endif  // SKIPTREE_FORMATS_H_
