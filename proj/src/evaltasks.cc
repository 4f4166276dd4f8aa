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

#include "skiptree/evaltasks.h"

#include <algorithm>
#include <numeric>

#include "skiptree/hol.h"

namespace skiptree {

std::string_view to_string(TaskKind kind) {
  switch (kind) {
    case TaskKind::kTypeInference: return "type";
    case TaskKind::kHardTypeInference: return "type-hard";
    case TaskKind::kAssumptions: return "assumptions";
    case TaskKind::kEqualities: return "equalities";
    case TaskKind::kFreeForm: return "freeform";
  }
  return "freeform";
}

std::optional<TaskKind> parse_task_kind(std::string_view s) {
  for (TaskKind k : {TaskKind::kTypeInference, TaskKind::kHardTypeInference,
                     TaskKind::kAssumptions, TaskKind::kEqualities,
                     TaskKind::kFreeForm}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

namespace {

std::string path_key(const Path& p) {
  std::string out;
  for (std::size_t i : p) {
    if (!out.empty()) out += '.';
    out += std::to_string(i);
  }
  return out.empty() ? "root" : out;
}

std::string task_id(const Statement& s, TaskKind kind, const Path& site) {
  return s.source_id + "/" + std::string(to_string(kind)) + "/" + path_key(site);
}

void collect_type_sites(const SExpr& e, Path& path, std::vector<Path>& out) {
  if (is_annotated_leaf(e)) {
    path.push_back(1);
    out.push_back(path);
    path.pop_back();
    return;
  }
  for (std::size_t i = 0; i < e.size(); ++i) {
    path.push_back(i);
    collect_type_sites(e[i], path, out);
    path.pop_back();
  }
}

EvalTask make_task(const Statement& s, TaskKind kind, const Path& site,
                   const SExpr& masked_body) {
  Statement masked = s;
  masked.body = masked_body;
  EvalTask t;
  t.kind = kind;
  t.task_id = task_id(s, kind, site);
  t.source_id = s.source_id;
  t.site_path = site;
  t.input = masked.tokens();
  t.ground_truth = flatten(at_path(s.body, site));
  return t;
}

SExpr predict_atom() { return SExpr::atom(std::string(kPredictToken)); }

// Name of the constant `c` if e is (c T name).
const std::string* constant_name(const SExpr& e) {
  if (is_annotated_leaf(e) && e[0].is_atom("c") && e[2].is_atom()) {
    return &e[2].text();
  }
  return nullptr;
}

// Operator name of (a (a (c T op) L) R).
const std::string* binary_operator(const SExpr& e) {
  if (e.is_list() && e.size() == 3 && e[0].is_atom("a") && e[1].is_list() &&
      e[1].size() == 3 && e[1][0].is_atom("a")) {
    return constant_name(e[1][1]);
  }
  return nullptr;
}

// (a (c T !) (l (v T x) B)) and likewise for ?.
bool is_quantifier(const SExpr& e) {
  if (!(e.is_list() && e.size() == 3 && e[0].is_atom("a"))) return false;
  const std::string* name = constant_name(e[1]);
  return name != nullptr && (*name == "!" || *name == "?") && e[2].is_list() &&
         e[2].size() == 3 && e[2][0].is_atom("l");
}

struct TopLevelSites {
  std::vector<Path> implications;
  std::vector<Path> equalities;
};

void walk_top_level(const SExpr& e, Path& path, TopLevelSites& out) {
  if (const std::string* op = binary_operator(e)) {
    if (*op == "==>") {
      out.implications.push_back(path);
      path.push_back(2);
      walk_top_level(e[2], path, out);
      path.pop_back();
      return;
    }
    if (*op == "/\\" || *op == "\\/") {
      path.insert(path.end(), {1, 2});
      walk_top_level(e[1][2], path, out);
      path.resize(path.size() - 2);
      path.push_back(2);
      walk_top_level(e[2], path, out);
      path.pop_back();
      return;
    }
    if (*op == "=") {
      out.equalities.push_back(path);
      return;
    }
  }
  if (is_quantifier(e)) {
    path.insert(path.end(), {2, 2});
    walk_top_level(e[2][2], path, out);
    path.resize(path.size() - 2);
  }
}

TopLevelSites top_level_sites(const SExpr& body) {
  TopLevelSites out;
  Path path;
  walk_top_level(body, path, out);
  return out;
}

Path child(Path p, std::initializer_list<std::size_t> steps) {
  p.insert(p.end(), steps);
  return p;
}

}  // namespace

std::vector<Path> type_sites(const SExpr& body) {
  std::vector<Path> out;
  Path path;
  collect_type_sites(body, path, out);
  return out;
}

EvalTask type_inference_at(const Statement& s, const Path& site,
                           TypeVariant variant) {
  SExpr body = replace_at_path(s.body, site, predict_atom());
  const TaskKind kind = variant == TypeVariant::kEasy
                            ? TaskKind::kTypeInference
                            : TaskKind::kHardTypeInference;
  if (variant == TypeVariant::kHard) {
    const SExpr mask = SExpr::atom(std::string(kMaskToken));
    for (const Path& other : type_sites(s.body)) {
      if (other != site) body = replace_at_path(body, other, mask);
    }
  }
  EvalTask t = make_task(s, kind, site, body);
  if (variant == TypeVariant::kHard) t.source = s.tokens();
  return t;
}

EvalTask extract_type_inference(const Statement& s, TypeVariant variant,
                                Rng& rng) {
  std::vector<EvalTask> one = extract_type_inference(s, variant, 1, rng);
  return std::move(one.front());
}

std::vector<EvalTask> extract_type_inference(const Statement& s,
                                             TypeVariant variant,
                                             std::size_t count, Rng& rng) {
  const std::vector<Path> sites = type_sites(s.body);
  if (sites.empty()) {
    throw NoCandidatesError("statement " + s.source_id +
                            " has no variable or constant");
  }
  count = std::min(count, sites.size());
  std::vector<std::size_t> order(sites.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<EvalTask> out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.uniform(order.size() - i);
    std::swap(order[i], order[j]);
    out.push_back(type_inference_at(s, sites[order[i]], variant));
  }
  return out;
}

std::vector<Path> top_level_implications(const SExpr& body) {
  return top_level_sites(body).implications;
}

std::vector<Path> top_level_equalities(const SExpr& body) {
  return top_level_sites(body).equalities;
}

std::vector<EvalTask> extract_assumptions(const Statement& s) {
  std::vector<EvalTask> out;
  for (const Path& imp : top_level_implications(s.body)) {
    const Path site = child(imp, {1, 2});
    out.push_back(make_task(s, TaskKind::kAssumptions, site,
                            replace_at_path(s.body, site, predict_atom())));
  }
  return out;
}

std::vector<EvalTask> extract_equalities(const Statement& s) {
  std::vector<EvalTask> out;
  for (const Path& eq : top_level_equalities(s.body)) {
    for (const Path& site : {child(eq, {1, 2}), child(eq, {2})}) {
      out.push_back(make_task(s, TaskKind::kEqualities, site,
                              replace_at_path(s.body, site, predict_atom())));
    }
  }
  return out;
}

EvalTask free_form_prompt() {
  EvalTask t;
  t.kind = TaskKind::kFreeForm;
  t.task_id = "freeform";
  t.input = {"(", std::string(kTheoremTag), std::string(kPredictToken), ")"};
  return t;
}

TokenSeq splice(const TokenSeq& input, const TokenSeq& fill) {
  TokenSeq out;
  out.reserve(input.size() + fill.size());
  for (const std::string& tok : input) {
    if (tok == kPredictToken) {
      out.insert(out.end(), fill.begin(), fill.end());
    } else {
      out.push_back(tok);
    }
  }
  return out;
}

std::optional<Path> find_predict(const SExpr& e) {
  for (const Subexpression& sub : subexpressions(e)) {
    if (sub.node.is_atom(kPredictToken)) return sub.path;
  }
  return std::nullopt;
}

}  // namespace skiptree
