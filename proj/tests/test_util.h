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

#ifndef SKIPTREE_TESTS_TEST_UTIL_H_
#define SKIPTREE_TESTS_TEST_UTIL_H_

#include <string>

#include "skiptree/sexpr.h"
#include "skiptree/statement.h"

namespace skiptree::testing {

inline constexpr const char* kXEqX =
    "(a (a (c (fun (A) (fun (A) (bool))) =) (v A x)) (v A x))";

inline std::string source_path(const std::string& rel) {
  return std::string(SKIPTREE_SOURCE_DIR) + "/" + rel;
}

inline std::string corpus_path() { return source_path("data/corpus.jsonl"); }

inline Statement theorem(const std::string& body, Split split = Split::kValid,
                         std::string id = "t") {
  Statement s;
  s.body = parse(body);
  s.split = split;
  s.source_id = std::move(id);
  return s;
}

inline TokenSeq toks(const std::string& text) {
  return to_strings(tokenize(text));
}

// Curried binary application (a (a (c T op) l) r).
inline std::string bin(const std::string& type, const std::string& op,
                       const std::string& l, const std::string& r) {
  return "(a (a (c " + type + " " + op + ") " + l + ") " + r + ")";
}

inline constexpr const char* kBoolOp = "(fun (bool) (fun (bool) (bool)))";

inline std::string bvar(const std::string& name) {
  return "(v (bool) " + name + ")";
}

inline std::string imp(const std::string& l, const std::string& r) {
  return bin(kBoolOp, "==>", l, r);
}

inline std::string conj(const std::string& l, const std::string& r) {
  return bin(kBoolOp, "/\\", l, r);
}

}  // namespace skiptree::testing

#endif  // SKIPTREE_TESTS_TEST_UTIL_H_
