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

// Type reconstruction for fully annotated HOL terms, first-order
// unification over simple types, and the solver for <PREDICT> holes in type
// position.

#ifndef SKIPTREE_TYPECHECK_H_
#define SKIPTREE_TYPECHECK_H_

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "skiptree/hol.h"
#include "skiptree/statement.h"

namespace skiptree {

// Bottom-up: annotations of variables and constants are taken as given and
// every application must agree structurally. Throws TypeError.
HType infer_type(const Term& t);

// Constructor arities seen so far in one corpus file. `fun` is fixed at 2;
// every other constructor is pinned to the arity of its first occurrence.
class ArityTable {
 public:
  // Records or checks every constructor in `t`. Throws
  // TypeError(kArityViolation).
  void observe(const HType& t);
  void observe_term(const Term& t);
  std::optional<std::size_t> arity(const std::string& constructor) const;

 private:
  std::map<std::string, std::size_t> arity_;
};

// nullopt when the body is a well-typed term of type (bool).
std::optional<TypeError> check_body(const SExpr& body,
                                    ArityTable* arities = nullptr);
std::optional<TypeError> check_statement(const Statement& s,
                                         ArityTable* arities = nullptr);

// Idempotent substitution from hole ids to types.
using Subst = std::map<int, HType>;

HType apply(const Subst& subst, const HType& t);

enum class UnifyErrorKind {
  kConstructorClash,
  kArityClash,
  kRigidClash,
  kOccursCheck,
};

std::string_view to_string(UnifyErrorKind kind);

class UnifyError : public std::runtime_error {
 public:
  UnifyError(UnifyErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  UnifyErrorKind kind() const { return kind_; }

 private:
  UnifyErrorKind kind_;
};

// Most general unifier of `a` and `b` extending `subst`. Type variables are
// rigid; only holes are bound. Throws UnifyError.
Subst unify(const HType& a, const HType& b, Subst subst = {});

struct Unique {
  HType type;
};
struct Ambiguous {
  std::size_t free_holes;
};
struct IllTyped {
  std::string reason;
};
using TypeSolution = std::variant<Unique, Ambiguous, IllTyped>;

enum class MaskPolicy {
  kIndependentHoles,  // every <MASK> is its own fresh hole
  kReject,            // any <MASK> makes the prompt malformed
};

// MalformedPrompt: the <PREDICT> marker is absent, duplicated, or sits where
// a term is expected.
class PromptError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Solves for the type at the single <PREDICT> marker of a prompt body,
// under the constraint that the body is boolean.
TypeSolution solve_hole(const SExpr& body,
                        MaskPolicy policy = MaskPolicy::kIndependentHoles);
TypeSolution solve_hole(const Statement& s,
                        MaskPolicy policy = MaskPolicy::kIndependentHoles);

// Replaces every <MASK> type annotation by its most general solution under
// the boolean-body constraint; parts left unconstrained become fresh type
// variables 'h0, 'h1, .... nullopt when no completion typechecks. Throws
// PromptError if the body holds <PREDICT> or a <MASK> in term position.
std::optional<SExpr> fill_masks(const SExpr& body);

}  // namespace skiptree

#endif  // SKIPTREE_TYPECHECK_H_
