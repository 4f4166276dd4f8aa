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

// Typed HOL terms and simple types as they appear in the S-expression
// corpus:
//
//   types:  A | ?0 | (bool) | (fun T1 T2) | (cart (real) N) | ...
//   terms:  (v T name) | (c T name) | (a F X) | (l (v T name) BODY)

#ifndef SKIPTREE_HOL_H_
#define SKIPTREE_HOL_H_

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "skiptree/sexpr.h"

namespace skiptree {

enum class TypeErrorKind {
  kMalformedTerm,
  kNotAFunction,
  kArgMismatch,
  kNotBoolean,
  kArityViolation,
};

std::string_view to_string(TypeErrorKind kind);

class TypeError : public std::runtime_error {
 public:
  TypeError(TypeErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  TypeErrorKind kind() const { return kind_; }

 private:
  TypeErrorKind kind_;
};

// A simple type. Type variables are rigid, which makes a type variable
// behave exactly like a nullary constructor of the same name; equality
// identifies `A` with `(A)` accordingly. Holes only occur while solving.
class HType {
 public:
  enum class Kind { kVar, kApp, kHole };

  static HType var(std::string name);
  static HType app(std::string constructor, std::vector<HType> args = {});
  static HType hole(int id);
  static HType fun(HType domain, HType codomain);
  static HType boolean() { return app("bool"); }

  Kind kind() const { return kind_; }
  bool is_var() const { return kind_ == Kind::kVar; }
  bool is_app() const { return kind_ == Kind::kApp; }
  bool is_hole() const { return kind_ == Kind::kHole; }
  // A type variable or an application without arguments.
  bool is_nullary() const { return is_var() || (is_app() && args().empty()); }
  bool is_fun() const { return is_app() && name_ == "fun" && args().size() == 2; }

  // Variable or constructor name.
  const std::string& name() const { return name_; }
  std::span<const HType> args() const;
  int hole_id() const { return hole_; }

  bool has_holes() const;
  std::size_t depth() const;

  bool operator==(const HType& other) const;

 private:
  HType() = default;

  Kind kind_ = Kind::kHole;
  std::string name_;
  int hole_ = -1;
  std::shared_ptr<const std::vector<HType>> args_;
};

// Throws TypeError(kMalformedTerm); hole markers are rejected.
HType parse_type(const SExpr& e);
SExpr to_sexpr(const HType& t);
std::string print(const HType& t);

class Term {
 public:
  enum class Kind { kVar, kConst, kApp, kAbs };

  static Term var(HType type, std::string name);
  static Term constant(HType type, std::string name);
  static Term app(Term fn, Term arg);
  // `binder` must be a variable.
  static Term abs(Term binder, Term body);

  Kind kind() const { return kind_; }
  bool is_var() const { return kind_ == Kind::kVar; }

  // Annotation of a variable or constant.
  const HType& type() const { return type_; }
  const std::string& name() const { return name_; }
  const Term& fn() const { return kids_->first; }
  const Term& arg() const { return kids_->second; }
  const Term& binder() const { return kids_->first; }
  const Term& body() const { return kids_->second; }

  bool operator==(const Term& other) const;

 private:
  Term() : type_(HType::boolean()) {}

  Kind kind_ = Kind::kVar;
  HType type_;
  std::string name_;
  std::shared_ptr<const std::pair<Term, Term>> kids_;
};

// Throws TypeError(kMalformedTerm) on any shape outside the term grammar.
Term parse_term(const SExpr& e);
SExpr to_sexpr(const Term& t);

// True if `e` has the shape (v T n) or (c T n); the type is e[1].
bool is_annotated_leaf(const SExpr& e);

}  // namespace skiptree

#endif  // SKIPTREE_HOL_H_
