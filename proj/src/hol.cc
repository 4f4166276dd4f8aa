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

#include "skiptree/hol.h"

#include <algorithm>

namespace skiptree {

std::string_view to_string(TypeErrorKind kind) {
  switch (kind) {
    case TypeErrorKind::kMalformedTerm: return "MalformedTerm";
    case TypeErrorKind::kNotAFunction: return "NotAFunction";
    case TypeErrorKind::kArgMismatch: return "ArgMismatch";
    case TypeErrorKind::kNotBoolean: return "NotBoolean";
    case TypeErrorKind::kArityViolation: return "ArityViolation";
  }
  return "TypeError";
}

HType HType::var(std::string name) {
  HType t;
  t.kind_ = Kind::kVar;
  t.name_ = std::move(name);
  return t;
}

HType HType::app(std::string constructor, std::vector<HType> args) {
  HType t;
  t.kind_ = Kind::kApp;
  t.name_ = std::move(constructor);
  if (!args.empty()) {
    t.args_ = std::make_shared<const std::vector<HType>>(std::move(args));
  }
  return t;
}

HType HType::hole(int id) {
  HType t;
  t.kind_ = Kind::kHole;
  t.hole_ = id;
  return t;
}

HType HType::fun(HType domain, HType codomain) {
  return app("fun", {std::move(domain), std::move(codomain)});
}

std::span<const HType> HType::args() const {
  if (!args_) return {};
  return {args_->data(), args_->size()};
}

bool HType::has_holes() const {
  if (is_hole()) return true;
  return std::any_of(args().begin(), args().end(),
                     [](const HType& a) { return a.has_holes(); });
}

std::size_t HType::depth() const {
  std::size_t d = 0;
  for (const HType& a : args()) d = std::max(d, a.depth());
  return d + 1;
}

bool HType::operator==(const HType& other) const {
  if (is_hole() || other.is_hole()) {
    return is_hole() && other.is_hole() && hole_ == other.hole_;
  }
  if (is_nullary() && other.is_nullary()) return name_ == other.name_;
  if (is_var() || other.is_var()) return false;
  if (name_ != other.name_) return false;
  if (args_ == other.args_) return true;
  const auto a = args();
  const auto b = other.args();
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

HType parse_type(const SExpr& e) {
  if (e.is_atom()) {
    if (e.text() == kPredictToken || e.text() == kMaskToken) {
      throw TypeError(TypeErrorKind::kMalformedTerm,
                      "hole marker " + e.text() + " in a type");
    }
    return HType::var(e.text());
  }
  if (!e[0].is_atom()) {
    throw TypeError(TypeErrorKind::kMalformedTerm,
                    "type constructor must be an atom: " + print(e));
  }
  std::vector<HType> args;
  args.reserve(e.size() - 1);
  for (std::size_t i = 1; i < e.size(); ++i) args.push_back(parse_type(e[i]));
  if (e[0].text() == "fun" && args.size() != 2) {
    throw TypeError(TypeErrorKind::kMalformedTerm,
                    "fun takes exactly 2 arguments: " + print(e));
  }
  return HType::app(e[0].text(), std::move(args));
}

SExpr to_sexpr(const HType& t) {
  switch (t.kind()) {
    case HType::Kind::kVar:
      return SExpr::atom(t.name());
    case HType::Kind::kHole:
      return SExpr::atom("?hole" + std::to_string(t.hole_id()));
    case HType::Kind::kApp: {
      std::vector<SExpr> kids{SExpr::atom(t.name())};
      for (const HType& a : t.args()) kids.push_back(to_sexpr(a));
      return SExpr::list(std::move(kids));
    }
  }
  return SExpr::atom("?");
}

std::string print(const HType& t) { return print(to_sexpr(t)); }

Term Term::var(HType type, std::string name) {
  Term t;
  t.kind_ = Kind::kVar;
  t.type_ = std::move(type);
  t.name_ = std::move(name);
  return t;
}

Term Term::constant(HType type, std::string name) {
  Term t = var(std::move(type), std::move(name));
  t.kind_ = Kind::kConst;
  return t;
}

Term Term::app(Term fn, Term arg) {
  Term t;
  t.kind_ = Kind::kApp;
  t.kids_ = std::make_shared<const std::pair<Term, Term>>(std::move(fn),
                                                          std::move(arg));
  return t;
}

Term Term::abs(Term binder, Term body) {
  if (!binder.is_var()) {
    throw TypeError(TypeErrorKind::kMalformedTerm,
                    "abstraction binder must be a variable");
  }
  Term t;
  t.kind_ = Kind::kAbs;
  t.kids_ = std::make_shared<const std::pair<Term, Term>>(std::move(binder),
                                                          std::move(body));
  return t;
}

bool Term::operator==(const Term& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case Kind::kVar:
    case Kind::kConst:
      return name_ == other.name_ && type_ == other.type_;
    case Kind::kApp:
    case Kind::kAbs:
      return kids_ == other.kids_ || (kids_->first == other.kids_->first &&
                                      kids_->second == other.kids_->second);
  }
  return false;
}

bool is_annotated_leaf(const SExpr& e) {
  return e.is_list() && e.size() == 3 && (e[0].is_atom("v") || e[0].is_atom("c"));
}

Term parse_term(const SExpr& e) {
  if (e.is_list() && e.size() == 3 && e[0].is_atom()) {
    const std::string& kind = e[0].text();
    if (kind == "v" || kind == "c") {
      if (!e[2].is_atom()) {
        throw TypeError(TypeErrorKind::kMalformedTerm,
                        "name must be an atom: " + print(e));
      }
      HType ty = parse_type(e[1]);
      return kind == "v" ? Term::var(std::move(ty), e[2].text())
                         : Term::constant(std::move(ty), e[2].text());
    }
    if (kind == "a") return Term::app(parse_term(e[1]), parse_term(e[2]));
    if (kind == "l") {
      if (!e[1].is_list() || !e[1][0].is_atom("v")) {
        throw TypeError(TypeErrorKind::kMalformedTerm,
                        "abstraction binder must be (v T n)");
      }
      return Term::abs(parse_term(e[1]), parse_term(e[2]));
    }
  }
  const std::string shown = print(e);
  throw TypeError(TypeErrorKind::kMalformedTerm,
                  "not a term: " + shown.substr(0, 80));
}

SExpr to_sexpr(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::kVar:
    case Term::Kind::kConst:
      return SExpr::list({SExpr::atom(t.kind() == Term::Kind::kVar ? "v" : "c"),
                          to_sexpr(t.type()), SExpr::atom(t.name())});
    case Term::Kind::kApp:
      return SExpr::list({SExpr::atom("a"), to_sexpr(t.fn()), to_sexpr(t.arg())});
    case Term::Kind::kAbs:
      return SExpr::list({SExpr::atom("l"), to_sexpr(t.binder()),
                          to_sexpr(t.body())});
  }
  return SExpr::atom("?");
}

}  // namespace skiptree
