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

#include "skiptree/typecheck.h"

#include <set>
#include <utility>
#include <vector>

namespace skiptree {

HType infer_type(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::kVar:
    case Term::Kind::kConst:
      return t.type();
    case Term::Kind::kApp: {
      HType fn = infer_type(t.fn());
      if (!fn.is_fun()) {
        throw TypeError(TypeErrorKind::kNotAFunction,
                        "applied term has type " + print(fn));
      }
      const HType arg = infer_type(t.arg());
      if (!(fn.args()[0] == arg)) {
        throw TypeError(TypeErrorKind::kArgMismatch,
                        "expected argument of type " + print(fn.args()[0]) +
                            ", got " + print(arg));
      }
      return fn.args()[1];
    }
    case Term::Kind::kAbs:
      return HType::fun(t.binder().type(), infer_type(t.body()));
  }
  throw TypeError(TypeErrorKind::kMalformedTerm, "unknown term kind");
}

void ArityTable::observe(const HType& t) {
  if (!t.is_app()) return;
  if (t.name() != "fun") {
    auto [it, inserted] = arity_.emplace(t.name(), t.args().size());
    if (!inserted && it->second != t.args().size()) {
      throw TypeError(TypeErrorKind::kArityViolation,
                      "constructor " + t.name() + " used with " +
                          std::to_string(t.args().size()) +
                          " arguments, first seen with " +
                          std::to_string(it->second));
    }
  }
  for (const HType& a : t.args()) observe(a);
}

void ArityTable::observe_term(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::kVar:
    case Term::Kind::kConst:
      observe(t.type());
      return;
    case Term::Kind::kApp:
    case Term::Kind::kAbs:
      observe_term(t.fn());
      observe_term(t.arg());
      return;
  }
}

std::optional<std::size_t> ArityTable::arity(
    const std::string& constructor) const {
  if (constructor == "fun") return 2;
  auto it = arity_.find(constructor);
  if (it == arity_.end()) return std::nullopt;
  return it->second;
}

std::optional<TypeError> check_body(const SExpr& body, ArityTable* arities) {
  try {
    const Term t = parse_term(body);
    if (arities != nullptr) arities->observe_term(t);
    const HType ty = infer_type(t);
    if (!(ty == HType::boolean())) {
      return TypeError(TypeErrorKind::kNotBoolean,
                       "statement has type " + print(ty));
    }
    return std::nullopt;
  } catch (const TypeError& e) {
    return e;
  }
}

std::optional<TypeError> check_statement(const Statement& s,
                                         ArityTable* arities) {
  return check_body(s.body, arities);
}

std::string_view to_string(UnifyErrorKind kind) {
  switch (kind) {
    case UnifyErrorKind::kConstructorClash: return "ConstructorClash";
    case UnifyErrorKind::kArityClash: return "ArityClash";
    case UnifyErrorKind::kRigidClash: return "RigidClash";
    case UnifyErrorKind::kOccursCheck: return "OccursCheck";
  }
  return "UnifyError";
}

HType apply(const Subst& subst, const HType& t) {
  if (subst.empty()) return t;
  if (t.is_hole()) {
    auto it = subst.find(t.hole_id());
    return it == subst.end() ? t : it->second;
  }
  if (t.args().empty() || !t.has_holes()) return t;
  std::vector<HType> args;
  args.reserve(t.args().size());
  for (const HType& a : t.args()) args.push_back(skiptree::apply(subst, a));
  return HType::app(t.name(), std::move(args));
}

namespace {

bool occurs(int hole, const HType& t) {
  if (t.is_hole()) return t.hole_id() == hole;
  for (const HType& a : t.args()) {
    if (occurs(hole, a)) return true;
  }
  return false;
}

void bind(int hole, const HType& t, Subst& subst) {
  if (occurs(hole, t)) {
    throw UnifyError(UnifyErrorKind::kOccursCheck,
                     "hole " + std::to_string(hole) + " occurs in " + print(t));
  }
  const Subst single{{hole, t}};
  for (auto& [id, ty] : subst) ty = skiptree::apply(single, ty);
  subst.emplace(hole, t);
}

}  // namespace

Subst unify(const HType& a, const HType& b, Subst subst) {
  std::vector<std::pair<HType, HType>> work{{a, b}};
  while (!work.empty()) {
    auto [x0, y0] = std::move(work.back());
    work.pop_back();
    const HType x = skiptree::apply(subst, x0);
    const HType y = skiptree::apply(subst, y0);
    if (x.is_hole() && y.is_hole() && x.hole_id() == y.hole_id()) continue;
    if (x.is_hole()) {
      bind(x.hole_id(), y, subst);
      continue;
    }
    if (y.is_hole()) {
      bind(y.hole_id(), x, subst);
      continue;
    }
    if (x.is_nullary() && y.is_nullary()) {
      if (x.name() == y.name()) continue;
      if (x.is_var() || y.is_var()) {
        throw UnifyError(UnifyErrorKind::kRigidClash,
                         "cannot unify " + print(x) + " with " + print(y));
      }
      throw UnifyError(UnifyErrorKind::kConstructorClash,
                       "cannot unify " + print(x) + " with " + print(y));
    }
    if (x.is_var() || y.is_var()) {
      throw UnifyError(UnifyErrorKind::kRigidClash,
                       "type variable " + (x.is_var() ? x : y).name() +
                           " is rigid");
    }
    if (x.name() != y.name()) {
      throw UnifyError(UnifyErrorKind::kConstructorClash,
                       "cannot unify " + print(x) + " with " + print(y));
    }
    if (x.args().size() != y.args().size()) {
      throw UnifyError(UnifyErrorKind::kArityClash,
                       "constructor " + x.name() + " with different arities");
    }
    for (std::size_t i = 0; i < x.args().size(); ++i) {
      work.emplace_back(x.args()[i], y.args()[i]);
    }
  }
  return subst;
}

namespace {

class HoleSolver {
 public:
  explicit HoleSolver(MaskPolicy policy) : policy_(policy) {}

  TypeSolution solve(const SExpr& body) {
    std::size_t predicts = 0;
    for (const Subexpression& sub : subexpressions(body)) {
      if (sub.node.is_atom(kPredictToken)) ++predicts;
      if (policy_ == MaskPolicy::kReject && sub.node.is_atom(kMaskToken)) {
        throw PromptError("prompt contains <MASK>");
      }
    }
    if (predicts != 1) {
      throw PromptError(predicts == 0 ? "prompt has no <PREDICT>"
                                      : "prompt has more than one <PREDICT>");
    }
    HType answer = HType::boolean();
    try {
      constrain(infer(body), HType::boolean());
      answer = skiptree::apply(subst_, HType::hole(predict_hole_));
      if (!answer.has_holes()) arities_.observe(answer);
    } catch (const UnifyError& e) {
      return IllTyped{e.what()};
    } catch (const TypeError& e) {
      return IllTyped{e.what()};
    }
    if (answer.has_holes()) {
      std::set<int> free;
      collect_holes(answer, free);
      return Ambiguous{free.size()};
    }
    return Unique{answer};
  }

  HType fresh() { return HType::hole(next_hole_++); }

  void constrain(const HType& a, const HType& b) {
    subst_ = unify(a, b, std::move(subst_));
  }

  static void collect_holes(const HType& t, std::set<int>& out) {
    if (t.is_hole()) out.insert(t.hole_id());
    for (const HType& a : t.args()) collect_holes(a, out);
  }

  // Completion of a body whose holes are all <MASK> types.
  std::optional<SExpr> fill(const SExpr& body) {
    std::vector<Path> masks;
    for (const Subexpression& sub : subexpressions(body)) {
      if (sub.node.is_atom(kPredictToken)) {
        throw PromptError("body to complete contains <PREDICT>");
      }
      if (sub.node.is_atom(kMaskToken)) masks.push_back(sub.path);
    }
    try {
      constrain(infer(body), HType::boolean());
    } catch (const UnifyError&) {
      return std::nullopt;
    } catch (const TypeError&) {
      return std::nullopt;
    }
    if (term_masks_ > 0) throw PromptError("<MASK> stands where a term is expected");
    // Type positions are visited in preorder, the same order as `masks`.
    std::map<int, HType> rigid;
    SExpr out = body;
    for (std::size_t i = 0; i < masks.size(); ++i) {
      const HType t = close(skiptree::apply(subst_, HType::hole(mask_holes_[i])), rigid);
      out = replace_at_path(out, masks[i], to_sexpr(t));
    }
    return out;
  }

 private:
  // Replaces every remaining hole by a type variable named after it.
  static HType close(const HType& t, std::map<int, HType>& rigid) {
    if (t.is_hole()) {
      auto it = rigid.find(t.hole_id());
      if (it == rigid.end()) {
        it = rigid.emplace(t.hole_id(),
                           HType::var("'h" + std::to_string(rigid.size())))
                 .first;
      }
      return it->second;
    }
    if (!t.is_app()) return t;
    std::vector<HType> args;
    for (const HType& a : t.args()) args.push_back(close(a, rigid));
    return HType::app(t.name(), std::move(args));
  }

  HType type_at(const SExpr& e) {
    if (e.is_atom(kPredictToken)) {
      predict_hole_ = next_hole_;
      return fresh();
    }
    if (e.is_atom(kMaskToken)) {
      mask_holes_.push_back(next_hole_);
      return fresh();
    }
    if (e.is_atom()) return HType::var(e.text());
    if (!e[0].is_atom() || e[0].is_atom(kPredictToken) ||
        e[0].is_atom(kMaskToken)) {
      throw TypeError(TypeErrorKind::kMalformedTerm,
                      "type constructor must be a name");
    }
    std::vector<HType> args;
    for (std::size_t i = 1; i < e.size(); ++i) args.push_back(type_at(e[i]));
    if (e[0].text() == "fun" && args.size() != 2) {
      throw TypeError(TypeErrorKind::kMalformedTerm,
                      "fun takes exactly 2 arguments");
    }
    HType t = HType::app(e[0].text(), std::move(args));
    arities_.observe(t);
    return t;
  }

  HType infer(const SExpr& e) {
    if (e.is_atom()) {
      if (e.is_atom(kPredictToken)) {
        throw PromptError("<PREDICT> stands where a term is expected");
      }
      if (e.is_atom(kMaskToken)) {
        ++term_masks_;
        return fresh();
      }
      throw TypeError(TypeErrorKind::kMalformedTerm, "bare atom " + e.text());
    }
    if (e.size() == 3 && e[0].is_atom()) {
      const std::string& kind = e[0].text();
      if (kind == "v" || kind == "c") {
        if (!e[2].is_atom()) {
          throw TypeError(TypeErrorKind::kMalformedTerm, "name must be an atom");
        }
        if (e[2].is_atom(kPredictToken) || e[2].is_atom(kMaskToken)) {
          throw PromptError(e[2].text() + " stands where a name is expected");
        }
        return type_at(e[1]);
      }
      if (kind == "a") {
        const HType fn = skiptree::apply(subst_, infer(e[1]));
        const HType arg = infer(e[2]);
        if (fn.is_fun()) {
          constrain(fn.args()[0], arg);
          return fn.args()[1];
        }
        if (!fn.is_hole()) {
          throw TypeError(TypeErrorKind::kNotAFunction,
                          "applied term has type " + print(fn));
        }
        const HType dom = fresh();
        const HType cod = fresh();
        constrain(fn, HType::fun(dom, cod));
        constrain(dom, arg);
        return cod;
      }
      if (kind == "l") {
        if (!e[1].is_list() || e[1].size() != 3 || !e[1][0].is_atom("v")) {
          throw TypeError(TypeErrorKind::kMalformedTerm,
                          "abstraction binder must be (v T n)");
        }
        HType bound = infer(e[1]);
        return HType::fun(std::move(bound), infer(e[2]));
      }
    }
    throw TypeError(TypeErrorKind::kMalformedTerm, "not a term: " + print(e));
  }

  MaskPolicy policy_;
  int next_hole_ = 0;
  int predict_hole_ = -1;
  std::vector<int> mask_holes_;
  std::size_t term_masks_ = 0;
  Subst subst_;
  ArityTable arities_;
};

}  // namespace

TypeSolution solve_hole(const SExpr& body, MaskPolicy policy) {
  return HoleSolver(policy).solve(body);
}

TypeSolution solve_hole(const Statement& s, MaskPolicy policy) {
  return solve_hole(s.body, policy);
}

std::optional<SExpr> fill_masks(const SExpr& body) {
  return HoleSolver(MaskPolicy::kIndependentHoles).fill(body);
}

}  // namespace skiptree
