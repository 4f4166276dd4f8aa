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

#include "skiptree/sexpr.h"

#include <algorithm>
#include <cctype>
#include <utility>

namespace skiptree {

namespace {

bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

void print_into(const SExpr& e, std::string& out) {
  if (e.is_atom()) {
    out += e.text();
    return;
  }
  out += '(';
  bool first = true;
  for (const SExpr& c : e.children()) {
    if (!first) out += ' ';
    first = false;
    print_into(c, out);
  }
  out += ')';
}

void enumerate(const SExpr& e, Path& path, std::vector<Subexpression>& out) {
  out.push_back({path, e, path.empty()});
  const auto children = e.children();
  for (std::size_t i = 0; i < children.size(); ++i) {
    path.push_back(i);
    enumerate(children[i], path, out);
    path.pop_back();
  }
}

void spans_into(const SExpr& e, std::size_t& pos,
                std::vector<std::pair<std::size_t, std::size_t>>& out) {
  const std::size_t slot = out.size();
  out.emplace_back(pos, pos);
  if (e.is_atom()) {
    ++pos;
  } else {
    ++pos;
    for (const SExpr& c : e.children()) spans_into(c, pos, out);
    ++pos;
  }
  out[slot].second = pos;
}

SExpr replace_from(const SExpr& e, const Path& path, std::size_t depth,
                   SExpr replacement) {
  if (depth == path.size()) return replacement;
  const auto children = e.children();
  if (path[depth] >= children.size()) {
    throw ParseError(ParseErrorKind::kInvalidPath,
                     "path does not address a node");
  }
  std::vector<SExpr> copy(children.begin(), children.end());
  copy[path[depth]] =
      replace_from(children[path[depth]], path, depth + 1,
                   std::move(replacement));
  return SExpr::list(std::move(copy));
}

}  // namespace

SExpr SExpr::atom(std::string text) {
  SExpr e;
  e.text_ = std::move(text);
  return e;
}

SExpr SExpr::list(std::vector<SExpr> children) {
  if (children.empty()) {
    throw ParseError(ParseErrorKind::kEmptyList, "empty list ()");
  }
  SExpr e;
  e.children_ = std::make_shared<std::vector<SExpr>>(std::move(children));
  return e;
}

std::span<const SExpr> SExpr::children() const {
  if (!children_) return {};
  return {children_->data(), children_->size()};
}

SExpr::~SExpr() {
  if (!children_ || children_.use_count() != 1) return;
  // Detach uniquely owned grandchildren before each vector is freed, so
  // that no destructor below this one has anything left to release.
  std::vector<std::shared_ptr<std::vector<SExpr>>> pending;
  pending.push_back(std::move(children_));
  while (!pending.empty()) {
    std::shared_ptr<std::vector<SExpr>> v = std::move(pending.back());
    pending.pop_back();
    if (v.use_count() != 1) continue;
    for (SExpr& c : *v) {
      if (c.children_) pending.push_back(std::move(c.children_));
    }
  }
}

std::size_t SExpr::node_count() const {
  std::size_t n = 0;
  std::vector<const SExpr*> todo{this};
  while (!todo.empty()) {
    const SExpr* e = todo.back();
    todo.pop_back();
    ++n;
    for (const SExpr& c : e->children()) todo.push_back(&c);
  }
  return n;
}

std::size_t SExpr::token_count() const {
  std::size_t n = 0;
  std::vector<const SExpr*> todo{this};
  while (!todo.empty()) {
    const SExpr* e = todo.back();
    todo.pop_back();
    n += e->is_atom() ? 1 : 2;
    for (const SExpr& c : e->children()) todo.push_back(&c);
  }
  return n;
}

bool SExpr::operator==(const SExpr& other) const {
  if (is_atom() != other.is_atom()) return false;
  if (is_atom()) return text_ == other.text_;
  if (children_ == other.children_) return true;
  const auto a = children();
  const auto b = other.children();
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (is_space(c)) {
      ++i;
    } else if (c == '(') {
      tokens.push_back({TokenKind::kLParen, "("});
      ++i;
    } else if (c == ')') {
      tokens.push_back({TokenKind::kRParen, ")"});
      ++i;
    } else {
      std::size_t j = i;
      while (j < text.size() && !is_space(text[j]) && text[j] != '(' &&
             text[j] != ')') {
        ++j;
      }
      tokens.push_back({TokenKind::kAtom, std::string(text.substr(i, j - i))});
      i = j;
    }
  }
  return tokens;
}

SExpr parse(std::span<const Token> tokens) {
  if (tokens.empty()) throw ParseError(ParseErrorKind::kEmptyInput, "empty input");
  // Explicit stack: statements can nest several hundred levels deep.
  std::vector<std::vector<SExpr>> stack;
  std::vector<SExpr> done;
  std::size_t i = 0;
  for (; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (t.kind == TokenKind::kLParen) {
      stack.emplace_back();
      continue;
    }
    if (t.kind == TokenKind::kRParen) {
      if (stack.empty()) {
        throw ParseError(ParseErrorKind::kUnbalancedParens,
                         "unexpected ')' at token " + std::to_string(i));
      }
      std::vector<SExpr> kids = std::move(stack.back());
      stack.pop_back();
      if (kids.empty()) {
        throw ParseError(ParseErrorKind::kEmptyList,
                         "empty list () at token " + std::to_string(i));
      }
      SExpr node = SExpr::list(std::move(kids));
      if (stack.empty()) {
        done.push_back(std::move(node));
        break;
      }
      stack.back().push_back(std::move(node));
      continue;
    }
    if (stack.empty()) {
      done.push_back(SExpr::atom(t.text));
      break;
    }
    stack.back().push_back(SExpr::atom(t.text));
  }
  if (!stack.empty()) {
    throw ParseError(ParseErrorKind::kUnbalancedParens, "missing ')'");
  }
  if (i + 1 < tokens.size()) {
    if (tokens[i + 1].kind == TokenKind::kRParen) {
      throw ParseError(ParseErrorKind::kUnbalancedParens,
                       "unexpected ')' at token " + std::to_string(i + 1));
    }
    throw ParseError(ParseErrorKind::kTrailingTokens,
                     "trailing tokens after expression at token " +
                         std::to_string(i + 1));
  }
  return std::move(done.front());
}

SExpr parse(std::string_view text) { return parse(tokenize(text)); }

SExpr parse_flat(std::span<const std::string> tokens) {
  std::vector<Token> lexed;
  lexed.reserve(tokens.size());
  for (const std::string& s : tokens) {
    if (s == "(") {
      lexed.push_back({TokenKind::kLParen, s});
    } else if (s == ")") {
      lexed.push_back({TokenKind::kRParen, s});
    } else {
      lexed.push_back({TokenKind::kAtom, s});
    }
  }
  return parse(lexed);
}

std::string print(const SExpr& e) {
  std::string out;
  print_into(e, out);
  return out;
}

void flatten_into(const SExpr& e, TokenSeq& out) {
  if (e.is_atom()) {
    out.push_back(e.text());
    return;
  }
  out.emplace_back("(");
  for (const SExpr& c : e.children()) flatten_into(c, out);
  out.emplace_back(")");
}

TokenSeq flatten(const SExpr& e) {
  TokenSeq out;
  flatten_into(e, out);
  return out;
}

TokenSeq to_strings(std::span<const Token> tokens) {
  TokenSeq out;
  out.reserve(tokens.size());
  for (const Token& t : tokens) out.push_back(t.text);
  return out;
}

std::string join_tokens(std::span<const std::string> tokens) {
  std::string out;
  for (const std::string& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

std::vector<Subexpression> subexpressions(const SExpr& e) {
  std::vector<Subexpression> out;
  Path path;
  enumerate(e, path, out);
  return out;
}

const SExpr& at_path(const SExpr& e, const Path& path) {
  const SExpr* node = &e;
  for (std::size_t i : path) {
    if (i >= node->size()) {
      throw ParseError(ParseErrorKind::kInvalidPath,
                       "path does not address a node");
    }
    node = &(*node)[i];
  }
  return *node;
}

SExpr replace_at_path(const SExpr& e, const Path& path, SExpr replacement) {
  return replace_from(e, path, 0, std::move(replacement));
}

bool is_prefix(const Path& prefix, const Path& path) {
  return prefix.size() <= path.size() &&
         std::equal(prefix.begin(), prefix.end(), path.begin());
}

std::vector<std::pair<std::size_t, std::size_t>> token_spans(const SExpr& e) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t pos = 0;
  spans_into(e, pos, out);
  return out;
}

std::size_t count_atoms(std::span<const std::string> tokens,
                        std::string_view atom) {
  return static_cast<std::size_t>(
      std::count(tokens.begin(), tokens.end(), atom));
}

}  // namespace skiptree
