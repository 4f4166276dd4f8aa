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

// S-expression syntax for HOL Light statements: lexing, parsing, printing
// and path-based navigation of the resulting trees.
//
// Token unit: '(' and ')' are tokens of their own; every maximal run of
// characters without whitespace or parentheses is one atom. Special markers
// such as <PREDICT> or <theorem> are ordinary atoms at this level.

#ifndef SKIPTREE_SEXPR_H_
#define SKIPTREE_SEXPR_H_

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace skiptree {

inline constexpr std::string_view kPredictToken = "<PREDICT>";
inline constexpr std::string_view kMaskToken = "<MASK>";
inline constexpr std::string_view kStartToken = "<START>";
inline constexpr std::string_view kEndToken = "<END>";
inline constexpr std::string_view kTheoremTag = "<theorem>";
inline constexpr std::string_view kGoalTag = "<goal>";

enum class TokenKind { kLParen, kRParen, kAtom };

struct Token {
  TokenKind kind;
  std::string text;  // "(" / ")" for parens, the atom otherwise

  bool operator==(const Token&) const = default;
};

// Flat token strings; the representation used in datasets and task files.
using TokenSeq = std::vector<std::string>;

// Child-index sequence from the root. The empty path is the root itself.
using Path = std::vector<std::size_t>;

enum class ParseErrorKind {
  kUnbalancedParens,
  kTrailingTokens,
  kEmptyInput,
  kEmptyList,
  kInvalidPath,
};

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ParseErrorKind kind() const { return kind_; }

 private:
  ParseErrorKind kind_;
};

// Immutable tree node. Children are shared between copies, so copying and
// path replacement are cheap.
class SExpr {
 public:
  static SExpr atom(std::string text);
  static SExpr list(std::vector<SExpr> children);

  bool is_atom() const { return children_ == nullptr; }
  bool is_list() const { return children_ != nullptr; }
  bool is_atom(std::string_view text) const {
    return is_atom() && text_ == text;
  }

  // Atom text; empty for lists.
  const std::string& text() const { return text_; }
  // Children; empty for atoms.
  std::span<const SExpr> children() const;
  std::size_t size() const { return children().size(); }
  const SExpr& operator[](std::size_t i) const { return children()[i]; }

  std::size_t node_count() const;
  std::size_t token_count() const;

  bool operator==(const SExpr& other) const;

  SExpr(const SExpr&) = default;
  SExpr(SExpr&&) noexcept = default;
  SExpr& operator=(const SExpr&) = default;
  SExpr& operator=(SExpr&&) noexcept = default;
  // Releases deep trees without recursing.
  ~SExpr();

 private:
  SExpr() = default;

  std::string text_;
  std::shared_ptr<std::vector<SExpr>> children_;  // never mutated once shared
};

std::vector<Token> tokenize(std::string_view text);

// Parses exactly one expression.
SExpr parse(std::span<const Token> tokens);
SExpr parse(std::string_view text);
SExpr parse_flat(std::span<const std::string> tokens);

std::string print(const SExpr& e);
TokenSeq flatten(const SExpr& e);
void flatten_into(const SExpr& e, TokenSeq& out);
TokenSeq to_strings(std::span<const Token> tokens);
std::string join_tokens(std::span<const std::string> tokens);

struct Subexpression {
  Path path;
  SExpr node;
  bool is_root;
};

// Preorder enumeration of every node, the root included.
std::vector<Subexpression> subexpressions(const SExpr& e);

const SExpr& at_path(const SExpr& e, const Path& path);
SExpr replace_at_path(const SExpr& e, const Path& path, SExpr replacement);

// True if `prefix` addresses an ancestor of (or the same node as) `path`.
bool is_prefix(const Path& prefix, const Path& path);
// Ancestor, descendant or identical.
inline bool overlaps(const Path& a, const Path& b) {
  return is_prefix(a, b) || is_prefix(b, a);
}

// Token span [first, second) of every node, in subexpressions() order.
std::vector<std::pair<std::size_t, std::size_t>> token_spans(const SExpr& e);

std::size_t count_atoms(std::span<const std::string> tokens,
                        std::string_view atom);

}  // namespace skiptree

#endif  // SKIPTREE_SEXPR_H_
