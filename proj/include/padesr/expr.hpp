#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "padesr/token.hpp"

namespace padesr {

enum class Notation { Prefix, Postfix };

std::string_view to_string(Notation n);
Notation parse_notation(std::string_view text);

/// Malformed or incomplete token sequence.
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad token text; `position` is the zero-based token index.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Half-open index range [begin, end) holding one complete subexpression.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
  friend bool operator==(const Span&, const Span&) = default;
};

/// Tree depth (leaf = 0); throws StructureError when `tokens` is not exactly one expression.
int sequence_depth(std::span<const Token> tokens, Notation n);

/// Per-token subtree extents.
///   prefix:  out[i] = one past the last token of the subtree rooted at i
///   postfix: out[i] = first token of the subtree rooted at i
void subtree_extents(std::span<const Token> tokens, Notation n, std::vector<std::size_t>& out);

/// Span of the subtree rooted at token i, given extents from subtree_extents.
Span subtree_span(std::span<const std::size_t> extents, Notation n, std::size_t i);

/// Root token index of a subtree span.
inline std::size_t span_root(Span s, Notation n) { return n == Notation::Prefix ? s.begin : s.end - 1; }

/// Operand spans of the node rooted at the given span (1 or 2 spans in written order).
void child_spans(std::span<const Token> tokens, std::span<const std::size_t> extents, Notation n,
                 Span node, Span* children);

/// Distance from the root (root = 0) and subtree height for every token.
void node_levels(std::span<const Token> tokens, Notation n, std::vector<int>& level,
                 std::vector<int>& height);

/// Free-mode names bound to a token before parsing (e.g. y_0 -> y_min).
using Bindings = std::map<std::string, Token, std::less<>>;

/// A complete flat expression in prefix or postfix notation.
class Expr {
 public:
  Expr() : tokens_{Token::literal(0.0)} {}
  /// Validates completeness; budget defaults to the sequence depth.
  Expr(Notation notation, std::vector<Token> tokens);
  /// Validates completeness and depth <= budget.
  Expr(Notation notation, std::vector<Token> tokens, int budget);

  static Expr parse(std::string_view text, Notation notation, ParseMode mode = ParseMode::SearchAlphabet,
                    const Bindings& bindings = {});

  Notation notation() const { return notation_; }
  const std::vector<Token>& tokens() const { return tokens_; }
  std::size_t size() const { return tokens_.size(); }
  int depth() const { return depth_; }
  int budget() const { return budget_; }

  /// Number of learnable-constant occurrences.
  std::size_t slot_count() const;

  /// Space-joined token spellings.
  std::string to_string() const;
  /// Cache key: notation tag + ":" + spellings.
  std::string key() const;

  friend bool operator==(const Expr& a, const Expr& b) {
    return a.notation_ == b.notation_ && a.tokens_ == b.tokens_;
  }

 private:
  Notation notation_ = Notation::Prefix;
  std::vector<Token> tokens_;
  int depth_ = 0;
  int budget_ = 0;
};

/// Renumbers learnable slots 0, 1, 2, ... in order of appearance from the left.
void canonicalize_slots(std::vector<Token>& tokens);

std::string render_infix(const Expr& e);

Expr convert_notation(const Expr& e, Notation target);

/// Converts a token sequence without validation (input must be complete).
void convert_tokens(std::span<const Token> in, Notation from, std::vector<Token>& out);

}  // namespace padesr
