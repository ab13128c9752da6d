#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace padesr {

enum class Var : std::uint8_t { X, Y, T };
enum class UnaryOp : std::uint8_t { Neg, Log, Exp, Cos, Sin, Sqrt, Asin, Acos, Tanh, Sech };
enum class BinaryOp : std::uint8_t { Add, Sub, Mul, Div, Pow };

/// Named literals whose value is the min/max of a domain axis of the active case.
enum class Bound : std::uint8_t { None, XMin, XMax, YMin, YMax, TMin, TMax };

enum class TokenKind : std::uint8_t {
  Variable,
  IcFeature,
  IcDerivative,
  Literal,
  LearnableConst,
  Unary,
  Binary,
};

inline constexpr int kUnaryOpCount = 10;
inline constexpr int kBinaryOpCount = 5;

/// One symbol of the expression alphabet.
///
/// `code` holds the variable, operator or bound name depending on `kind`; for
/// `IcDerivative` it packs the derivative orders as `dx * 3 + dy`. `slot` is
/// the learnable-constant slot index and `value` the numeric literal value
/// (ignored for bound literals, which are resolved against a mesh).
struct Token {
  TokenKind kind = TokenKind::Literal;
  std::uint8_t code = 0;
  std::uint16_t slot = 0;
  double value = 0.0;

  static constexpr Token variable(Var v) { return {TokenKind::Variable, static_cast<std::uint8_t>(v), 0, 0.0}; }
  static constexpr Token ic() { return {TokenKind::IcFeature, 0, 0, 0.0}; }
  /// Derivative of the IC feature; 1 <= dx + dy <= 2.
  static Token ic_derivative(int dx, int dy);
  static constexpr Token literal(double v) { return {TokenKind::Literal, 0, 0, v}; }
  static constexpr Token bound(Bound b) { return {TokenKind::Literal, static_cast<std::uint8_t>(b), 0, 0.0}; }
  static constexpr Token learnable(std::uint16_t slot) { return {TokenKind::LearnableConst, 0, slot, 0.0}; }
  static constexpr Token unary(UnaryOp op) { return {TokenKind::Unary, static_cast<std::uint8_t>(op), 0, 0.0}; }
  static constexpr Token binary(BinaryOp op) { return {TokenKind::Binary, static_cast<std::uint8_t>(op), 0, 0.0}; }

  constexpr int arity() const {
    switch (kind) {
      case TokenKind::Unary: return 1;
      case TokenKind::Binary: return 2;
      default: return 0;
    }
  }
  constexpr bool is_leaf() const { return arity() == 0; }

  constexpr Var var() const { return static_cast<Var>(code); }
  constexpr UnaryOp unary_op() const { return static_cast<UnaryOp>(code); }
  constexpr BinaryOp binary_op() const { return static_cast<BinaryOp>(code); }
  constexpr Bound bound_name() const { return static_cast<Bound>(code); }
  constexpr int dx_order() const { return kind == TokenKind::IcDerivative ? code / 3 : 0; }
  constexpr int dy_order() const { return kind == TokenKind::IcDerivative ? code % 3 : 0; }

  /// True for an unnamed numeric literal equal to `v` (the in-situ simplification test).
  constexpr bool is_number(double v) const {
    return kind == TokenKind::Literal && code == 0 && value == v;
  }
  constexpr bool is_number() const { return kind == TokenKind::Literal && code == 0; }

  friend constexpr bool operator==(const Token&, const Token&) = default;
};

/// Canonical text spelling (see README for the token table).
std::string spelling(const Token& tok);

/// Shortest decimal text that round-trips `v`.
std::string format_number(double v);

enum class ParseMode {
  SearchAlphabet,  ///< Only the fixed token spellings.
  Free,            ///< Additionally decimal literals and the I_x .. I_yy family.
};

/// Parses one token spelling; std::nullopt for unknown text.
std::optional<Token> parse_token(std::string_view text, ParseMode mode);

std::string_view to_string(Var v);
std::optional<Var> parse_var(std::string_view text);

}  // namespace padesr
