#include "padesr/token.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace padesr {

namespace {

constexpr std::array<std::string_view, kUnaryOpCount> kUnaryNames = {
    "~", "log", "exp", "cos", "sin", "sqrt", "asin", "acos", "tanh", "sech"};
constexpr std::array<std::string_view, kBinaryOpCount> kBinaryNames = {"+", "-", "*", "/", "^"};
constexpr std::array<std::string_view, 7> kBoundNames = {
    "", "x_min", "x_max", "y_min", "y_max", "t_min", "t_max"};

// index = dx * 3 + dy
constexpr std::array<std::string_view, 9> kIcNames = {
    "I", "I_y", "I_yy", "I_x", "I_xy", "", "I_xx", "", ""};

bool is_decimal(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
  }
  if (digits == 0) return false;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t exp_digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++exp_digits;
    if (exp_digits == 0) return false;
  }
  return i == s.size();
}

}  // namespace

Token Token::ic_derivative(int dx, int dy) {
  if (dx < 0 || dy < 0 || dx + dy > 2) throw std::invalid_argument("IC derivative order must be at most 2");
  if (dx == 0 && dy == 0) return ic();
  return {TokenKind::IcDerivative, static_cast<std::uint8_t>(dx * 3 + dy), 0, 0.0};
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string spelling(const Token& tok) {
  switch (tok.kind) {
    case TokenKind::Variable: return std::string(to_string(tok.var()));
    case TokenKind::IcFeature: return "I";
    case TokenKind::IcDerivative: return std::string(kIcNames[tok.code]);
    case TokenKind::Literal:
      if (tok.bound_name() != Bound::None) return std::string(kBoundNames[tok.code]);
      return format_number(tok.value);
    case TokenKind::LearnableConst: return "C";
    case TokenKind::Unary: return std::string(kUnaryNames[tok.code]);
    case TokenKind::Binary: return std::string(kBinaryNames[tok.code]);
  }
  return "?";
}

std::string_view to_string(Var v) {
  switch (v) {
    case Var::X: return "x";
    case Var::Y: return "y";
    case Var::T: return "t";
  }
  return "?";
}

std::optional<Var> parse_var(std::string_view text) {
  if (text == "x") return Var::X;
  if (text == "y") return Var::Y;
  if (text == "t") return Var::T;
  return std::nullopt;
}

std::optional<Token> parse_token(std::string_view text, ParseMode mode) {
  if (auto v = parse_var(text)) return Token::variable(*v);
  if (text == "I") return Token::ic();
  if (text == "C") return Token::learnable(0);
  if (text == "0") return Token::literal(0.0);
  if (text == "1") return Token::literal(1.0);
  if (text == "2") return Token::literal(2.0);
  if (text == "4") return Token::literal(4.0);
  for (std::size_t i = 1; i < kBoundNames.size(); ++i)
    if (text == kBoundNames[i]) return Token::bound(static_cast<Bound>(i));
  for (std::size_t i = 0; i < kUnaryNames.size(); ++i)
    if (text == kUnaryNames[i]) return Token::unary(static_cast<UnaryOp>(i));
  for (std::size_t i = 0; i < kBinaryNames.size(); ++i)
    if (text == kBinaryNames[i]) return Token::binary(static_cast<BinaryOp>(i));
  if (mode != ParseMode::Free) return std::nullopt;
  for (std::size_t i = 1; i < kIcNames.size(); ++i)
    if (!kIcNames[i].empty() && text == kIcNames[i])
      return Token{TokenKind::IcDerivative, static_cast<std::uint8_t>(i), 0, 0.0};
  if (is_decimal(text)) {
    std::string s(text);
    double v = std::strtod(s.c_str(), nullptr);
    if (!std::isfinite(v)) return std::nullopt;
    return Token::literal(v);
  }
  return std::nullopt;
}

}  // namespace padesr
