#include "padesr/eval.hpp"

#include <algorithm>
#include <stdexcept>

namespace padesr {

double Bounds::value(Bound b) const {
  switch (b) {
    case Bound::XMin: return x_lo;
    case Bound::XMax: return x_hi;
    case Bound::YMin: return y_lo;
    case Bound::YMax: return y_hi;
    case Bound::TMin: return t_lo;
    case Bound::TMax: return t_hi;
    case Bound::None: break;
  }
  throw std::invalid_argument("not a bound literal");
}

std::string_view to_string(Arithmetic a) { return a == Arithmetic::Strict ? "strict" : "ieee"; }

Arithmetic parse_arithmetic(std::string_view text) {
  if (text == "strict") return Arithmetic::Strict;
  if (text == "ieee") return Arithmetic::Ieee;
  throw std::invalid_argument("unknown arithmetic '" + std::string(text) + "' (strict or ieee)");
}

int ic_slot(const Token& t) {
  if (t.kind == TokenKind::IcFeature) return kIc;
  switch (t.code) {
    case 3: return kIcX;
    case 1: return kIcY;
    case 6: return kIcXX;
    case 4: return kIcXY;
    case 2: return kIcYY;
  }
  throw std::invalid_argument("bad IC derivative token");
}

namespace {

// Any non-finite result is a domain fault and becomes NaN, so faults stay sticky
// (inf would otherwise be rescued by 1/inf or 2^-inf).
inline double checked(double r) { return std::isfinite(r) ? r : std::nan(""); }

double raw_pow(double a, double b) {
  if (std::isnan(a) || std::isnan(b)) return std::nan("");  // pow(1, nan) and pow(nan, 0) are 1
  return std::pow(a, b);
}

double raw_unary(UnaryOp op, double v) {
  switch (op) {
    case UnaryOp::Neg: return -v;
    case UnaryOp::Log: return std::log(v);
    case UnaryOp::Exp: return std::exp(v);
    case UnaryOp::Cos: return std::cos(v);
    case UnaryOp::Sin: return std::sin(v);
    case UnaryOp::Sqrt: return std::sqrt(v);
    case UnaryOp::Asin: return std::asin(v);
    case UnaryOp::Acos: return std::acos(v);
    case UnaryOp::Tanh: return std::tanh(v);
    case UnaryOp::Sech: return sech(v);
  }
  return std::nan("");
}

double raw_binary(BinaryOp op, double a, double b) {
  switch (op) {
    case BinaryOp::Add: return a + b;
    case BinaryOp::Sub: return a - b;
    case BinaryOp::Mul: return a * b;
    case BinaryOp::Div: return a / b;
    case BinaryOp::Pow: return raw_pow(a, b);
  }
  return std::nan("");
}

}  // namespace

double apply_unary(UnaryOp op, double v) { return checked(raw_unary(op, v)); }

double apply_binary(BinaryOp op, double a, double b) { return checked(raw_binary(op, a, b)); }

namespace {

double leaf_scalar(const Token& t, const Bounds& bounds, std::span<const double> consts) {
  if (t.kind == TokenKind::LearnableConst) {
    if (t.slot >= consts.size())
      throw std::invalid_argument("no value for learnable constant slot " + std::to_string(t.slot));
    return consts[t.slot];
  }
  return t.bound_name() == Bound::None ? t.value : bounds.value(t.bound_name());
}

const std::vector<double>* leaf_grid(const Token& t, const PointSet& p) {
  switch (t.kind) {
    case TokenKind::Variable:
      return t.var() == Var::X ? &p.x : t.var() == Var::Y ? &p.y : &p.t;
    case TokenKind::IcFeature:
    case TokenKind::IcDerivative:
      return &p.ic[ic_slot(t)];
    default:
      return nullptr;
  }
}

template <bool Strict, class F>
void map1(std::vector<double>& a, F f) {
  if constexpr (Strict)
    for (double& v : a) v = checked(f(v));
  else
    for (double& v : a) v = f(v);
}

template <bool S>
void unary_grid(UnaryOp op, std::vector<double>& a) {
  switch (op) {
    case UnaryOp::Neg: map1<S>(a, [](double v) { return -v; }); break;
    case UnaryOp::Log: map1<S>(a, [](double v) { return std::log(v); }); break;
    case UnaryOp::Exp: map1<S>(a, [](double v) { return std::exp(v); }); break;
    case UnaryOp::Cos: map1<S>(a, [](double v) { return std::cos(v); }); break;
    case UnaryOp::Sin: map1<S>(a, [](double v) { return std::sin(v); }); break;
    case UnaryOp::Sqrt: map1<S>(a, [](double v) { return std::sqrt(v); }); break;
    case UnaryOp::Asin: map1<S>(a, [](double v) { return std::asin(v); }); break;
    case UnaryOp::Acos: map1<S>(a, [](double v) { return std::acos(v); }); break;
    case UnaryOp::Tanh: map1<S>(a, [](double v) { return std::tanh(v); }); break;
    case UnaryOp::Sech: map1<S>(a, [](double v) { return sech(v); }); break;
  }
}

// dst[i] = lhs[i] op rhs[i]; dst aliases one of the operands.
template <bool Strict, class F>
void map2(double* dst, const double* lhs, const double* rhs, std::size_t n, F f) {
  if constexpr (Strict)
    for (std::size_t i = 0; i < n; ++i) dst[i] = checked(f(lhs[i], rhs[i]));
  else
    for (std::size_t i = 0; i < n; ++i) dst[i] = f(lhs[i], rhs[i]);
}

template <bool S>
void binary_grid(BinaryOp op, double* dst, const double* lhs, const double* rhs, std::size_t n) {
  switch (op) {
    case BinaryOp::Add: map2<S>(dst, lhs, rhs, n, [](double a, double b) { return a + b; }); break;
    case BinaryOp::Sub: map2<S>(dst, lhs, rhs, n, [](double a, double b) { return a - b; }); break;
    case BinaryOp::Mul: map2<S>(dst, lhs, rhs, n, [](double a, double b) { return a * b; }); break;
    case BinaryOp::Div: map2<S>(dst, lhs, rhs, n, [](double a, double b) { return a / b; }); break;
    case BinaryOp::Pow:
      if constexpr (S)
        map2<S>(dst, lhs, rhs, n, raw_pow);
      else
        map2<S>(dst, lhs, rhs, n, [](double a, double b) { return std::pow(a, b); });
      break;
  }
}

}  // namespace

bool Evaluator::evaluate(std::span<const Token> tokens, Notation n, const PointSet& points,
                         std::span<const double> consts, std::vector<double>& out) {
  const std::size_t m = points.size();
  const bool strict = arithmetic_ == Arithmetic::Strict;
  std::size_t sp = 0;
  auto step = [&](const Token& tok) {
    switch (tok.arity()) {
      case 0: {
        if (sp == pool_.size()) pool_.emplace_back();
        auto& buf = pool_[sp++];
        if (const auto* g = leaf_grid(tok, points)) {
          buf.assign(g->begin(), g->end());
        } else {
          buf.assign(m, leaf_scalar(tok, points.bounds, consts));
        }
        break;
      }
      case 1:
        if (sp < 1) throw StructureError("operand stack underflow");
        if (strict)
          unary_grid<true>(tok.unary_op(), pool_[sp - 1]);
        else
          unary_grid<false>(tok.unary_op(), pool_[sp - 1]);
        break;
      default: {
        if (sp < 2) throw StructureError("operand stack underflow");
        auto& lower = pool_[sp - 2];
        auto& upper = pool_[sp - 1];
        // Postfix: upper is the right operand. Prefix is scanned backwards, so upper is the left one.
        const double* lhs = n == Notation::Postfix ? lower.data() : upper.data();
        const double* rhs = n == Notation::Postfix ? upper.data() : lower.data();
        if (strict)
          binary_grid<true>(tok.binary_op(), lower.data(), lhs, rhs, m);
        else
          binary_grid<false>(tok.binary_op(), lower.data(), lhs, rhs, m);
        --sp;
      }
    }
  };
  if (n == Notation::Postfix)
    for (const Token& t : tokens) step(t);
  else
    for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) step(*it);
  if (sp != 1) throw StructureError("incomplete expression");
  out.assign(pool_[0].begin(), pool_[0].end());
  return !std::all_of(out.begin(), out.end(), [](double v) { return std::isfinite(v); });
}

Grid Evaluator::evaluate(const Expr& e, const PointSet& points, std::span<const double> consts) {
  Grid g;
  g.fault = evaluate(e.tokens(), e.notation(), points, consts, g.values);
  return g;
}

Grid eval_grid(const Expr& e, const PointSet& points, std::span<const double> consts, Arithmetic arithmetic) {
  Evaluator ev(arithmetic);
  return ev.evaluate(e, points, consts);
}

double eval_point(const Expr& e, double x, double y, double t, const std::array<double, kIcCount>& ic,
                  const Bounds& bounds, std::span<const double> consts) {
  std::vector<double> stack;
  stack.reserve(static_cast<std::size_t>(e.depth()) + 2);
  auto step = [&](const Token& tok) {
    switch (tok.kind) {
      case TokenKind::Variable:
        stack.push_back(tok.var() == Var::X ? x : tok.var() == Var::Y ? y : t);
        break;
      case TokenKind::IcFeature:
      case TokenKind::IcDerivative:
        stack.push_back(ic[ic_slot(tok)]);
        break;
      case TokenKind::Literal:
      case TokenKind::LearnableConst:
        stack.push_back(leaf_scalar(tok, bounds, consts));
        break;
      case TokenKind::Unary:
        stack.back() = apply_unary(tok.unary_op(), stack.back());
        break;
      case TokenKind::Binary: {
        const double upper = stack.back();
        stack.pop_back();
        const double lower = stack.back();
        stack.back() = e.notation() == Notation::Postfix ? apply_binary(tok.binary_op(), lower, upper)
                                                         : apply_binary(tok.binary_op(), upper, lower);
      }
    }
  };
  const auto& toks = e.tokens();
  if (e.notation() == Notation::Postfix)
    for (const Token& tk : toks) step(tk);
  else
    for (auto it = toks.rbegin(); it != toks.rend(); ++it) step(*it);
  return stack.back();
}

}  // namespace padesr
