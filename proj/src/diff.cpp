#include "padesr/diff.hpp"

#include <algorithm>
#include <cmath>

#include "padesr/eval.hpp"

namespace padesr {

namespace {

// Emits expressions into a flat buffer with in-situ simplification.
// Operands are written in the same order for both notations; only the
// operator position differs (before them for prefix, after them for postfix).
class Emitter {
 public:
  Emitter(std::span<const Token> src, std::span<const std::size_t> ext, Notation n, std::vector<Token>& out,
          std::size_t max_tokens, bool fold)
      : src_(src), ext_(ext), n_(n), out_(out), max_(max_tokens), fold_(fold) {}

  void num(double v) { push(Token::literal(v)); }

  void copy(Span s) {
    check(out_.size() + s.size());
    out_.insert(out_.end(), src_.begin() + static_cast<std::ptrdiff_t>(s.begin),
                src_.begin() + static_cast<std::ptrdiff_t>(s.end));
  }

  template <class A>
  void unary(UnaryOp op, A&& emit_a) {
    const std::size_t p = out_.size();
    if (n_ == Notation::Prefix) push(Token::unary(op));
    const std::size_t a0 = out_.size();
    emit_a();
    const std::size_t a1 = out_.size();
    if (n_ == Notation::Postfix) push(Token::unary(op));
    if (op == UnaryOp::Neg && is_num(a0, a1, 0.0)) return set_num(p, 0.0);
    if (fold_ && a1 - a0 == 1 && out_[a0].is_number()) {
      const double v = apply_unary(op, out_[a0].value);
      if (std::isfinite(v)) set_num(p, v);
    }
  }

  template <class A, class B>
  void binary(BinaryOp op, A&& emit_a, B&& emit_b) {
    const std::size_t p = out_.size();
    if (n_ == Notation::Prefix) push(Token::binary(op));
    const std::size_t a0 = out_.size();
    emit_a();
    const std::size_t a1 = out_.size();
    emit_b();
    const std::size_t b1 = out_.size();
    if (n_ == Notation::Postfix) push(Token::binary(op));

    switch (op) {
      case BinaryOp::Mul:
        if (is_num(a0, a1, 0.0) || is_num(a1, b1, 0.0)) return set_num(p, 0.0);
        if (is_num(a0, a1, 1.0)) return keep(p, a1, b1);
        if (is_num(a1, b1, 1.0)) return keep(p, a0, a1);
        break;
      case BinaryOp::Add:
        if (is_num(a0, a1, 0.0)) return keep(p, a1, b1);
        if (is_num(a1, b1, 0.0)) return keep(p, a0, a1);
        break;
      case BinaryOp::Sub:
        if (is_num(a1, b1, 0.0)) return keep(p, a0, a1);
        break;
      case BinaryOp::Div:
        if (is_num(a0, a1, 0.0)) return set_num(p, 0.0);
        if (is_num(a1, b1, 1.0)) return keep(p, a0, a1);
        break;
      case BinaryOp::Pow:
        if (is_num(a1, b1, 1.0)) return keep(p, a0, a1);
        if (is_num(a1, b1, 0.0) || is_num(a0, a1, 1.0)) return set_num(p, 1.0);
        break;
    }
    if (fold_ && a1 - a0 == 1 && b1 - a1 == 1 && out_[a0].is_number() && out_[a1].is_number()) {
      const double v = apply_binary(op, out_[a0].value, out_[a1].value);
      if (std::isfinite(v)) set_num(p, v);
    }
  }

  void derive(Span s, Var v);
  void rebuild(Span s);

 private:
  void check(std::size_t n) const {
    if (n > max_) throw DerivativeTooLarge("derivative exceeds " + std::to_string(max_) + " tokens");
  }
  void push(const Token& t) {
    check(out_.size() + 1);
    out_.push_back(t);
  }
  bool is_num(std::size_t b, std::size_t e, double v) const { return e - b == 1 && out_[b].is_number(v); }
  void set_num(std::size_t p, double v) {
    out_.resize(p);
    out_.push_back(Token::literal(v));
  }
  // Replaces everything from p on with the range [b, e), which lies inside it.
  void keep(std::size_t p, std::size_t b, std::size_t e) {
    std::copy(out_.begin() + static_cast<std::ptrdiff_t>(b), out_.begin() + static_cast<std::ptrdiff_t>(e),
              out_.begin() + static_cast<std::ptrdiff_t>(p));
    out_.resize(p + (e - b));
  }

  std::span<const Token> src_;
  std::span<const std::size_t> ext_;
  Notation n_;
  std::vector<Token>& out_;
  std::size_t max_;
  bool fold_;
};

void Emitter::derive(Span s, Var v) {
  const Token& r = src_[span_root(s, n_)];
  if (r.is_leaf()) {
    switch (r.kind) {
      case TokenKind::Variable:
        return num(r.var() == v ? 1.0 : 0.0);
      case TokenKind::IcFeature:
      case TokenKind::IcDerivative: {
        if (v == Var::T) return num(0.0);
        const int dx = r.dx_order() + (v == Var::X ? 1 : 0);
        const int dy = r.dy_order() + (v == Var::Y ? 1 : 0);
        if (dx + dy > 2)
          throw UnsupportedOrder("derivative of " + spelling(r) + " with respect to " +
                                 std::string(to_string(v)) + " needs an IC derivative of order 3");
        return push(Token::ic_derivative(dx, dy));
      }
      default:
        return num(0.0);
    }
  }

  Span ch[2];
  child_spans(src_, ext_, n_, s, ch);
  const Span u = ch[0];
  auto cu = [&] { copy(u); };
  auto du = [&] { derive(u, v); };

  if (r.kind == TokenKind::Unary) {
    switch (r.unary_op()) {
      case UnaryOp::Neg:
        return unary(UnaryOp::Neg, du);
      case UnaryOp::Log:
        return binary(BinaryOp::Div, du, cu);
      case UnaryOp::Exp:
        return binary(BinaryOp::Mul, [&] { unary(UnaryOp::Exp, cu); }, du);
      case UnaryOp::Cos:
        return binary(BinaryOp::Mul, [&] { unary(UnaryOp::Neg, [&] { unary(UnaryOp::Sin, cu); }); }, du);
      case UnaryOp::Sin:
        return binary(BinaryOp::Mul, [&] { unary(UnaryOp::Cos, cu); }, du);
      case UnaryOp::Sqrt:
        return binary(BinaryOp::Div, du, [&] {
          binary(BinaryOp::Mul, [&] { num(2.0); }, [&] { unary(UnaryOp::Sqrt, cu); });
        });
      case UnaryOp::Asin:
      case UnaryOp::Acos: {
        // u' / sqrt(1 - u^2), negated for acos
        auto body = [&] {
          binary(BinaryOp::Div, du, [&] {
            unary(UnaryOp::Sqrt, [&] {
              binary(BinaryOp::Sub, [&] { num(1.0); },
                     [&] { binary(BinaryOp::Pow, cu, [&] { num(2.0); }); });
            });
          });
        };
        if (r.unary_op() == UnaryOp::Asin) return body();
        return unary(UnaryOp::Neg, body);
      }
      case UnaryOp::Tanh:
        return binary(BinaryOp::Mul, [&] {
          binary(BinaryOp::Sub, [&] { num(1.0); }, [&] {
            binary(BinaryOp::Pow, [&] { unary(UnaryOp::Tanh, cu); }, [&] { num(2.0); });
          });
        }, du);
      case UnaryOp::Sech:
        return binary(BinaryOp::Mul, [&] {
          unary(UnaryOp::Neg, [&] {
            binary(BinaryOp::Mul, [&] { unary(UnaryOp::Sech, cu); }, [&] { unary(UnaryOp::Tanh, cu); });
          });
        }, du);
    }
    return;
  }

  const Span w = ch[1];
  auto cw = [&] { copy(w); };
  auto dw = [&] { derive(w, v); };
  switch (r.binary_op()) {
    case BinaryOp::Add:
      return binary(BinaryOp::Add, du, dw);
    case BinaryOp::Sub:
      return binary(BinaryOp::Sub, du, dw);
    case BinaryOp::Mul:
      return binary(BinaryOp::Add, [&] { binary(BinaryOp::Mul, du, cw); },
                    [&] { binary(BinaryOp::Mul, cu, dw); });
    case BinaryOp::Div:
      return binary(BinaryOp::Div, [&] {
        binary(BinaryOp::Sub, [&] { binary(BinaryOp::Mul, du, cw); }, [&] { binary(BinaryOp::Mul, cu, dw); });
      }, [&] { binary(BinaryOp::Mul, cw, cw); });
    case BinaryOp::Pow:
      // f^g * (g' * log f + g * f' / f)
      return binary(BinaryOp::Mul, [&] { copy(s); }, [&] {
        binary(BinaryOp::Add, [&] { binary(BinaryOp::Mul, dw, [&] { unary(UnaryOp::Log, cu); }); },
               [&] { binary(BinaryOp::Mul, cw, [&] { binary(BinaryOp::Div, du, cu); }); });
      });
  }
}

void Emitter::rebuild(Span s) {
  const Token& r = src_[span_root(s, n_)];
  if (r.is_leaf()) return push(r);
  Span ch[2];
  child_spans(src_, ext_, n_, s, ch);
  if (r.kind == TokenKind::Unary) return unary(r.unary_op(), [&] { rebuild(ch[0]); });
  binary(r.binary_op(), [&] { rebuild(ch[0]); }, [&] { rebuild(ch[1]); });
}

}  // namespace

void differentiate_into(std::span<const Token> in, Notation n, Var v, DiffScratch& scratch, std::vector<Token>& out,
                        std::size_t max_tokens) {
  subtree_extents(in, n, scratch.extents);
  out.clear();
  Emitter em(in, scratch.extents, n, out, max_tokens, true);
  em.derive({0, in.size()}, v);
}

void second_derivative_into(std::span<const Token> in, Notation n, Var v, DiffScratch& scratch,
                            std::vector<Token>& out, std::size_t max_tokens) {
  differentiate_into(in, n, v, scratch, scratch.first, max_tokens);
  differentiate_into(scratch.first, n, v, scratch, out, max_tokens);
}

Expr differentiate(const Expr& e, Var v) {
  DiffScratch scratch;
  std::vector<Token> out;
  differentiate_into(e.tokens(), e.notation(), v, scratch, out);
  return Expr(e.notation(), std::move(out));
}

Expr second_derivative(const Expr& e, Var v) {
  DiffScratch scratch;
  std::vector<Token> out;
  second_derivative_into(e.tokens(), e.notation(), v, scratch, out);
  return Expr(e.notation(), std::move(out));
}

Expr simplify(const Expr& e) {
  std::vector<Token> cur = e.tokens();
  std::vector<Token> next;
  std::vector<std::size_t> ext;
  for (;;) {
    subtree_extents(cur, e.notation(), ext);
    next.clear();
    Emitter em(cur, ext, e.notation(), next, kNoTokenLimit, true);
    em.rebuild({0, cur.size()});
    if (next == cur) break;
    cur.swap(next);
  }
  canonicalize_slots(cur);
  return Expr(e.notation(), std::move(cur), std::max(e.budget(), 0));
}

}  // namespace padesr
