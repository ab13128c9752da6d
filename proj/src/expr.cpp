#include "padesr/expr.hpp"

#include <algorithm>
#include <sstream>

namespace padesr {

std::string_view to_string(Notation n) { return n == Notation::Prefix ? "prefix" : "postfix"; }

Notation parse_notation(std::string_view text) {
  if (text == "prefix") return Notation::Prefix;
  if (text == "postfix") return Notation::Postfix;
  throw std::invalid_argument("unknown notation '" + std::string(text) + "'");
}

namespace {

// Postfix-style depth scan. Prefix callers pass reverse iterators.
template <class It>
int scan_depth(It first, It last, const char* underflow_msg) {
  std::vector<int> stack;
  stack.reserve(32);
  for (It it = first; it != last; ++it) {
    const int a = it->arity();
    if (static_cast<int>(stack.size()) < a) throw StructureError(underflow_msg);
    if (a == 0) {
      stack.push_back(0);
    } else if (a == 1) {
      stack.back() += 1;
    } else {
      const int r = stack.back();
      stack.pop_back();
      stack.back() = std::max(stack.back(), r) + 1;
    }
  }
  if (stack.empty()) throw StructureError("empty expression");
  if (stack.size() != 1) throw StructureError("incomplete expression: " + std::to_string(stack.size()) + " operands left");
  return stack.back();
}

}  // namespace

int sequence_depth(std::span<const Token> tokens, Notation n) {
  if (n == Notation::Postfix) return scan_depth(tokens.begin(), tokens.end(), "operand stack underflow");
  // Prefix read right to left is postfix with mirrored operands; the depth is the same.
  // Checking the prefix counter left to right gives the better error message.
  long need = 1;
  for (const Token& t : tokens) {
    if (need <= 0) throw StructureError("trailing tokens after a complete expression");
    need += t.arity() - 1;
  }
  if (tokens.empty()) throw StructureError("empty expression");
  if (need != 0) throw StructureError("incomplete expression: " + std::to_string(need) + " operands missing");
  return scan_depth(tokens.rbegin(), tokens.rend(), "operand stack underflow");
}

void subtree_extents(std::span<const Token> tokens, Notation n, std::vector<std::size_t>& out) {
  const std::size_t len = tokens.size();
  out.resize(len);
  thread_local std::vector<std::size_t> stack;
  stack.clear();
  if (n == Notation::Prefix) {
    for (std::size_t k = len; k-- > 0;) {
      const int a = tokens[k].arity();
      std::size_t end = k + 1;
      if (a == 1) {
        end = stack.back();
        stack.pop_back();
      } else if (a == 2) {
        stack.pop_back();  // first operand
        end = stack.back();
        stack.pop_back();
      }
      out[k] = end;
      stack.push_back(end);
    }
  } else {
    for (std::size_t k = 0; k < len; ++k) {
      const int a = tokens[k].arity();
      std::size_t start = k;
      if (a == 1) {
        start = stack.back();
        stack.pop_back();
      } else if (a == 2) {
        stack.pop_back();  // second operand
        start = stack.back();
        stack.pop_back();
      }
      out[k] = start;
      stack.push_back(start);
    }
  }
}

Span subtree_span(std::span<const std::size_t> extents, Notation n, std::size_t i) {
  return n == Notation::Prefix ? Span{i, extents[i]} : Span{extents[i], i + 1};
}

void child_spans(std::span<const Token> tokens, std::span<const std::size_t> extents, Notation n,
                 Span node, Span* children) {
  const std::size_t root = span_root(node, n);
  const int a = tokens[root].arity();
  if (n == Notation::Prefix) {
    if (a >= 1) children[0] = {root + 1, extents[root + 1]};
    if (a == 2) children[1] = {children[0].end, node.end};
  } else {
    if (a == 1) children[0] = {node.begin, root};
    if (a == 2) {
      children[1] = {extents[root - 1], root};
      children[0] = {node.begin, children[1].begin};
    }
  }
}

void node_levels(std::span<const Token> tokens, Notation n, std::vector<int>& level, std::vector<int>& height) {
  const std::size_t len = tokens.size();
  level.assign(len, 0);
  height.assign(len, 0);
  std::vector<int> slots;  // levels of open operand slots
  std::vector<int> stack;  // subtree heights
  auto visit_down = [&](std::size_t k) {
    const int lv = slots.empty() ? 0 : slots.back();
    if (!slots.empty()) slots.pop_back();
    level[k] = lv;
    for (int c = 0; c < tokens[k].arity(); ++c) slots.push_back(lv + 1);
  };
  auto visit_up = [&](std::size_t k) {
    const int a = tokens[k].arity();
    int h = 0;
    if (a == 1) {
      h = stack.back() + 1;
      stack.pop_back();
    } else if (a == 2) {
      h = std::max(stack[stack.size() - 1], stack[stack.size() - 2]) + 1;
      stack.resize(stack.size() - 2);
    }
    height[k] = h;
    stack.push_back(h);
  };
  if (n == Notation::Prefix) {
    for (std::size_t k = 0; k < len; ++k) visit_down(k);
    for (std::size_t k = len; k-- > 0;) visit_up(k);
  } else {
    for (std::size_t k = len; k-- > 0;) visit_down(k);
    for (std::size_t k = 0; k < len; ++k) visit_up(k);
  }
}

Expr::Expr(Notation notation, std::vector<Token> tokens)
    : notation_(notation), tokens_(std::move(tokens)) {
  depth_ = sequence_depth(tokens_, notation_);
  budget_ = depth_;
}

Expr::Expr(Notation notation, std::vector<Token> tokens, int budget)
    : notation_(notation), tokens_(std::move(tokens)), budget_(budget) {
  depth_ = sequence_depth(tokens_, notation_);
  if (depth_ > budget_)
    throw StructureError("depth " + std::to_string(depth_) + " exceeds budget " + std::to_string(budget_));
}

Expr Expr::parse(std::string_view text, Notation notation, ParseMode mode, const Bindings& bindings) {
  std::vector<Token> tokens;
  std::istringstream in{std::string(text)};
  std::string word;
  std::size_t pos = 0;
  while (in >> word) {
    if (auto it = bindings.find(word); it != bindings.end()) {
      tokens.push_back(it->second);
    } else if (auto tok = parse_token(word, mode)) {
      tokens.push_back(*tok);
    } else if (mode == ParseMode::Free && word == "y_0") {
      throw ParseError("token 'y_0' at position " + std::to_string(pos) + " has no binding (use --bind y_0=<value>)", pos);
    } else {
      throw ParseError("unknown token '" + word + "' at position " + std::to_string(pos), pos);
    }
    ++pos;
  }
  canonicalize_slots(tokens);
  return Expr(notation, std::move(tokens));
}

std::size_t Expr::slot_count() const {
  return static_cast<std::size_t>(std::count_if(tokens_.begin(), tokens_.end(), [](const Token& t) {
    return t.kind == TokenKind::LearnableConst;
  }));
}

std::string Expr::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (i) s += ' ';
    s += spelling(tokens_[i]);
  }
  return s;
}

std::string Expr::key() const {
  return std::string(padesr::to_string(notation_)) + ":" + to_string();
}

void canonicalize_slots(std::vector<Token>& tokens) {
  std::uint16_t next = 0;
  for (Token& t : tokens)
    if (t.kind == TokenKind::LearnableConst) t.slot = next++;
}

namespace {

void infix_rec(std::span<const Token> toks, std::span<const std::size_t> ext, Notation n, Span s, std::string& out) {
  const Token& root = toks[span_root(s, n)];
  Span ch[2];
  switch (root.arity()) {
    case 0:
      out += spelling(root);
      return;
    case 1:
      child_spans(toks, ext, n, s, ch);
      if (root.unary_op() == UnaryOp::Neg) {
        out += "(-";
        infix_rec(toks, ext, n, ch[0], out);
        out += ')';
      } else {
        out += spelling(root);
        out += '(';
        infix_rec(toks, ext, n, ch[0], out);
        out += ')';
      }
      return;
    default:
      child_spans(toks, ext, n, s, ch);
      out += '(';
      infix_rec(toks, ext, n, ch[0], out);
      out += spelling(root);
      infix_rec(toks, ext, n, ch[1], out);
      out += ')';
  }
}

void convert_rec(std::span<const Token> toks, std::span<const std::size_t> ext, Notation from, Span s,
                 std::vector<Token>& out) {
  const Token& root = toks[span_root(s, from)];
  Span ch[2];
  child_spans(toks, ext, from, s, ch);
  if (from == Notation::Postfix) out.push_back(root);
  for (int c = 0; c < root.arity(); ++c) convert_rec(toks, ext, from, ch[c], out);
  if (from == Notation::Prefix) out.push_back(root);
}

}  // namespace

std::string render_infix(const Expr& e) {
  std::vector<std::size_t> ext;
  subtree_extents(e.tokens(), e.notation(), ext);
  std::string out;
  infix_rec(e.tokens(), ext, e.notation(), {0, e.size()}, out);
  return out;
}

void convert_tokens(std::span<const Token> in, Notation from, std::vector<Token>& out) {
  std::vector<std::size_t> ext;
  subtree_extents(in, from, ext);
  out.clear();
  out.reserve(in.size());
  convert_rec(in, ext, from, {0, in.size()}, out);
}

Expr convert_notation(const Expr& e, Notation target) {
  if (target == e.notation()) return e;
  std::vector<Token> out;
  convert_tokens(e.tokens(), e.notation(), out);
  return Expr(target, std::move(out), e.budget());
}

}  // namespace padesr
