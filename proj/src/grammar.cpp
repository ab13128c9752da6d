#include "padesr/grammar.hpp"

#include <algorithm>

namespace padesr {

std::string_view to_string(TokenSet s) {
  switch (s) {
    case TokenSet::Vars: return "vars";
    case TokenSet::VarsConst: return "vars+const";
    case TokenSet::VarsConstOpt: return "vars+const+opt";
  }
  return "?";
}

TokenSet parse_token_set(std::string_view text) {
  if (text == "vars") return TokenSet::Vars;
  if (text == "vars+const") return TokenSet::VarsConst;
  if (text == "vars+const+opt") return TokenSet::VarsConstOpt;
  throw std::invalid_argument("unknown token set '" + std::string(text) + "'");
}

Alphabet Alphabet::standard(TokenSet set) {
  Alphabet a;
  a.leaves = {Token::variable(Var::X), Token::variable(Var::Y), Token::variable(Var::T), Token::ic()};
  if (set != TokenSet::Vars) {
    for (double v : {0.0, 1.0, 2.0, 4.0}) a.leaves.push_back(Token::literal(v));
    for (Bound b : {Bound::XMin, Bound::XMax, Bound::YMin, Bound::YMax, Bound::TMin, Bound::TMax})
      a.leaves.push_back(Token::bound(b));
  }
  if (set == TokenSet::VarsConstOpt) a.leaves.push_back(Token::learnable(0));
  for (int i = 0; i < kUnaryOpCount; ++i) a.unaries.push_back(Token::unary(static_cast<UnaryOp>(i)));
  for (int i = 0; i < kBinaryOpCount; ++i) a.binaries.push_back(Token::binary(static_cast<BinaryOp>(i)));
  return a;
}

Alphabet Alphabet::custom(std::vector<Token> leaves, std::vector<Token> unaries, std::vector<Token> binaries) {
  return Alphabet{std::move(leaves), std::move(unaries), std::move(binaries)};
}

GrammarState::GrammarState(Notation n, int budget) : notation_(n), budget_(budget) {
  if (budget < 0) throw std::invalid_argument("depth budget must be non-negative");
  stack_.reserve(static_cast<std::size_t>(budget) + 2);
  if (n == Notation::Prefix) stack_.push_back(0);  // the root slot
}

// Depth of the tree obtained by merging a stack whose top is `top` and whose
// next `below` entries are stack_[below-1], ..., stack_[0].
int GrammarState::fold_with(int top, std::size_t below) const {
  int cur = top;
  for (std::size_t k = below; k-- > 0;) cur = std::max(stack_[k], cur) + 1;
  return cur;
}

bool GrammarState::leaf_ok() const {
  if (notation_ == Notation::Prefix) return !stack_.empty();
  return fold_with(0, stack_.size()) <= budget_;
}

bool GrammarState::unary_ok() const {
  if (notation_ == Notation::Prefix) return !stack_.empty() && stack_.back() < budget_;
  if (stack_.empty()) return false;
  return fold_with(stack_.back() + 1, stack_.size() - 1) <= budget_;
}

bool GrammarState::binary_ok() const {
  if (notation_ == Notation::Prefix) return !stack_.empty() && stack_.back() < budget_;
  const std::size_t k = stack_.size();
  if (k < 2) return false;
  return fold_with(std::max(stack_[k - 1], stack_[k - 2]) + 1, k - 2) <= budget_;
}

bool GrammarState::complete() const {
  return notation_ == Notation::Prefix ? stack_.empty() : stack_.size() == 1;
}

void GrammarState::push(const Token& t) {
  const int a = t.arity();
  if (notation_ == Notation::Postfix && stack_.size() < static_cast<std::size_t>(a))
    throw StructureError("operand stack underflow at position " + std::to_string(length_));
  if (notation_ == Notation::Prefix && stack_.empty())
    throw StructureError("token after a complete expression at position " + std::to_string(length_));
  const bool ok = a == 0 ? leaf_ok() : a == 1 ? unary_ok() : binary_ok();
  if (!ok) throw StructureError("token '" + spelling(t) + "' is not legal at position " + std::to_string(length_));
  ++length_;
  if (notation_ == Notation::Prefix) {
    const int lv = stack_.back();
    stack_.pop_back();
    for (int c = 0; c < a; ++c) stack_.push_back(lv + 1);
    return;
  }
  if (a == 0) {
    stack_.push_back(0);
  } else if (a == 1) {
    stack_.back() += 1;
  } else {
    const int r = stack_.back();
    stack_.pop_back();
    stack_.back() = std::max(stack_.back(), r) + 1;
  }
}

void legal_tokens(const GrammarState& state, const Alphabet& alphabet, std::vector<Token>& out) {
  out.clear();
  if (state.leaf_ok()) out.insert(out.end(), alphabet.leaves.begin(), alphabet.leaves.end());
  if (state.unary_ok()) out.insert(out.end(), alphabet.unaries.begin(), alphabet.unaries.end());
  if (state.binary_ok()) out.insert(out.end(), alphabet.binaries.begin(), alphabet.binaries.end());
}

std::vector<Token> legal_tokens(std::span<const Token> partial, Notation n, int budget, const Alphabet& alphabet) {
  GrammarState st(n, budget);
  for (const Token& t : partial) {
    st.push(t);
  }
  std::vector<Token> out;
  legal_tokens(st, alphabet, out);
  return out;
}

void sample_tokens(Rng& rng, Notation n, int budget, const Alphabet& alphabet, std::vector<Token>& out) {
  GrammarState st(n, budget);
  std::vector<Token> legal;
  for (;;) {
    legal_tokens(st, alphabet, legal);
    const bool can_stop = st.complete();
    if (legal.empty()) break;  // complete prefix
    const std::size_t options = legal.size() + (can_stop ? 1 : 0);
    const std::size_t pick = std::uniform_int_distribution<std::size_t>(0, options - 1)(rng);
    if (pick == legal.size()) break;  // stop
    out.push_back(legal[pick]);
    st.push(legal[pick]);
  }
}

Expr sample_complete(Rng& rng, Notation n, int budget, const Alphabet& alphabet) {
  std::vector<Token> toks;
  sample_tokens(rng, n, budget, alphabet, toks);
  canonicalize_slots(toks);
  return Expr(n, std::move(toks), budget);
}

}  // namespace padesr
