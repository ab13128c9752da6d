// Independent reference implementations used only by the tests.
#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "padesr/eval.hpp"
#include "padesr/expr.hpp"
#include "padesr/pde.hpp"

namespace oracle {

// Number of expression trees of depth <= n over L leaves, U unaries and B binaries.
inline std::uint64_t count_trees(int n, std::uint64_t L, std::uint64_t U, std::uint64_t B) {
  if (n < 0) return 0;
  if (n == 0) return L;
  const std::uint64_t sub = count_trees(n - 1, L, U, B);
  return L + U * sub + B * sub * sub;
}

// Recursive-descent depth of a prefix token list; throws on malformed input.
inline int prefix_depth(const std::vector<padesr::Token>& t, std::size_t& pos) {
  if (pos >= t.size()) throw std::runtime_error("truncated");
  const int a = t[pos++].arity();
  int d = 0;
  for (int c = 0; c < a; ++c) d = std::max(d, prefix_depth(t, pos) + 1);
  return d;
}

inline int depth_of(const padesr::Expr& e) {
  std::vector<padesr::Token> t = e.tokens();
  if (e.notation() == padesr::Notation::Postfix) {
    // reversed postfix is prefix with mirrored operands
    std::reverse(t.begin(), t.end());
  }
  std::size_t pos = 0;
  const int d = prefix_depth(t, pos);
  if (pos != t.size()) throw std::runtime_error("trailing tokens");
  return d;
}

// Reads the fully parenthesised infix produced by render_infix back into prefix spellings.
class InfixReader {
 public:
  explicit InfixReader(std::string s) : s_(std::move(s)) {}

  std::vector<std::string> read() {
    std::vector<std::string> out;
    expr(out);
    if (i_ != s_.size()) throw std::runtime_error("trailing text at " + std::to_string(i_));
    return out;
  }

 private:
  static bool is_op(char c) { return c == '+' || c == '-' || c == '*' || c == '/' || c == '^'; }

  void expr(std::vector<std::string>& out) {
    if (s_[i_] == '(') {
      ++i_;
      if (s_[i_] == '-' && (s_[i_ + 1] == '(' || std::isalpha(static_cast<unsigned char>(s_[i_ + 1])))) {
        // unary minus "(-e)"; a negative number literal is handled as an atom below
        ++i_;
        out.push_back("~");
        expr(out);
        expect(')');
        return;
      }
      std::vector<std::string> lhs, rhs;
      expr(lhs);
      if (s_[i_] == ')' && lhs.size() == 1 && lhs[0].size() > 1 && lhs[0][0] == '-') {
        // "(-2)" is unary minus applied to the literal 2
        ++i_;
        out.push_back("~");
        out.push_back(lhs[0].substr(1));
        return;
      }
      const char op = s_[i_++];
      if (!is_op(op)) throw std::runtime_error("expected operator");
      expr(rhs);
      expect(')');
      out.push_back(std::string(1, op));
      out.insert(out.end(), lhs.begin(), lhs.end());
      out.insert(out.end(), rhs.begin(), rhs.end());
      return;
    }
    std::string word;
    if (s_[i_] == '-') word += s_[i_++];  // signed number
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '.' ||
                              ((s_[i_] == '-' || s_[i_] == '+') && !word.empty() && (word.back() == 'e'))))
      word += s_[i_++];
    if (i_ < s_.size() && s_[i_] == '(') {
      ++i_;
      out.push_back(word);
      expr(out);
      expect(')');
      return;
    }
    out.push_back(word);
  }

  void expect(char c) {
    if (i_ >= s_.size() || s_[i_] != c) throw std::runtime_error(std::string("expected ") + c);
    ++i_;
  }

  std::string s_;
  std::size_t i_ = 0;
};

// Point set whose coordinates are `base` shifted by h along v, with the IC family
// recomputed analytically at the shifted coordinates.
inline padesr::PointSet shifted(const padesr::PointSet& base, const padesr::PdeCase& pde, padesr::Var v, double h) {
  padesr::PointSet p = base;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (v == padesr::Var::X) p.x[i] += h;
    if (v == padesr::Var::Y) p.y[i] += h;
    if (v == padesr::Var::T) p.t[i] += h;
    const auto ic = pde.ic(p.x[i], p.y[i]);
    for (int s = 0; s < padesr::kIcCount; ++s) p.ic[s][i] = ic[s];
  }
  return p;
}

}  // namespace oracle
