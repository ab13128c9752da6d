#pragma once

#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "padesr/expr.hpp"

namespace padesr {

using Rng = std::mt19937_64;

/// The three basis-set configurations of the sweep.
enum class TokenSet { Vars, VarsConst, VarsConstOpt };

std::string_view to_string(TokenSet s);
TokenSet parse_token_set(std::string_view text);

struct Alphabet {
  std::vector<Token> leaves;
  std::vector<Token> unaries;
  std::vector<Token> binaries;

  /// x, y, t, I; plus 0 1 2 4 and the six bound literals; plus C.
  static Alphabet standard(TokenSet set);
  /// Reduced alphabet from explicit lists (tests, custom runs).
  static Alphabet custom(std::vector<Token> leaves, std::vector<Token> unaries, std::vector<Token> binaries);

  std::size_t size() const { return leaves.size() + unaries.size() + binaries.size(); }
};

/// Incremental legality tracker for one partial sequence.
///
/// Prefix keeps the levels of the open operand slots. Postfix keeps the height of
/// every subtree on the operand stack; the cheapest way to finish is folding the
/// stack from the top, so a move is legal iff that fold stays within the budget.
class GrammarState {
 public:
  GrammarState(Notation n, int budget);

  bool leaf_ok() const;
  bool unary_ok() const;
  bool binary_ok() const;
  bool complete() const;
  /// Applies a token; throws StructureError if it is illegal here.
  void push(const Token& t);

  Notation notation() const { return notation_; }
  int budget() const { return budget_; }
  std::size_t length() const { return length_; }

 private:
  int fold_with(int top, std::size_t below) const;

  Notation notation_;
  int budget_;
  std::size_t length_ = 0;
  std::vector<int> stack_;
};

/// Tokens a such that partial + [a] still extends to a complete expression of depth <= budget.
/// For prefix the result is empty iff partial is complete. A complete postfix partial can
/// still be extended (x -> x sin), so callers that generate also offer a stop move.
std::vector<Token> legal_tokens(std::span<const Token> partial, Notation n, int budget, const Alphabet& alphabet);

/// Same, from an already-advanced state.
void legal_tokens(const GrammarState& state, const Alphabet& alphabet, std::vector<Token>& out);

/// Uniform draw among the legal tokens at every step; a complete postfix partial
/// adds a stop option to the draw.
Expr sample_complete(Rng& rng, Notation n, int budget, const Alphabet& alphabet);

/// Token sequence only, appended to `out` (used for span mutation).
void sample_tokens(Rng& rng, Notation n, int budget, const Alphabet& alphabet, std::vector<Token>& out);

}  // namespace padesr
