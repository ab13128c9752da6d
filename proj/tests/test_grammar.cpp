#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "padesr/grammar.hpp"

using namespace padesr;

namespace {

std::set<std::string> spellings(const std::vector<Token>& v) {
  std::set<std::string> s;
  for (const Token& t : v) s.insert(spelling(t));
  return s;
}

Alphabet reduced() {
  return Alphabet::custom({Token::variable(Var::X), Token::literal(1)}, {Token::unary(UnaryOp::Sin)},
                          {Token::binary(BinaryOp::Add)});
}

// Counts complete sequences reachable through legal_tokens; postfix counts every
// complete prefix of the walk since a complete postfix partial may still grow.
std::uint64_t enumerate(std::vector<Token>& partial, Notation n, int budget, const Alphabet& a) {
  const auto legal = legal_tokens(partial, n, budget, a);
  std::uint64_t count = 0;
  if (n == Notation::Prefix) {
    if (legal.empty()) return 1;
  } else if (!partial.empty()) {
    GrammarState s(n, budget);
    for (const Token& t : partial) s.push(t);
    if (s.complete()) ++count;
  }
  for (const Token& t : legal) {
    partial.push_back(t);
    count += enumerate(partial, n, budget, a);
    partial.pop_back();
  }
  return count;
}

}  // namespace

TEST_CASE("legal_tokens examples") {
  const Alphabet a = Alphabet::standard(TokenSet::Vars);
  const auto leaves = spellings(a.leaves);
  CHECK(spellings(legal_tokens({}, Notation::Prefix, 0, a)) == leaves);
  CHECK(spellings(legal_tokens({}, Notation::Postfix, 0, a)) == leaves);

  const std::vector<Token> add{Token::binary(BinaryOp::Add)};
  CHECK(spellings(legal_tokens(add, Notation::Prefix, 1, a)) == leaves);

  const std::vector<Token> x{Token::variable(Var::X)};
  auto expect = leaves;
  for (const Token& u : a.unaries) expect.insert(spelling(u));
  CHECK(spellings(legal_tokens(x, Notation::Postfix, 1, a)) == expect);

  const std::vector<Token> xy{Token::variable(Var::X), Token::variable(Var::Y)};
  CHECK(spellings(legal_tokens(xy, Notation::Postfix, 1, a)) == spellings(a.binaries));

  CHECK(legal_tokens(x, Notation::Prefix, 3, a).empty());
  CHECK(legal_tokens(x, Notation::Postfix, 0, a).empty());
}

TEST_CASE("standard alphabets") {
  CHECK(Alphabet::standard(TokenSet::Vars).leaves.size() == 4);
  CHECK(Alphabet::standard(TokenSet::VarsConst).leaves.size() == 14);
  CHECK(Alphabet::standard(TokenSet::VarsConstOpt).leaves.size() == 15);
  CHECK(Alphabet::standard(TokenSet::Vars).unaries.size() == 10);
  CHECK(Alphabet::standard(TokenSet::Vars).binaries.size() == 5);
  CHECK(parse_token_set("vars+const+opt") == TokenSet::VarsConstOpt);
  CHECK_THROWS(parse_token_set("everything"));
}

TEST_CASE("enumeration through legal_tokens equals recursive tree count") {
  const Alphabet a = reduced();
  for (Notation n : {Notation::Prefix, Notation::Postfix}) {
    for (int depth = 0; depth <= 2; ++depth) {
      std::vector<Token> partial;
      CHECK(enumerate(partial, n, depth, a) == oracle::count_trees(depth, 2, 1, 1));
    }
  }
  CHECK(oracle::count_trees(2, 2, 1, 1) == 74);
}

TEST_CASE("random walks never reach a dead end") {
  Rng rng(11);
  const Alphabet a = Alphabet::standard(TokenSet::VarsConst);
  for (Notation n : {Notation::Prefix, Notation::Postfix}) {
    for (int i = 0; i < 2000; ++i) {
      const int budget = static_cast<int>(rng() % 6);
      GrammarState s(n, budget);
      std::vector<Token> legal;
      for (;;) {
        legal_tokens(s, a, legal);
        if (s.complete() && (legal.empty() || rng() % 4 == 0)) break;
        REQUIRE_FALSE(legal.empty());
        s.push(legal[rng() % legal.size()]);
      }
      CHECK(s.complete());
    }
  }
}

TEST_CASE("sample_complete respects completeness and depth") {
  Rng rng(5);
  const Alphabet a = Alphabet::standard(TokenSet::VarsConstOpt);
  for (Notation n : {Notation::Prefix, Notation::Postfix}) {
    for (int i = 0; i < 10000; ++i) {
      const Expr e = sample_complete(rng, n, 3, a);
      REQUIRE(oracle::depth_of(e) <= 3);
      REQUIRE(oracle::depth_of(e) == e.depth());
    }
    for (int i = 0; i < 50; ++i) CHECK(sample_complete(rng, n, 0, a).size() == 1);
  }
}

TEST_CASE("sampling is deterministic for a fixed seed") {
  const Alphabet a = Alphabet::standard(TokenSet::VarsConst);
  Rng r1(42), r2(42);
  for (int i = 0; i < 100; ++i)
    CHECK(sample_complete(r1, Notation::Postfix, 5, a) == sample_complete(r2, Notation::Postfix, 5, a));
}

TEST_CASE("GrammarState rejects illegal pushes") {
  GrammarState p(Notation::Prefix, 1);
  p.push(Token::binary(BinaryOp::Add));
  CHECK_THROWS_AS(p.push(Token::unary(UnaryOp::Sin)), StructureError);
  p.push(Token::variable(Var::X));
  p.push(Token::variable(Var::Y));
  CHECK(p.complete());
  CHECK_THROWS_AS(p.push(Token::variable(Var::T)), StructureError);

  GrammarState q(Notation::Postfix, 1);
  CHECK_THROWS_AS(q.push(Token::binary(BinaryOp::Add)), StructureError);
  q.push(Token::variable(Var::X));
  q.push(Token::unary(UnaryOp::Sin));
  CHECK_THROWS_AS(q.push(Token::unary(UnaryOp::Sin)), StructureError);
}
