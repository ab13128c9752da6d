// Counts heap allocations around the differentiation loop; lives in its own
// binary because it replaces the global operator new.
#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <new>

#include "padesr/diff.hpp"
#include "padesr/grammar.hpp"

namespace {
std::atomic<long> g_allocations{0};
}

void* operator new(std::size_t n) {
  g_allocations.fetch_add(1, std::memory_order_relaxed);
  if (void* p = std::malloc(n ? n : 1)) return p;
  throw std::bad_alloc();
}
void operator delete(void* p) noexcept { std::free(p); }
void operator delete(void* p, std::size_t) noexcept { std::free(p); }

using namespace padesr;

TEST_CASE("differentiation reuses its buffers") {
  Rng rng(1);
  const Alphabet a = Alphabet::standard(TokenSet::VarsConst);
  std::vector<Expr> exprs;
  for (int i = 0; i < 200; ++i) exprs.push_back(sample_complete(rng, i % 2 ? Notation::Prefix : Notation::Postfix, 6, a));

  DiffScratch scratch;
  std::vector<Token> out;
  auto pass = [&] {
    for (const Expr& e : exprs)
      for (Var v : {Var::X, Var::Y, Var::T}) {
        differentiate_into(e.tokens(), e.notation(), v, scratch, out);
        second_derivative_into(e.tokens(), e.notation(), v, scratch, out);
      }
  };
  pass();  // warm-up sizes every buffer
  const long before = g_allocations.load();
  pass();
  CHECK(g_allocations.load() - before == 0);
}
