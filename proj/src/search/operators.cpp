#include "worker.hpp"

namespace padesr::detail {

namespace {

Span span_at(const Expr& e, std::size_t i, std::vector<std::size_t>& ext) {
  subtree_extents(e.tokens(), e.notation(), ext);
  return subtree_span(ext, e.notation(), i);
}

std::vector<Token> splice(const std::vector<Token>& host, Span s, std::span<const Token> piece) {
  std::vector<Token> out;
  out.reserve(host.size() - s.size() + piece.size());
  out.insert(out.end(), host.begin(), host.begin() + static_cast<std::ptrdiff_t>(s.begin));
  out.insert(out.end(), piece.begin(), piece.end());
  out.insert(out.end(), host.begin() + static_cast<std::ptrdiff_t>(s.end), host.end());
  canonicalize_slots(out);
  return out;
}

}  // namespace

Expr mutate(const Expr& e, int budget, const Alphabet& alphabet, Rng& rng) {
  std::vector<int> level, height;
  node_levels(e.tokens(), e.notation(), level, height);
  std::vector<std::size_t> ext;
  std::size_t i = std::uniform_int_distribution<std::size_t>(0, e.size() - 1)(rng);
  // A seed expression can be deeper than the budget; only nodes within it are replaceable.
  for (int tries = 0; level[i] > budget && tries < 64; ++tries)
    i = std::uniform_int_distribution<std::size_t>(0, e.size() - 1)(rng);
  if (level[i] > budget) i = span_root({0, e.size()}, e.notation());
  const Span s = span_at(e, i, ext);
  std::vector<Token> piece;
  sample_tokens(rng, e.notation(), budget - level[i], alphabet, piece);
  return Expr(e.notation(), splice(e.tokens(), s, piece), std::max(budget, e.budget()));
}

bool crossover(const Expr& a, const Expr& b, int budget, Rng& rng, Expr& child_a, Expr& child_b) {
  std::vector<int> la, ha, lb, hb;
  node_levels(a.tokens(), a.notation(), la, ha);
  node_levels(b.tokens(), b.notation(), lb, hb);
  std::vector<std::size_t> fits;
  for (int tries = 0; tries < 8; ++tries) {
    const std::size_t i = std::uniform_int_distribution<std::size_t>(0, a.size() - 1)(rng);
    fits.clear();
    for (std::size_t j = 0; j < b.size(); ++j)
      if (la[i] + hb[j] <= budget && lb[j] + ha[i] <= budget) fits.push_back(j);
    if (fits.empty()) continue;
    const std::size_t j = fits[std::uniform_int_distribution<std::size_t>(0, fits.size() - 1)(rng)];
    std::vector<std::size_t> ext;
    const Span sa = span_at(a, i, ext);
    const Span sb = span_at(b, j, ext);
    std::span<const Token> pa(a.tokens().data() + sa.begin, sa.size());
    std::span<const Token> pb(b.tokens().data() + sb.begin, sb.size());
    child_a = Expr(a.notation(), splice(a.tokens(), sa, pb), budget);
    child_b = Expr(b.notation(), splice(b.tokens(), sb, pa), budget);
    return true;
  }
  return false;
}

void run_random_search(Worker& w) {
  const auto& cfg = w.config();
  while (!w.stopped()) w.score(sample_complete(w.rng(), cfg.notation, cfg.depth, w.alphabet()));
}

}  // namespace padesr::detail
