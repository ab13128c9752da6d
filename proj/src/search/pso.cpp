#include <algorithm>
#include <cmath>

#include "worker.hpp"

namespace padesr::detail {

namespace {

// Walks the grammar, taking option floor(|c_i|) mod |options| at step i. Once the
// components run out the expression is closed off deterministically.
Expr decode(std::span<const double> pos, Notation n, int budget, const Alphabet& alpha) {
  GrammarState st(n, budget);
  std::vector<Token> legal, out;
  std::size_t i = 0;
  for (;;) {
    legal_tokens(st, alpha, legal);
    if (legal.empty()) break;
    const bool can_stop = st.complete();
    std::size_t pick;
    if (i < pos.size()) {
      const std::size_t options = legal.size() + (can_stop ? 1 : 0);
      const double a = std::min(std::floor(std::abs(pos[i++])), 1e15);
      pick = static_cast<std::size_t>(a) % options;
    } else if (can_stop) {
      pick = legal.size();
    } else if (n == Notation::Postfix && st.binary_ok()) {
      pick = static_cast<std::size_t>(std::find_if(legal.begin(), legal.end(),
                                                   [](const Token& t) { return t.arity() == 2; }) -
                                      legal.begin());
    } else {
      pick = 0;  // first leaf
    }
    if (pick == legal.size()) break;
    out.push_back(legal[pick]);
    st.push(legal[pick]);
  }
  canonicalize_slots(out);
  return Expr(n, std::move(out), budget);
}

}  // namespace

void run_pso(Worker& w) {
  const auto& cfg = w.config();
  const PsoParams& p = cfg.pso;
  const Alphabet& alpha = w.alphabet();
  Rng& rng = w.rng();
  const std::size_t full = cfg.depth >= 62 ? p.max_length : (std::size_t{2} << cfg.depth) - 1;
  const std::size_t dim = std::min(full, p.max_length);
  const double range = static_cast<double>(alpha.size());
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const auto swarm = static_cast<std::size_t>(std::max(p.swarm, 1));
  std::vector<std::vector<double>> pos(swarm, std::vector<double>(dim)), vel = pos;
  for (std::size_t i = 0; i < swarm; ++i)
    for (std::size_t d = 0; d < dim; ++d) {
      pos[i][d] = range * unit(rng);
      vel[i][d] = (unit(rng) - 0.5) * range;
    }
  std::vector<std::vector<double>> pbest = pos;
  std::vector<double> pbest_val(swarm, kInf);
  std::vector<double> gbest = pos[0];
  double gbest_val = kInf;

  auto evaluate = [&](std::size_t i) {
    const double v = w.score(decode(pos[i], cfg.notation, cfg.depth, alpha));
    if (w.stopped()) return;
    if (v < pbest_val[i]) pbest_val[i] = v, pbest[i] = pos[i];
    if (v < gbest_val) gbest_val = v, gbest = pos[i];
  };

  for (std::size_t i = 0; i < swarm && !w.stopped(); ++i) evaluate(i);
  while (!w.stopped()) {
    for (std::size_t i = 0; i < swarm && !w.stopped(); ++i) {
      for (std::size_t d = 0; d < dim; ++d) {
        const double r1 = unit(rng), r2 = unit(rng);
        double v = p.inertia * vel[i][d] + p.cognitive * r1 * (pbest[i][d] - pos[i][d]) +
                   p.social * r2 * (gbest[d] - pos[i][d]);
        vel[i][d] = std::clamp(v, -range, range);
        pos[i][d] += vel[i][d];
      }
      evaluate(i);
    }
  }
}

}  // namespace padesr::detail
