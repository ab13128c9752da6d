#include <algorithm>
#include <cmath>

#include "worker.hpp"

namespace padesr::detail {

void run_annealing(Worker& w) {
  const auto& cfg = w.config();
  const SaParams& p = cfg.sa;
  const Alphabet& alpha = w.alphabet();
  Rng& rng = w.rng();
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Expr cur = cfg.seed_expr ? convert_notation(*cfg.seed_expr, cfg.notation)
                           : sample_complete(rng, cfg.notation, cfg.depth, alpha);
  const int budget = std::max(cfg.depth, cur.depth());
  double cur_mse = w.score(cur);
  double temp = p.t0;
  int stall = 0;

  while (!w.stopped()) {
    Expr next = mutate(cur, budget, alpha, rng);
    const double next_mse = w.score(next);
    if (w.stopped()) return;
    bool accept;
    if (next_mse < cur_mse) {
      accept = true;
    } else if (next_mse == cur_mse) {
      accept = true;  // includes inf -> inf, so a rejected start can wander out
    } else if (!std::isfinite(next_mse)) {
      accept = false;
    } else {
      accept = unit(rng) < std::exp(-(next_mse - cur_mse) / temp);
    }
    if (accept) {
      cur = std::move(next);
      cur_mse = next_mse;
      stall = 0;
    } else if (++stall >= p.reheat_stall) {
      temp = p.t0;
      stall = 0;
    }
    temp = std::max(temp * p.cooling, p.floor);
  }
}

}  // namespace padesr::detail
