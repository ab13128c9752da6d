#include <algorithm>

#include "worker.hpp"

namespace padesr::detail {

namespace {

struct Individual {
  Expr expr;
  double mse;
};

}  // namespace

void run_gp(Worker& w) {
  const auto& cfg = w.config();
  const GpParams& p = cfg.gp;
  const Alphabet& alpha = w.alphabet();
  Rng& rng = w.rng();
  const auto pop_size = static_cast<std::size_t>(std::max(p.population, 1));
  const auto offspring = static_cast<std::size_t>(std::max(p.offspring, 1));
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<Individual> pop;
  pop.reserve(pop_size + offspring + 1);
  while (pop.size() < pop_size && !w.stopped()) {
    Expr e = sample_complete(rng, cfg.notation, cfg.depth, alpha);
    const double v = w.score(e);
    if (w.stopped()) return;
    pop.push_back({std::move(e), v});
  }

  Expr ca, cb;
  while (!w.stopped()) {
    const std::size_t parents = pop.size();
    auto pick = [&]() -> const Expr& {
      return pop[std::uniform_int_distribution<std::size_t>(0, parents - 1)(rng)].expr;
    };
    while (pop.size() < parents + offspring && !w.stopped()) {
      if (unit(rng) < p.p_crossover) {
        const Expr& a = pick();
        const Expr& b = pick();
        if (crossover(a, b, cfg.depth, rng, ca, cb)) {
          for (Expr* child : {&ca, &cb}) {
            if (pop.size() >= parents + offspring) break;
            const double v = w.score(*child);
            if (w.stopped()) return;
            pop.push_back({std::move(*child), v});
          }
          continue;
        }
      }
      Expr m = mutate(pick(), cfg.depth, alpha, rng);
      const double v = w.score(m);
      if (w.stopped()) return;
      pop.push_back({std::move(m), v});
    }
    std::stable_sort(pop.begin(), pop.end(), [](const Individual& a, const Individual& b) { return a.mse < b.mse; });
    pop.resize(std::min(pop.size(), pop_size));
  }
}

}  // namespace padesr::detail
