#include <thread>

#include "worker.hpp"

namespace padesr {

SearchResult run_search(const SearchConfig& config, const Dataset& data) {
  if (config.threads < 1) throw std::invalid_argument("threads must be at least 1");
  if (!(config.time_budget > 0)) throw std::invalid_argument("time budget must be positive");
  if (config.depth < 0) throw std::invalid_argument("depth must be non-negative");

  SharedState shared(config.max_evaluations);
  const auto n = static_cast<std::size_t>(config.threads);
  std::vector<std::vector<Improvement>> logs(n);
  std::vector<std::exception_ptr> errors(n);

  auto body = [&](std::size_t idx) {
    try {
      detail::Worker w(config, data, shared, idx);
      switch (config.algorithm) {
        case Algorithm::Rs: detail::run_random_search(w); break;
        case Algorithm::Mcts: detail::run_mcts(w, shared, false); break;
        case Algorithm::Cmcts: detail::run_mcts(w, shared, true); break;
        case Algorithm::Pso: detail::run_pso(w); break;
        case Algorithm::Gp: detail::run_gp(w); break;
        case Algorithm::Sa: detail::run_annealing(w); break;
      }
      logs[idx] = std::move(w.log());
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  };

  if (n == 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pool.emplace_back(body, i);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  SearchResult r;
  r.config = config;
  r.elapsed = shared.elapsed();
  r.evaluations = shared.evaluations();
  r.objective_calls = shared.objective_calls();
  r.improvements = shared.improvements();
  r.worker_logs = std::move(logs);
  auto best = shared.best();
  if (best.expr) {
    r.empty = false;
    r.best = best.expr;
    r.consts = best.consts;
    r.simplified = simplify(*best.expr);
    r.breakdown = objective(*best.expr, data, r.consts, config.objective);
  } else if (r.evaluations > 0) {
    // Candidates were scored but none was finite; still not a usable result.
    r.breakdown.total = detail::kInf;
  }
  return r;
}

}  // namespace padesr
