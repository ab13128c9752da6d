#pragma once

#include <limits>
#include <vector>

#include "padesr/search.hpp"

namespace padesr::detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Per-thread scoring front end: constant fitting, budget, best tracking.
class Worker {
 public:
  Worker(const SearchConfig& config, const Dataset& data, SharedState& shared, std::size_t index);

  /// Scores `e`; returns +inf for rejected/faulted candidates. Sets stopped() once the
  /// budget runs out, in which case the candidate is not scored and +inf is returned.
  double score(const Expr& e);
  bool stopped();

  const SearchConfig& config() const { return config_; }
  const Alphabet& alphabet() const { return alphabet_; }
  Rng& rng() { return rng_; }
  double best() const { return best_; }
  std::vector<Improvement>& log() { return log_; }

 private:
  const SearchConfig& config_;
  const Dataset& data_;
  SharedState& shared_;
  Alphabet alphabet_;
  Rng rng_;
  ObjectiveWorkspace ws_;
  double best_ = kInf;
  bool stopped_ = false;
  std::vector<Improvement> log_;
};

/// Replaces a random subtree with a fresh random subtree that keeps the depth within `budget`.
Expr mutate(const Expr& e, int budget, const Alphabet& alphabet, Rng& rng);

/// Swaps random subtrees between a and b; false if no depth-preserving pair was found.
bool crossover(const Expr& a, const Expr& b, int budget, Rng& rng, Expr& child_a, Expr& child_b);

void run_random_search(Worker& w);
void run_mcts(Worker& w, SharedState& shared, bool concurrent);
void run_pso(Worker& w);
void run_gp(Worker& w);
void run_annealing(Worker& w);

}  // namespace padesr::detail
