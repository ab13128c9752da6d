#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <tbb/concurrent_hash_map.h>

#include "padesr/grammar.hpp"
#include "padesr/pde.hpp"

namespace padesr {

enum class Algorithm { Rs, Mcts, Cmcts, Pso, Gp, Sa };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::Rs,  Algorithm::Mcts, Algorithm::Cmcts,
                                               Algorithm::Pso, Algorithm::Gp,   Algorithm::Sa};

std::string_view to_string(Algorithm a);
/// Long name used in sweep tables ("Random Search", "GP", ...).
std::string_view display_name(Algorithm a);
Algorithm parse_algorithm(std::string_view text);

struct MctsParams {
  double c_initial = 1.4;
  int stall_iterations = 500;  ///< iterations without improvement before c grows
  double c_increment = 1.4;
  double c_reset = 1.4;
};

struct PsoParams {
  int swarm = 50;
  double inertia = 0.7;
  double cognitive = 1.5;
  double social = 1.5;
  std::size_t max_length = 1024;  ///< cap on the particle dimension
};

struct GpParams {
  int population = 200;
  int offspring = 200;
  double p_crossover = 0.7;
};

struct SaParams {
  double t0 = 1.0;
  double cooling = 0.999;
  double floor = 1e-6;
  int reheat_stall = 2000;
};

struct ConstFitParams {
  int swarm = 20;
  int iterations = 5;
  double inertia = 0.7;
  double cognitive = 1.5;
  double social = 1.5;
  double lo = -10.0;
  double hi = 10.0;
};

struct SearchConfig {
  Algorithm algorithm = Algorithm::Rs;
  int depth = 3;
  Notation notation = Notation::Prefix;
  TokenSet token_set = TokenSet::VarsConst;
  int threads = 1;
  double time_budget = 5.0;          ///< seconds
  std::uint64_t max_evaluations = 0;  ///< 0 = no limit; with one thread this makes runs reproducible
  std::uint64_t seed = 0;
  ObjectiveConfig objective;
  std::optional<Expr> seed_expr;  ///< start state for sa
  MctsParams mcts;
  MctsParams cmcts{1.4, 1000, 1.4, 1.4};
  PsoParams pso;
  GpParams gp;
  SaParams sa;
  ConstFitParams const_fit;
};

using Clock = std::chrono::steady_clock;

struct Improvement {
  double elapsed = 0;  ///< seconds since the run started
  double mse = 0;
  std::string key;
};

struct CachedFit {
  std::vector<double> consts;
  double mse = 0;
};

/// State shared by all workers of one run.
class SharedState {
 public:
  explicit SharedState(std::uint64_t max_evaluations = 0, Clock::time_point start = Clock::now());

  std::optional<CachedFit> find_fit(const std::string& key) const;
  void store_fit(const std::string& key, const CachedFit& fit);
  std::size_t cache_size() const { return fits_.size(); }

  /// Records a scored candidate; returns true if it became the global best.
  bool offer(const Expr& e, std::span<const double> consts, double mse);
  double best_mse() const { return best_mse_.load(std::memory_order_acquire); }

  struct Best {
    std::optional<Expr> expr;
    std::vector<double> consts;
    double mse = 0;
  };
  Best best() const;
  std::vector<Improvement> improvements() const;

  /// Takes one unit of the evaluation budget; false once it is used up.
  bool claim_evaluation();
  std::uint64_t evaluations() const { return evaluations_.load(); }
  void count_objective_calls(std::uint64_t n) { objective_calls_.fetch_add(n, std::memory_order_relaxed); }
  std::uint64_t objective_calls() const { return objective_calls_.load(); }

  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

  // cmcts statistics, keyed by partial-expression text (+ action)
  double state_visits(const std::string& s) const;
  double action_visits(const std::string& sa) const;
  double action_value(const std::string& sa) const;
  void record_visit(const std::string& s, const std::string& sa, double reward);

 private:
  using Map = tbb::concurrent_hash_map<std::string, double>;
  static double read(const Map& m, const std::string& k);

  tbb::concurrent_hash_map<std::string, CachedFit> fits_;
  Map ns_, nsa_, qsa_;

  std::atomic<double> best_mse_;
  mutable std::mutex best_mutex_;
  Best best_;
  std::vector<Improvement> log_;

  std::uint64_t max_evaluations_;
  std::atomic<std::uint64_t> evaluations_{0};
  std::atomic<std::uint64_t> objective_calls_{0};
  Clock::time_point start_;
};

/// Key for an action taken from state `s` (STOP is spelled "$").
std::string action_key(const std::string& s, std::string_view action);

/// Picks an action for cmcts. Returns an index into `legal`, or legal.size() for STOP when
/// allow_stop is set. Unvisited actions are chosen uniformly at random; otherwise the
/// UCT maximiser wins, ties going to the lowest index.
std::size_t select_action_cmcts(const std::string& state, std::span<const Token> legal, bool allow_stop,
                                const SharedState& shared, double c, Rng& rng);

struct PsoResult {
  std::vector<double> best;
  double value = 0;
  std::uint64_t evaluations = 0;
};

/// Plain global-best PSO over a box.
PsoResult minimize_pso(std::size_t dim, const std::function<double(std::span<const double>)>& f,
                       const ConstFitParams& params, Rng& rng);

struct FitResult {
  std::vector<double> consts;
  double mse = 0;
  std::uint64_t evaluations = 0;
  bool cache_hit = false;
};

/// Fits the learnable slots of `e` with PSO, memoised in the shared cache under e.key().
FitResult fit_constants(const Expr& e, const std::function<double(std::span<const double>)>& f,
                        SharedState& shared, const ConstFitParams& params, std::uint64_t seed);

/// splitmix64 finaliser.
std::uint64_t mix_seed(std::uint64_t x);
/// Seed of worker `index` derived from the run seed.
std::uint64_t worker_seed(std::uint64_t seed, std::size_t index);
/// Stable 64-bit hash of a string (FNV-1a).
std::uint64_t hash_key(std::string_view s);

struct SearchResult {
  bool empty = true;  ///< no candidate was scored
  std::optional<Expr> best;
  std::optional<Expr> simplified;
  MseBreakdown breakdown;
  std::vector<double> consts;
  double elapsed = 0;
  std::uint64_t evaluations = 0;
  std::uint64_t objective_calls = 0;
  std::vector<Improvement> improvements;
  std::vector<std::vector<Improvement>> worker_logs;
  SearchConfig config;
};

SearchResult run_search(const SearchConfig& config, const Dataset& data);

}  // namespace padesr
