#include <limits>

#include "padesr/search.hpp"

namespace padesr {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Rs: return "rs";
    case Algorithm::Mcts: return "mcts";
    case Algorithm::Cmcts: return "cmcts";
    case Algorithm::Pso: return "pso";
    case Algorithm::Gp: return "gp";
    case Algorithm::Sa: return "sa";
  }
  return "?";
}

std::string_view display_name(Algorithm a) {
  switch (a) {
    case Algorithm::Rs: return "Random Search";
    case Algorithm::Mcts: return "MCTS";
    case Algorithm::Cmcts: return "Concurrent MCTS";
    case Algorithm::Pso: return "PSO";
    case Algorithm::Gp: return "GP";
    case Algorithm::Sa: return "Simulated Annealing";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view text) {
  for (Algorithm a : kAllAlgorithms)
    if (text == to_string(a)) return a;
  throw std::invalid_argument("unknown algorithm '" + std::string(text) + "'");
}

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t worker_seed(std::uint64_t seed, std::size_t index) {
  return mix_seed(mix_seed(seed) + 0x632be59bd9b4e019ULL * (index + 1));
}

std::uint64_t hash_key(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

SharedState::SharedState(std::uint64_t max_evaluations, Clock::time_point start)
    : best_mse_(std::numeric_limits<double>::infinity()), max_evaluations_(max_evaluations), start_(start) {
  best_.mse = std::numeric_limits<double>::infinity();
}

std::optional<CachedFit> SharedState::find_fit(const std::string& key) const {
  decltype(fits_)::const_accessor acc;
  if (!fits_.find(acc, key)) return std::nullopt;
  return acc->second;
}

void SharedState::store_fit(const std::string& key, const CachedFit& fit) {
  decltype(fits_)::accessor acc;
  fits_.insert(acc, key);
  acc->second = fit;
}

bool SharedState::offer(const Expr& e, std::span<const double> consts, double mse) {
  if (!(mse < best_mse_.load(std::memory_order_acquire))) return false;
  std::lock_guard lock(best_mutex_);
  if (!(mse < best_.mse)) return false;
  best_.expr = e;
  best_.consts.assign(consts.begin(), consts.end());
  best_.mse = mse;
  log_.push_back({elapsed(), mse, e.key()});
  best_mse_.store(mse, std::memory_order_release);
  return true;
}

SharedState::Best SharedState::best() const {
  std::lock_guard lock(best_mutex_);
  return best_;
}

std::vector<Improvement> SharedState::improvements() const {
  std::lock_guard lock(best_mutex_);
  return log_;
}

bool SharedState::claim_evaluation() {
  if (max_evaluations_ == 0) {
    evaluations_.fetch_add(1, std::memory_order_relaxed);
    return true;
  }
  std::uint64_t cur = evaluations_.load();
  while (cur < max_evaluations_)
    if (evaluations_.compare_exchange_weak(cur, cur + 1)) return true;
  return false;
}

double SharedState::read(const Map& m, const std::string& k) {
  Map::const_accessor acc;
  return m.find(acc, k) ? acc->second : 0.0;
}

double SharedState::state_visits(const std::string& s) const { return read(ns_, s); }
double SharedState::action_visits(const std::string& sa) const { return read(nsa_, sa); }
double SharedState::action_value(const std::string& sa) const { return read(qsa_, sa); }

void SharedState::record_visit(const std::string& s, const std::string& sa, double reward) {
  {
    Map::accessor acc;
    ns_.insert(acc, s);
    acc->second += 1.0;
  }
  {
    Map::accessor acc;
    nsa_.insert(acc, sa);
    acc->second += 1.0;
  }
  Map::accessor acc;
  qsa_.insert(acc, sa);
  acc->second += reward;
}

std::string action_key(const std::string& s, std::string_view action) {
  std::string k = s;
  k += '|';
  k += action;
  return k;
}

}  // namespace padesr
