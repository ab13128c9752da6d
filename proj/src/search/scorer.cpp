#include <cmath>

#include "worker.hpp"

namespace padesr::detail {

Worker::Worker(const SearchConfig& config, const Dataset& data, SharedState& shared, std::size_t index)
    : config_(config),
      data_(data),
      shared_(shared),
      alphabet_(Alphabet::standard(config.token_set)),
      rng_(worker_seed(config.seed, index)) {}

bool Worker::stopped() {
  if (!stopped_ && shared_.elapsed() >= config_.time_budget) stopped_ = true;
  return stopped_;
}

double Worker::score(const Expr& e) {
  if (stopped() || !shared_.claim_evaluation()) {
    stopped_ = true;
    return kInf;
  }
  double mse;
  std::vector<double> consts;
  if (e.slot_count() > 0) {
    auto f = [&](std::span<const double> c) { return objective(e, data_, c, config_.objective, ws_).total; };
    FitResult fit = fit_constants(e, f, shared_, config_.const_fit, config_.seed);
    shared_.count_objective_calls(fit.evaluations);
    consts = std::move(fit.consts);
    mse = fit.mse;
  } else {
    mse = objective(e, data_, {}, config_.objective, ws_).total;
    shared_.count_objective_calls(1);
  }
  if (std::isnan(mse)) mse = kInf;
  if (mse < best_) {
    best_ = mse;
    log_.push_back({shared_.elapsed(), mse, e.key()});
    shared_.offer(e, consts, mse);
  }
  return mse;
}

}  // namespace padesr::detail
