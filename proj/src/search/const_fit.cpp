#include <algorithm>
#include <limits>

#include "padesr/search.hpp"

namespace padesr {

PsoResult minimize_pso(std::size_t dim, const std::function<double(std::span<const double>)>& f,
                       const ConstFitParams& params, Rng& rng) {
  const auto swarm = static_cast<std::size_t>(std::max(params.swarm, 1));
  const double span = params.hi - params.lo;
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<std::vector<double>> pos(swarm, std::vector<double>(dim)), vel = pos, pbest;
  std::vector<double> pbest_val(swarm);
  PsoResult res;
  res.value = std::numeric_limits<double>::infinity();

  auto consider = [&](std::size_t i) {
    double v = f(pos[i]);
    ++res.evaluations;
    if (std::isnan(v)) v = std::numeric_limits<double>::infinity();
    if (v < pbest_val[i]) {
      pbest_val[i] = v;
      pbest[i] = pos[i];
    }
    if (v < res.value || res.best.empty()) {
      res.value = v;
      res.best = pos[i];
    }
  };

  for (std::size_t i = 0; i < swarm; ++i) {
    for (std::size_t d = 0; d < dim; ++d) {
      pos[i][d] = params.lo + span * unit(rng);
      vel[i][d] = (unit(rng) - 0.5) * span * 0.1;
    }
  }
  pbest = pos;
  pbest_val.assign(swarm, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < swarm; ++i) consider(i);

  for (int it = 0; it < params.iterations; ++it) {
    const std::vector<double> g = res.best;
    for (std::size_t i = 0; i < swarm; ++i) {
      for (std::size_t d = 0; d < dim; ++d) {
        const double r1 = unit(rng), r2 = unit(rng);
        vel[i][d] = params.inertia * vel[i][d] + params.cognitive * r1 * (pbest[i][d] - pos[i][d]) +
                    params.social * r2 * (g[d] - pos[i][d]);
        pos[i][d] += vel[i][d];
      }
      consider(i);
    }
  }
  return res;
}

FitResult fit_constants(const Expr& e, const std::function<double(std::span<const double>)>& f,
                        SharedState& shared, const ConstFitParams& params, std::uint64_t seed) {
  FitResult out;
  const std::size_t dim = e.slot_count();
  if (dim == 0) return out;
  const std::string key = e.key();
  if (auto hit = shared.find_fit(key)) {
    out.consts = std::move(hit->consts);
    out.mse = hit->mse;
    out.cache_hit = true;
    return out;
  }
  // The fit depends only on the expression and the run seed, so racing workers store the same value.
  Rng rng(mix_seed(hash_key(key) ^ seed));
  PsoResult r = minimize_pso(dim, f, params, rng);
  out.consts = std::move(r.best);
  out.mse = r.value;
  out.evaluations = r.evaluations;
  shared.store_fit(key, {out.consts, out.mse});
  return out;
}

}  // namespace padesr
