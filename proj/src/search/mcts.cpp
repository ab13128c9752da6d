#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "worker.hpp"

namespace padesr {

namespace {

double uct(double q, double n_sa, double n_s, double c) {
  return q / n_sa + c * std::sqrt(std::log(n_s) / n_sa);
}

}  // namespace

std::size_t select_action_cmcts(const std::string& state, std::span<const Token> legal, bool allow_stop,
                                const SharedState& shared, double c, Rng& rng) {
  const std::size_t options = legal.size() + (allow_stop ? 1 : 0);
  std::vector<std::size_t> unvisited;
  std::vector<double> n_sa(options), q_sa(options);
  for (std::size_t i = 0; i < options; ++i) {
    const std::string k = action_key(state, i < legal.size() ? spelling(legal[i]) : "$");
    n_sa[i] = shared.action_visits(k);
    q_sa[i] = shared.action_value(k);
    if (n_sa[i] <= 0) unvisited.push_back(i);
  }
  if (!unvisited.empty())
    return unvisited[std::uniform_int_distribution<std::size_t>(0, unvisited.size() - 1)(rng)];
  // Racing updates can leave N(s) behind the sum of N(s,a); never take log of less than 1.
  const double n_s = std::max(shared.state_visits(state), 1.0);
  std::size_t best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < options; ++i) {
    const double s = uct(q_sa[i], n_sa[i], n_s, c);
    if (s > best_score) {
      best_score = s;
      best = i;
    }
  }
  return best;
}

namespace detail {

namespace {

struct Node {
  double n = 0;
  std::vector<double> n_sa, q_sa;
};

struct Step {
  std::string state;
  std::size_t action;
  std::string action_text;
};

}  // namespace

void run_mcts(Worker& w, SharedState& shared, bool concurrent) {
  const auto& cfg = w.config();
  const MctsParams& p = concurrent ? cfg.cmcts : cfg.mcts;
  const Alphabet& alpha = w.alphabet();
  Rng& rng = w.rng();
  std::unordered_map<std::string, Node> tree;
  std::vector<Token> legal, tokens;
  std::vector<Step> path;
  double c = p.c_initial;
  int stall = 0;
  double best = kInf;

  while (!w.stopped()) {
    GrammarState st(cfg.notation, cfg.depth);
    tokens.clear();
    path.clear();
    std::string state;
    bool in_tree = true;
    for (;;) {
      legal_tokens(st, alpha, legal);
      const bool can_stop = st.complete() && cfg.notation == Notation::Postfix;
      if (legal.empty()) break;
      const std::size_t options = legal.size() + (can_stop ? 1 : 0);
      std::size_t pick;
      if (in_tree) {
        if (concurrent) {
          pick = select_action_cmcts(state, legal, can_stop, shared, c, rng);
          const std::string k = action_key(state, pick < legal.size() ? spelling(legal[pick]) : "$");
          if (shared.action_visits(k) <= 0) in_tree = false;
        } else {
          Node& node = tree[state];
          if (node.n_sa.empty()) node.n_sa.assign(options, 0.0), node.q_sa.assign(options, 0.0);
          pick = options;
          for (std::size_t i = 0; i < options; ++i)
            if (node.n_sa[i] == 0) {
              pick = i;
              break;
            }
          if (pick == options) {
            double best_score = -kInf;
            for (std::size_t i = 0; i < options; ++i) {
              const double s = uct(node.q_sa[i], node.n_sa[i], node.n, c);
              if (s > best_score) best_score = s, pick = i;
            }
          } else {
            in_tree = false;  // expansion: the rest is a rollout
          }
        }
        path.push_back({state, pick, pick < legal.size() ? spelling(legal[pick]) : "$"});
      } else {
        pick = std::uniform_int_distribution<std::size_t>(0, options - 1)(rng);
      }
      if (pick == legal.size()) break;  // stop
      tokens.push_back(legal[pick]);
      st.push(legal[pick]);
      if (in_tree) {
        state += spelling(legal[pick]);
        state += ' ';
      }
    }

    std::vector<Token> toks = tokens;
    canonicalize_slots(toks);
    const double mse = w.score(Expr(cfg.notation, std::move(toks), cfg.depth));
    if (w.stopped()) break;
    const double reward = std::isfinite(mse) ? 1.0 / (1.0 + mse) : 0.0;
    for (const Step& s : path) {
      if (concurrent) {
        shared.record_visit(s.state, action_key(s.state, s.action_text), reward);
      } else {
        Node& node = tree[s.state];
        node.n += 1;
        node.n_sa[s.action] += 1;
        node.q_sa[s.action] += reward;
      }
    }

    if (mse < best) {
      best = mse;
      c = p.c_reset;
      stall = 0;
    } else if (++stall >= p.stall_iterations) {
      c += p.c_increment;
      stall = 0;
    }
  }
}

}  // namespace detail

}  // namespace padesr
