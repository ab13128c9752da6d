#include "padesr/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "padesr/diff.hpp"
#include "padesr/pde.hpp"
#include "padesr/report.hpp"
#include "padesr/search.hpp"

namespace padesr {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

double to_double(const std::string& s, const char* what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw UsageError(std::string("bad number for ") + what + ": '" + s + "'");
  return v;
}

int to_int(const std::string& s, const char* what) {
  const double v = to_double(s, what);
  if (v != static_cast<int>(v)) throw UsageError(std::string("expected an integer for ") + what + ": '" + s + "'");
  return static_cast<int>(v);
}

MeshSize parse_mesh(const std::string& s) {
  auto parts = split(s, ',');
  MeshSize m;
  if (parts.size() == 1) {
    m.nx = m.ny = m.nt = to_int(parts[0], "--mesh");
  } else if (parts.size() == 3) {
    m.nx = to_int(parts[0], "--mesh");
    m.ny = to_int(parts[1], "--mesh");
    m.nt = to_int(parts[2], "--mesh");
  } else {
    throw UsageError("--mesh expects n or nx,ny,nt");
  }
  if (m.nx < 2 || m.ny < 2 || m.nt < 2) throw UsageError("--mesh sizes must be at least 2");
  return m;
}

std::pair<int, int> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const int v = to_int(s, "--depths");
    return {v, v};
  }
  return {to_int(s.substr(0, dots), "--depths"), to_int(s.substr(dots + 2), "--depths")};
}

std::vector<double> parse_consts(const std::string& s) {
  std::vector<double> v;
  for (const auto& p : split(s, ',')) v.push_back(to_double(p, "--consts"));
  return v;
}

Bindings parse_bindings(const std::vector<std::string>& binds) {
  Bindings b;
  for (const auto& kv : binds) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--bind expects name=value, got '" + kv + "'");
    const std::string name = kv.substr(0, eq), value = kv.substr(eq + 1);
    auto tok = parse_token(value, ParseMode::Free);
    if (!tok || !tok->is_leaf()) throw UsageError("--bind value must be a leaf token or a number, got '" + value + "'");
    b[name] = *tok;
  }
  return b;
}

int default_threads() {
  if (const char* env = std::getenv("PADESR_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

// Options shared by search, evaluate and sweep.
struct CommonOptions {
  std::string case_name;
  std::string mesh = "10,10,10";
  double threshold = 1.0 / std::sqrt(2.0);
  std::string ic_derivatives = "analytic";
  std::optional<double> ic_time;
  std::string gate_norm = "max";
  std::string arithmetic = "strict";
  std::string config;

  void attach(CLI::App* app) {
    app->add_option("--case", case_name, "case1 or case2")->required();
    app->add_option("--mesh", mesh, "mesh size n or nx,ny,nt");
    app->add_option("--threshold", threshold, "non-triviality threshold");
    app->add_option("--ic-derivatives", ic_derivatives, "analytic or frozen");
    app->add_option("--ic-time", ic_time, "time of the initial-condition plane (default t_min)");
    app->add_option("--gate-norm", gate_norm, "max or mean");
    app->add_option("--arithmetic", arithmetic, "strict (any inf/NaN is a fault) or ieee (only the final value)");
    app->add_option("--config", config, "key=value file with defaults for these flags");
  }

  DatasetOptions dataset() const {
    DatasetOptions d;
    d.mesh = parse_mesh(mesh);
    d.ic_derivatives = parse_ic_derivatives(ic_derivatives);
    d.initial_time = ic_time;
    d.arithmetic = parse_arithmetic(arithmetic);
    return d;
  }

  ObjectiveConfig objective() const {
    if (threshold < 0) throw UsageError("--threshold must be non-negative");
    ObjectiveConfig c;
    c.threshold = threshold;
    c.gate_norm = parse_gate_norm(gate_norm);
    return c;
  }
};

// Adds key=value lines from --config for every flag not already on the command line.
void merge_config_file(std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::string line;
  std::vector<std::string> extra;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("config line without '=': " + line);
    const std::string flag = "--" + line.substr(0, eq);
    const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (given) continue;
    extra.push_back(flag);
    extra.push_back(line.substr(eq + 1));
  }
  args.insert(args.end(), extra.begin(), extra.end());
}

std::string mse6(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

int cmd_search(const CommonOptions& common, SearchConfig cfg, const std::string& seed_expr, const std::string& out_path,
               std::ostream& out) {
  const CaseId id = parse_case(common.case_name);
  const DatasetOptions dopt = common.dataset();
  cfg.objective = common.objective();
  if (!seed_expr.empty()) {
    if (cfg.algorithm != Algorithm::Sa) throw UsageError("--seed-expr is only used by --algo sa");
    cfg.seed_expr = Expr::parse(seed_expr, cfg.notation, ParseMode::Free);
  }
  const Dataset data = build_dataset(id, dopt);
  const SearchResult r = run_search(cfg, data);
  const std::string report = format_report(r, id, dopt);
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot write '" + out_path + "'");
    f << report;
  }
  out << report;
  return 0;
}

int cmd_evaluate(const CommonOptions& common, const std::string& notation, const std::string& text,
                 const std::vector<std::string>& binds, const std::string& consts_text, std::ostream& out) {
  const CaseId id = parse_case(common.case_name);
  const Notation n = parse_notation(notation);
  const Bindings bindings = parse_bindings(binds);
  const Expr e = Expr::parse(text, n, ParseMode::Free, bindings);
  const std::vector<double> consts = parse_consts(consts_text);
  if (consts.size() < e.slot_count())
    throw UsageError("expression has " + std::to_string(e.slot_count()) + " learnable constants but --consts gives " +
                     std::to_string(consts.size()));
  const DatasetOptions dopt = common.dataset();
  const Dataset data = build_dataset(id, dopt);
  ObjectiveConfig oc = common.objective();
  oc.components_when_rejected = true;
  oc.max_derivative_tokens = kNoTokenLimit;
  const MseBreakdown b = objective(e, data, consts, oc);

  out << "case=" << to_string(id) << '\n';
  out << "notation=" << to_string(n) << '\n';
  out << "expr=" << e.to_string() << '\n';
  out << "infix=" << render_infix(e) << '\n';
  out << "depth=" << e.depth() << '\n';
  out << "mesh=" << dopt.mesh.nx << ',' << dopt.mesh.ny << ',' << dopt.mesh.nt << '\n';
  out << "ic-derivatives=" << to_string(dopt.ic_derivatives) << '\n';
  out << "ic-time=" << format_double(dopt.initial_time.value_or(data.pde.bounds.t_lo)) << '\n';
  out << "arithmetic=" << to_string(dopt.arithmetic) << '\n';
  out << "threshold=" << format_double(oc.threshold) << '\n';
  out << "gate-norm=" << to_string(oc.gate_norm) << '\n';
  write_breakdown(out, b, data.pde);
  return 0;
}

int cmd_diff(const std::string& text, const std::string& notation, const std::string& wrt, int order, std::ostream& out) {
  const Notation n = parse_notation(notation);
  const auto v = parse_var(wrt);
  if (!v) throw UsageError("--wrt must be x, y or t");
  if (order != 1 && order != 2) throw UsageError("--order must be 1 or 2");
  Expr e = Expr::parse(text, n, ParseMode::Free);
  Expr d = order == 1 ? differentiate(e, *v) : second_derivative(e, *v);
  out << d.to_string() << '\n';
  out << "infix=" << render_infix(d) << '\n';
  return 0;
}

struct SweepOptions {
  double time_per_config = 5.0;
  std::string out_path;
  std::string algos = "rs,mcts,cmcts,pso,gp,sa";
  std::string depths = "1..30";
  std::string notations = "prefix,postfix";
  std::string token_sets = "vars,vars+const,vars+const+opt";
};

int cmd_sweep(const CommonOptions& common, const SweepOptions& so, SearchConfig base, std::ostream& out) {
  const CaseId id = parse_case(common.case_name);
  if (!(so.time_per_config > 0)) throw UsageError("--time-per-config must be positive");
  std::vector<Algorithm> algos;
  for (const auto& a : split(so.algos, ',')) algos.push_back(parse_algorithm(a));
  const auto [dlo, dhi] = parse_range(so.depths);
  if (dlo < 0 || dhi < dlo) throw UsageError("--depths expects min..max with 0 <= min <= max");
  std::vector<Notation> notations;
  for (const auto& n : split(so.notations, ',')) notations.push_back(parse_notation(n));
  std::vector<TokenSet> sets;
  for (const auto& s : split(so.token_sets, ',')) sets.push_back(parse_token_set(s));
  base.objective = common.objective();
  base.time_budget = so.time_per_config;
  const Dataset data = build_dataset(id, common.dataset());

  struct Row {
    Algorithm algo;
    int depth;
    Notation notation;
    TokenSet set;
    double mse;
  };
  std::vector<Row> rows;
  for (Algorithm a : algos)
    for (int d = dlo; d <= dhi; ++d)
      for (Notation n : notations)
        for (TokenSet s : sets) {
          SearchConfig cfg = base;
          cfg.algorithm = a;
          cfg.depth = d;
          cfg.notation = n;
          cfg.token_set = s;
          const SearchResult r = run_search(cfg, data);
          rows.push_back({a, d, n, s, r.empty ? std::numeric_limits<double>::infinity() : r.breakdown.total});
        }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) { return x.mse < y.mse; });

  std::ostringstream csv;
  csv << "#,Algorithm,Depth,Notation,MSE,Non-Optimizable Tokens,Optimizable Token\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    csv << i + 1 << ',' << display_name(r.algo) << ',' << r.depth << ',' << to_string(r.notation) << ','
        << mse6(r.mse) << ',' << (r.set != TokenSet::Vars ? "True" : "False") << ','
        << (r.set == TokenSet::VarsConstOpt ? "True" : "False") << '\n';
  }
  if (so.out_path.empty()) {
    out << csv.str();
  } else {
    std::ofstream f(so.out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + so.out_path + "'");
    f << csv.str();
    out << "rows=" << rows.size() << '\n' << "out=" << so.out_path << '\n';
  }
  return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fixed-depth symbolic regression for 2D advection-diffusion", "padesr"};
  app.require_subcommand(1);

  // search
  CommonOptions search_common;
  SearchConfig scfg;
  scfg.threads = default_threads();
  std::string s_algo, s_notation, s_tokens, s_seed_expr, s_out;
  auto* search = app.add_subcommand("search", "run one search and print its report");
  search_common.attach(search);
  search->add_option("--algo", s_algo, "rs|mcts|cmcts|pso|gp|sa")->required();
  search->add_option("--depth", scfg.depth, "depth budget")->required();
  search->add_option("--notation", s_notation, "prefix|postfix")->required();
  search->add_option("--tokens", s_tokens, "vars|vars+const|vars+const+opt")->required();
  search->add_option("--threads", scfg.threads, "worker threads (default $PADESR_THREADS or 1)");
  search->add_option("--time", scfg.time_budget, "time budget in seconds");
  search->add_option("--max-evals", scfg.max_evaluations, "stop after this many scored candidates (0 = no limit)");
  search->add_option("--seed", scfg.seed, "random seed");
  search->add_option("--seed-expr", s_seed_expr, "start expression for sa (free-mode tokens)");
  search->add_option("--out", s_out, "report file");

  // evaluate
  CommonOptions eval_common;
  std::string e_notation, e_expr, e_consts;
  std::vector<std::string> e_binds;
  auto* evaluate = app.add_subcommand("evaluate", "score one expression");
  eval_common.attach(evaluate);
  evaluate->add_option("--notation", e_notation, "prefix|postfix")->required();
  evaluate->add_option("--expr", e_expr, "tokens (free mode)")->required();
  evaluate->add_option("--bind", e_binds, "name=value for free names such as y_0");
  evaluate->add_option("--consts", e_consts, "comma-separated learnable constant values");

  // diff
  std::string d_expr, d_notation = "prefix", d_wrt, d_config;
  int d_order = 1;
  auto* diff = app.add_subcommand("diff", "differentiate an expression");
  diff->add_option("--expr", d_expr, "tokens (free mode)")->required();
  diff->add_option("--notation", d_notation, "prefix|postfix");
  diff->add_option("--wrt", d_wrt, "x|y|t")->required();
  diff->add_option("--order", d_order, "1 or 2");
  diff->add_option("--config", d_config, "key=value defaults file");

  // sweep
  CommonOptions sweep_common;
  SweepOptions so;
  SearchConfig wcfg;
  wcfg.threads = default_threads();
  auto* sweep = app.add_subcommand("sweep", "run the configuration grid and write a ranked CSV");
  sweep_common.attach(sweep);
  sweep->add_option("--time-per-config", so.time_per_config, "seconds per configuration");
  sweep->add_option("--out", so.out_path, "CSV path (stdout when omitted)");
  sweep->add_option("--algos", so.algos, "comma-separated algorithms");
  sweep->add_option("--depths", so.depths, "min..max");
  sweep->add_option("--notations", so.notations, "comma-separated notations");
  sweep->add_option("--token-sets", so.token_sets, "comma-separated token sets");
  sweep->add_option("--threads", wcfg.threads, "worker threads per configuration");
  sweep->add_option("--seed", wcfg.seed, "random seed");
  sweep->add_option("--max-evals", wcfg.max_evaluations, "per-configuration evaluation cap (0 = no limit)");

  try {
    merge_config_file(args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) err << sub->help();
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*search) {
      if (scfg.threads < 1) throw UsageError("--threads must be at least 1");
      if (!(scfg.time_budget > 0)) throw UsageError("--time must be positive");
      if (scfg.depth < 0) throw UsageError("--depth must be non-negative");
      scfg.algorithm = parse_algorithm(s_algo);
      scfg.notation = parse_notation(s_notation);
      scfg.token_set = parse_token_set(s_tokens);
      return cmd_search(search_common, scfg, s_seed_expr, s_out, out);
    }
    if (*evaluate) return cmd_evaluate(eval_common, e_notation, e_expr, e_binds, e_consts, out);
    if (*diff) return cmd_diff(d_expr, d_notation, d_wrt, d_order, out);
    if (*sweep) {
      if (wcfg.threads < 1) throw UsageError("--threads must be at least 1");
      return cmd_sweep(sweep_common, so, wcfg, out);
    }
  } catch (const ParseError& e) {
    err << "error: parse failed at token " << e.position() << ": " << e.what() << '\n';
    return 2;
  } catch (const StructureError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const UnsupportedOrder& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace padesr
