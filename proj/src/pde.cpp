#include "padesr/pde.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace padesr {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string_view to_string(CaseId id) { return id == CaseId::Case1 ? "case1" : "case2"; }

CaseId parse_case(std::string_view text) {
  if (text == "case1") return CaseId::Case1;
  if (text == "case2") return CaseId::Case2;
  throw std::invalid_argument("unknown case '" + std::string(text) + "'");
}

std::string_view to_string(IcDerivatives m) { return m == IcDerivatives::Analytic ? "analytic" : "frozen"; }

IcDerivatives parse_ic_derivatives(std::string_view text) {
  if (text == "analytic") return IcDerivatives::Analytic;
  if (text == "frozen") return IcDerivatives::Frozen;
  throw std::invalid_argument("unknown IC derivative mode '" + std::string(text) + "'");
}

std::string_view to_string(GateNorm g) { return g == GateNorm::MaxAbs ? "max" : "mean"; }

GateNorm parse_gate_norm(std::string_view text) {
  if (text == "max") return GateNorm::MaxAbs;
  if (text == "mean") return GateNorm::MeanAbs;
  throw std::invalid_argument("unknown gate norm '" + std::string(text) + "'");
}

double PdeCase::ux(double x, double y) const {
  (void)x;
  return id == CaseId::Case1 ? 1.0 - y * y : std::sin(4.0 * y);
}

double PdeCase::uy(double x, double y) const {
  (void)y;
  return id == CaseId::Case1 ? 0.0 : std::cos(4.0 * x);
}

std::string PdeCase::ux_prefix() const { return id == CaseId::Case1 ? "- 1 * y y" : "sin * 4 y"; }
std::string PdeCase::uy_prefix() const { return id == CaseId::Case1 ? "0" : "cos * 4 x"; }

std::array<double, kIcCount> PdeCase::ic(double x, double y) const {
  const double dx = x - ic_xc, dy = y - ic_yc;
  const double g = std::exp(-(dx * dx + dy * dy)) / ic_scale;
  std::array<double, kIcCount> v{};
  v[kIc] = g;
  v[kIcX] = -2.0 * dx * g;
  v[kIcY] = -2.0 * dy * g;
  v[kIcXX] = (4.0 * dx * dx - 2.0) * g;
  v[kIcXY] = 4.0 * dx * dy * g;
  v[kIcYY] = (4.0 * dy * dy - 2.0) * g;
  return v;
}

PdeCase make_case(CaseId id) {
  PdeCase c;
  c.id = id;
  c.kappa = 1.0;
  if (id == CaseId::Case1) {
    c.bounds = {0.1, 2.1, -1.1, 1.1, 0.1, 20.0};
    c.ic_xc = 1.1;
    c.ic_yc = 0.0;
    c.bcs = {
        {BcKind::DerivativeZero, Var::Y, false, "dTdy_at_y_lo"},
        {BcKind::DerivativeZero, Var::Y, true, "dTdy_at_y_hi"},
        {BcKind::PeriodicValue, Var::X, false, "periodic_T_x"},
        {BcKind::PeriodicDerivative, Var::X, false, "periodic_dTdx_x"},
    };
  } else {
    const double two_pi = 2.0 * std::numbers::pi;
    c.bounds = {0.1, two_pi, 0.1, two_pi, 0.1, 20.0};
    c.ic_xc = std::numbers::pi;
    c.ic_yc = std::numbers::pi;
    c.bcs = {
        {BcKind::PeriodicValue, Var::X, false, "periodic_T_x"},
        {BcKind::PeriodicDerivative, Var::X, false, "periodic_dTdx_x"},
        {BcKind::PeriodicValue, Var::Y, false, "periodic_T_y"},
        {BcKind::PeriodicDerivative, Var::Y, false, "periodic_dTdy_y"},
    };
  }
  return c;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) throw std::invalid_argument("mesh size must be at least 2 per axis");
  std::vector<double> v(static_cast<std::size_t>(n));
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + i * step;
  return v;
}

namespace {

void add_point(PointSet& p, const PdeCase& pde, IcDerivatives mode, double x, double y, double t) {
  p.x.push_back(x);
  p.y.push_back(y);
  p.t.push_back(t);
  auto ic = pde.ic(x, y);
  for (int s = 0; s < kIcCount; ++s) p.ic[s].push_back(s == kIc || mode == IcDerivatives::Analytic ? ic[s] : 0.0);
}

}  // namespace

Dataset build_dataset(CaseId id, const DatasetOptions& options) {
  Dataset d;
  d.pde = make_case(id);
  d.options = options;
  const Bounds& b = d.pde.bounds;
  const auto mode = options.ic_derivatives;
  d.xs = linspace(b.x_lo, b.x_hi, options.mesh.nx);
  d.ys = linspace(b.y_lo, b.y_hi, options.mesh.ny);
  d.ts = linspace(b.t_lo, b.t_hi, options.mesh.nt);
  for (PointSet* p : {&d.interior, &d.x_lo, &d.x_hi, &d.y_lo, &d.y_hi, &d.initial}) p->bounds = b;

  for (double x : d.xs)
    for (double y : d.ys)
      for (double t : d.ts) {
        add_point(d.interior, d.pde, mode, x, y, t);
        d.ux.push_back(d.pde.ux(x, y));
        d.uy.push_back(d.pde.uy(x, y));
      }
  for (double y : d.ys)
    for (double t : d.ts) {
      add_point(d.x_lo, d.pde, mode, b.x_lo, y, t);
      add_point(d.x_hi, d.pde, mode, b.x_hi, y, t);
    }
  for (double x : d.xs)
    for (double t : d.ts) {
      add_point(d.y_lo, d.pde, mode, x, b.y_lo, t);
      add_point(d.y_hi, d.pde, mode, x, b.y_hi, t);
    }
  const double t0 = options.initial_time.value_or(b.t_lo);
  for (double x : d.xs)
    for (double y : d.ys) add_point(d.initial, d.pde, mode, x, y, t0);
  return d;
}

double sum_components(const MseBreakdown& b) {
  double total = b.interior;
  for (double v : b.boundary) total += v;
  total += b.initial;
  return total;
}

namespace {

double mean_sq(const std::vector<double>& v) {
  double s = 0;
  for (double a : v) s += a * a;
  return s / static_cast<double>(v.size());
}

double mean_sq_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s / static_cast<double>(a.size());
}

double gate_metric(const std::vector<double>& v, GateNorm norm) {
  double m = 0;
  if (norm == GateNorm::MaxAbs) {
    for (double a : v) m = std::max(m, std::abs(a));
    return m;
  }
  for (double a : v) m += std::abs(a);
  return m / static_cast<double>(v.size());
}

double finite_or_inf(double v) { return std::isfinite(v) ? v : kInf; }

// Pieces shared by the public helpers and the full objective.
struct Pass {
  const Expr& T;
  const Dataset& data;
  std::span<const double> consts;
  ObjectiveWorkspace& ws;
  std::size_t max_tokens;

  std::span<const Token> tokens() const { return T.tokens(); }
  Notation notation() const { return T.notation(); }

  // ws.deriv[k] for k = 0..4 holds T_x, T_y, T_t, T_xx, T_yy.
  void first() {
    differentiate_into(tokens(), notation(), Var::X, ws.scratch, ws.deriv[0], max_tokens);
    differentiate_into(tokens(), notation(), Var::Y, ws.scratch, ws.deriv[1], max_tokens);
    differentiate_into(tokens(), notation(), Var::T, ws.scratch, ws.deriv[2], max_tokens);
  }
  void second() {
    differentiate_into(ws.deriv[0], notation(), Var::X, ws.scratch, ws.deriv[3], max_tokens);
    differentiate_into(ws.deriv[1], notation(), Var::Y, ws.scratch, ws.deriv[4], max_tokens);
  }
  bool eval(std::span<const Token> toks, const PointSet& p, std::vector<double>& out) {
    ws.eval.set_arithmetic(data.options.arithmetic);
    return ws.eval.evaluate(toks, notation(), p, consts, out);
  }

  double interior(bool have_first_grids) {
    auto& g = ws.grid;
    bool fault = false;
    if (!have_first_grids)
      for (int k = 0; k < 3; ++k) fault |= eval(ws.deriv[k], data.interior, g[k + 1]);
    fault |= eval(ws.deriv[3], data.interior, g[4]);
    fault |= eval(ws.deriv[4], data.interior, g[5]);
    if (fault) return kInf;
    const double kappa = data.pde.kappa;
    const std::size_t n = g[1].size();
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = g[3][i] + data.ux[i] * g[1][i] + data.uy[i] * g[2][i] - kappa * (g[4][i] + g[5][i]);
      s += r * r;
    }
    return finite_or_inf(s / static_cast<double>(n));
  }

  double boundary(const BoundaryCondition& bc) {
    auto& a = ws.grid[4];
    auto& b = ws.side;
    if (bc.kind == BcKind::DerivativeZero) {
      const auto& toks = bc.axis == Var::X ? ws.deriv[0] : ws.deriv[1];
      const PointSet& wall = bc.axis == Var::X ? (bc.at_hi ? data.x_hi : data.x_lo)
                                               : (bc.at_hi ? data.y_hi : data.y_lo);
      if (eval(toks, wall, a)) return kInf;
      return finite_or_inf(mean_sq(a));
    }
    const PointSet& lo = bc.axis == Var::X ? data.x_lo : data.y_lo;
    const PointSet& hi = bc.axis == Var::X ? data.x_hi : data.y_hi;
    std::span<const Token> toks = tokens();
    if (bc.kind == BcKind::PeriodicDerivative) toks = bc.axis == Var::X ? ws.deriv[0] : ws.deriv[1];
    if (eval(toks, lo, a) | eval(toks, hi, b)) return kInf;
    return finite_or_inf(mean_sq_diff(a, b));
  }

  double initial() {
    auto& a = ws.grid[4];
    if (eval(tokens(), data.initial, a)) return kInf;
    return finite_or_inf(mean_sq_diff(a, data.initial.ic[kIc]));
  }
};

}  // namespace

double interior_mse(const Expr& T, const Dataset& data, std::span<const double> consts) {
  ObjectiveWorkspace ws;
  Pass p{T, data, consts, ws, kNoTokenLimit};
  if (p.eval(T.tokens(), data.interior, ws.grid[0])) return kInf;
  try {
    p.first();
    p.second();
  } catch (const UnsupportedOrder&) {
    return kInf;
  }
  return p.interior(false);
}

std::vector<double> boundary_mse(const Expr& T, const Dataset& data, std::span<const double> consts) {
  ObjectiveWorkspace ws;
  Pass p{T, data, consts, ws, kNoTokenLimit};
  std::vector<double> out;
  try {
    p.first();
  } catch (const UnsupportedOrder&) {
    return std::vector<double>(data.pde.bcs.size(), kInf);
  }
  for (const auto& bc : data.pde.bcs) out.push_back(p.boundary(bc));
  return out;
}

double initial_mse(const Expr& T, const Dataset& data, std::span<const double> consts) {
  ObjectiveWorkspace ws;
  Pass p{T, data, consts, ws, kNoTokenLimit};
  return p.initial();
}

GateResult nontriviality_gate(const Expr& T, const Dataset& data, std::span<const double> consts, double threshold,
                              GateNorm norm) {
  ObjectiveWorkspace ws;
  Pass p{T, data, consts, ws, kNoTokenLimit};
  GateResult r;
  if (p.eval(T.tokens(), data.interior, ws.grid[0])) {
    r.faulted = true;
    return r;
  }
  try {
    p.first();
  } catch (const UnsupportedOrder&) {
    r.faulted = true;
    return r;
  }
  r.pass = true;
  for (int k = 0; k < 3; ++k) {
    if (p.eval(ws.deriv[k], data.interior, ws.grid[k + 1])) {
      r.faulted = true;
      r.pass = false;
      r.values[k] = std::nan("");
      continue;
    }
    // gate order is x, y, t which matches deriv order
    r.values[k] = gate_metric(ws.grid[k + 1], norm);
    if (!(r.values[k] >= threshold)) r.pass = false;
  }
  return r;
}

MseBreakdown objective(const Expr& T, const Dataset& data, std::span<const double> consts,
                       const ObjectiveConfig& config, ObjectiveWorkspace& ws) {
  MseBreakdown out;
  const std::size_t nbc = data.pde.bcs.size();
  auto give_up = [&](std::string why) {
    out.interior = out.initial = out.total = kInf;
    out.boundary.assign(nbc, kInf);
    out.faulted = true;
    out.diagnostic = std::move(why);
    return out;
  };

  Pass p{T, data, consts, ws, config.max_derivative_tokens};
  if (p.eval(T.tokens(), data.interior, ws.grid[0])) return give_up("expression is not finite on the interior mesh");
  try {
    p.first();
  } catch (const std::runtime_error& e) {
    return give_up(e.what());
  }
  bool fault = false;
  for (int k = 0; k < 3; ++k) {
    fault |= p.eval(ws.deriv[k], data.interior, ws.grid[k + 1]);
    out.gate[k] = gate_metric(ws.grid[k + 1], config.gate_norm);
  }
  if (fault) return give_up("first derivative is not finite on the interior mesh");
  for (double g : out.gate)
    if (!(g >= config.threshold)) out.gate_rejected = true;
  if (out.gate_rejected && !config.components_when_rejected) {
    out.interior = out.initial = out.total = kInf;
    out.boundary.assign(nbc, kInf);
    out.diagnostic = "rejected by the non-triviality gate";
    return out;
  }

  try {
    p.second();
  } catch (const std::runtime_error& e) {
    return give_up(e.what());
  }
  out.interior = p.interior(true);
  out.boundary.reserve(nbc);
  for (const auto& bc : data.pde.bcs) out.boundary.push_back(p.boundary(bc));
  out.initial = p.initial();
  const double total = sum_components(out);
  if (!std::isfinite(total)) {
    out.faulted = true;
    out.diagnostic = "a component is not finite";
    out.total = kInf;
  } else if (out.gate_rejected) {
    out.diagnostic = "rejected by the non-triviality gate";
    out.total = kInf;
  } else {
    out.total = total;
  }
  return out;
}

MseBreakdown objective(const Expr& T, const Dataset& data, std::span<const double> consts,
                       const ObjectiveConfig& config) {
  ObjectiveWorkspace ws;
  return objective(T, data, consts, config, ws);
}

Expr residual_expression(const Expr& T, const PdeCase& pde) {
  const Expr pre = convert_notation(T, Notation::Prefix);
  auto d = [&](Var v) { return differentiate(pre, v).tokens(); };
  auto dd = [&](Var v) { return second_derivative(pre, v).tokens(); };
  auto parse = [](const std::string& s) {
    std::vector<Token> toks;
    std::istringstream in(s);
    std::string w;
    while (in >> w) toks.push_back(*parse_token(w, ParseMode::SearchAlphabet));
    return toks;
  };
  std::vector<Token> out;
  auto put = [&](const std::vector<Token>& v) { out.insert(out.end(), v.begin(), v.end()); };
  // - + + Tt * ux Tx * uy Ty * kappa + Txx Tyy
  put(parse("- + +"));
  put(d(Var::T));
  put(parse("*"));
  put(parse(pde.ux_prefix()));
  put(d(Var::X));
  put(parse("*"));
  put(parse(pde.uy_prefix()));
  put(d(Var::Y));
  put(parse("*"));
  out.push_back(Token::literal(pde.kappa));
  put(parse("+"));
  put(dd(Var::X));
  put(dd(Var::Y));
  Expr r(Notation::Prefix, std::move(out));
  return convert_notation(r, T.notation());
}

}  // namespace padesr
