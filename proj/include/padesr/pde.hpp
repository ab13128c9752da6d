#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "padesr/diff.hpp"
#include "padesr/eval.hpp"
#include "padesr/expr.hpp"

namespace padesr {

enum class CaseId { Case1, Case2 };

std::string_view to_string(CaseId id);
CaseId parse_case(std::string_view text);

enum class BcKind { DerivativeZero, PeriodicValue, PeriodicDerivative };

struct BoundaryCondition {
  BcKind kind;
  Var axis;
  bool at_hi = false;  ///< wall for DerivativeZero; unused for periodic conditions
  std::string name;
};

struct PdeCase {
  CaseId id = CaseId::Case1;
  Bounds bounds;
  double kappa = 1.0;
  double ic_xc = 0, ic_yc = 0;
  double ic_scale = 0.08;
  std::vector<BoundaryCondition> bcs;

  double ux(double x, double y) const;
  double uy(double x, double y) const;
  /// Gaussian initial condition and its spatial derivatives at (x, y), in IcSlot order.
  std::array<double, kIcCount> ic(double x, double y) const;
  /// u_x and u_y as prefix token strings (for building the residual as one expression).
  std::string ux_prefix() const;
  std::string uy_prefix() const;
};

PdeCase make_case(CaseId id);

struct MeshSize {
  int nx = 10, ny = 10, nt = 10;
};

/// How the IC feature's derivative tokens are valued.
///   Analytic: I_x, I_y, I_xx, I_xy, I_yy of the Gaussian.
///   Frozen:   all zero, i.e. I is treated as a plain data column.
enum class IcDerivatives { Analytic, Frozen };

std::string_view to_string(IcDerivatives m);
IcDerivatives parse_ic_derivatives(std::string_view text);

struct DatasetOptions {
  MeshSize mesh;
  IcDerivatives ic_derivatives = IcDerivatives::Analytic;
  /// Time of the initial-condition plane; defaults to t_lo.
  std::optional<double> initial_time;
  Arithmetic arithmetic = Arithmetic::Strict;
};

/// Mesh values for one case. The interior layout is x-major, then y, then t.
struct Dataset {
  PdeCase pde;
  DatasetOptions options;
  std::vector<double> xs, ys, ts;
  PointSet interior;
  PointSet x_lo, x_hi;  ///< (y, t) planes at x = x_lo / x_hi
  PointSet y_lo, y_hi;  ///< (x, t) planes at y = y_lo / y_hi
  PointSet initial;     ///< (x, y) plane at the IC time; ic[kIc] is the target
  std::vector<double> ux, uy;
};

/// Inclusive linspace: v_i = lo + i*(hi-lo)/(n-1).
std::vector<double> linspace(double lo, double hi, int n);

Dataset build_dataset(CaseId id, const DatasetOptions& options = {});

enum class GateNorm { MaxAbs, MeanAbs };

std::string_view to_string(GateNorm g);
GateNorm parse_gate_norm(std::string_view text);

struct ObjectiveConfig {
  double threshold = 1.0 / std::sqrt(2.0);
  GateNorm gate_norm = GateNorm::MaxAbs;
  /// Candidates whose derivatives grow beyond this are scored +inf.
  std::size_t max_derivative_tokens = 1u << 16;
  /// Still compute the components of a gate-rejected candidate (for reporting).
  bool components_when_rejected = false;
};

struct MseBreakdown {
  double interior = 0;
  std::vector<double> boundary;
  double initial = 0;
  double total = 0;
  bool gate_rejected = false;
  bool faulted = false;
  /// Gate metric of dT/dx, dT/dy, dT/dt (NaN when not computed).
  std::array<double, 3> gate{std::nan(""), std::nan(""), std::nan("")};
  std::string diagnostic;
};

/// interior + each boundary term + initial, summed in that order.
double sum_components(const MseBreakdown& b);

/// Per-thread scratch for the objective.
struct ObjectiveWorkspace {
  DiffScratch scratch;
  Evaluator eval;
  std::array<std::vector<Token>, 5> deriv;  // T_x, T_y, T_t, T_xx, T_yy
  std::array<std::vector<double>, 6> grid;
  std::vector<double> side;
};

struct GateResult {
  bool pass = false;
  bool faulted = false;
  std::array<double, 3> values{};
};

double interior_mse(const Expr& T, const Dataset& data, std::span<const double> consts = {});
std::vector<double> boundary_mse(const Expr& T, const Dataset& data, std::span<const double> consts = {});
double initial_mse(const Expr& T, const Dataset& data, std::span<const double> consts = {});
GateResult nontriviality_gate(const Expr& T, const Dataset& data, std::span<const double> consts, double threshold,
                              GateNorm norm = GateNorm::MaxAbs);

MseBreakdown objective(const Expr& T, const Dataset& data, std::span<const double> consts,
                       const ObjectiveConfig& config, ObjectiveWorkspace& ws);
MseBreakdown objective(const Expr& T, const Dataset& data, std::span<const double> consts = {},
                       const ObjectiveConfig& config = {});

/// T_t + u_x T_x + u_y T_y - kappa (T_xx + T_yy) assembled as a single expression.
Expr residual_expression(const Expr& T, const PdeCase& pde);

}  // namespace padesr
