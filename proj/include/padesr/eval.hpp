#pragma once

#include <array>
#include <cmath>
#include <span>
#include <string_view>
#include <vector>

#include "padesr/expr.hpp"

namespace padesr {

struct Bounds {
  double x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1, t_lo = 0, t_hi = 1;
  double value(Bound b) const;
};

/// Order of the IC grids in PointSet::ic.
enum IcSlot { kIc = 0, kIcX, kIcY, kIcXX, kIcXY, kIcYY, kIcCount };

/// Slot of an IcFeature / IcDerivative token.
int ic_slot(const Token& t);

/// A set of evaluation points with the per-point leaf values.
struct PointSet {
  Bounds bounds;
  std::vector<double> x, y, t;
  std::array<std::vector<double>, kIcCount> ic;

  std::size_t size() const { return x.size(); }
};

/// How domain faults are tracked.
///   Strict: every non-finite operator result becomes NaN, so a fault anywhere poisons the point.
///   Ieee:   plain IEEE arithmetic (1/0 = inf, sech(inf) = 0); only a non-finite final value is a fault.
enum class Arithmetic { Strict, Ieee };
std::string_view to_string(Arithmetic a);
Arithmetic parse_arithmetic(std::string_view text);

struct Grid {
  std::vector<double> values;
  bool fault = false;
};

inline double sech(double v) { return 2.0 / (std::exp(v) + std::exp(-v)); }

double apply_unary(UnaryOp op, double v);
double apply_binary(BinaryOp op, double a, double b);

/// Stack machine over whole grids. Buffers are reused between calls, so one
/// Evaluator per thread avoids allocation in the search loop.
class Evaluator {
 public:
  explicit Evaluator(Arithmetic arithmetic = Arithmetic::Strict) : arithmetic_(arithmetic) {}
  void set_arithmetic(Arithmetic a) { arithmetic_ = a; }
  Arithmetic arithmetic() const { return arithmetic_; }

  /// Writes values to `out`; returns true when any value is non-finite.
  bool evaluate(std::span<const Token> tokens, Notation n, const PointSet& points,
                std::span<const double> consts, std::vector<double>& out);
  Grid evaluate(const Expr& e, const PointSet& points, std::span<const double> consts = {});

 private:
  Arithmetic arithmetic_;
  std::vector<std::vector<double>> pool_;
};

Grid eval_grid(const Expr& e, const PointSet& points, std::span<const double> consts = {},
               Arithmetic arithmetic = Arithmetic::Strict);

/// Scalar evaluation; `ic` holds I, I_x, I_y, I_xx, I_xy, I_yy at the point.
double eval_point(const Expr& e, double x, double y, double t, const std::array<double, kIcCount>& ic,
                  const Bounds& bounds, std::span<const double> consts = {});

}  // namespace padesr
