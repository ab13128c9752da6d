#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "padesr/expr.hpp"

namespace padesr {

/// An IC derivative above total order 2 would be needed.
class UnsupportedOrder : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The derivative grew past the caller's token limit.
class DerivativeTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reusable buffers; after the first few calls differentiation runs without heap traffic.
struct DiffScratch {
  std::vector<std::size_t> extents;
  std::vector<Token> first;
};

inline constexpr std::size_t kNoTokenLimit = std::numeric_limits<std::size_t>::max();

/// Writes d(in)/dv to `out` (cleared first) in the same notation.
void differentiate_into(std::span<const Token> in, Notation n, Var v, DiffScratch& scratch, std::vector<Token>& out,
                        std::size_t max_tokens = kNoTokenLimit);

/// d2(in)/dv2 via two passes; uses scratch.first for the intermediate.
void second_derivative_into(std::span<const Token> in, Notation n, Var v, DiffScratch& scratch,
                            std::vector<Token>& out, std::size_t max_tokens = kNoTokenLimit);

Expr differentiate(const Expr& e, Var v);
Expr second_derivative(const Expr& e, Var v);

/// Identity rules plus folding of subexpressions made only of numeric literals, to a fixed point.
/// Named bound literals and learnable constants are left alone.
Expr simplify(const Expr& e);

}  // namespace padesr
