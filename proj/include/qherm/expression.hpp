#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "qherm/types.hpp"

namespace qherm {

namespace detail {
struct Node;
}

/// Parsed real function of x.
///
/// Grammar, lowest to highest precedence: + and -, * and /, unary minus,
/// ^ (right-associative), atoms (number, x, pi, f(expr), (expr)).
/// Functions: sin cos tan exp log tanh cosh sinh sqrt abs.
class Expression {
 public:
  /// Throws ParseError with the 0-based offending position as detail.
  static Expression parse(std::string_view text);

  /// Throws EvalError (detail: x) on domain violations or non-finite
  /// results.
  double operator()(double x) const;

  RealSamples sample(const RealSamples& xs) const;

  /// Fully parenthesized rendering that re-parses to the same function.
  std::string to_string() const;

 private:
  explicit Expression(std::shared_ptr<const detail::Node> root)
      : root_(std::move(root)) {}
  std::shared_ptr<const detail::Node> root_;
};

}  // namespace qherm
