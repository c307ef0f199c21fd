#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "einlab/common.hpp"

namespace einlab {

/*
 * Scalar expressions for chart metric components.
 *
 * Tokens: numbers (12, 3.5, .5, 1e-3), coordinates x1..xn, the operators
 * + - * / ^, parentheses, and the one-argument functions
 * sin cos exp sinh cosh sqrt.
 *
 * Precedence, tightest first:
 *   ^            right associative
 *   unary -
 *   * /          left associative
 *   + -          left associative
 *
 * So -x1^2 parses as -(x1^2) and x1^x2^2 as x1^(x2^2).
 */

/// Parse failure with a 1-based source position and the offending token.
struct ParseError : error {
  ParseError(const std::string& msg, int line_no, int column_no, std::string token_text);
  int line;
  int column;
  std::string token;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

class MetricExpression {
 public:
  /// Parses `source` with coordinates x1..x{n_vars}. `line` seeds error
  /// positions when the text comes from a multi-line document.
  static MetricExpression parse(const std::string& source, int n_vars, int line = 1);

  double eval(std::span<const double> coords) const;

  /// Round-trippable rendering: parse(print()) reproduces the same tree.
  std::string print() const;

  int n_vars() const { return n_vars_; }
  const std::string& source() const { return source_; }

  /// Structural equality of the parsed trees.
  friend bool operator==(const MetricExpression& a, const MetricExpression& b);
  friend bool operator!=(const MetricExpression& a, const MetricExpression& b) { return !(a == b); }

 private:
  MetricExpression(ExprPtr ast, std::string source, int n_vars);

  ExprPtr ast_;
  std::string source_;
  int n_vars_ = 0;
};

/// Parses a list of component expressions; list position becomes the error line.
std::vector<MetricExpression> parse_metric(const std::vector<std::string>& sources, int n_vars);

}  // namespace einlab
