#ifndef LBFD_EXPR_HPP
#define LBFD_EXPR_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lbfd/error.hpp"
#include "lbfd/operator_poly.hpp"

namespace lbfd {

// Expression tree of the scheme-file language: rational literals (integers
// plus division), symbols, + - * /, integer powers and negation. There are
// no floating-point literals; write thirds as 1/3.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Integer, Symbol, Add, Sub, Mul, Div, Pow, Neg };
  Kind kind;
  Int value;            // Integer
  std::string symbol;   // Symbol
  ExprPtr lhs, rhs;     // binary nodes; Neg and Pow use lhs
  int exponent = 0;     // Pow

  static ExprPtr integer(Int v);
  static ExprPtr symbol_ref(std::string name);
  static ExprPtr binary(Kind k, ExprPtr a, ExprPtr b);
  static ExprPtr power(ExprPtr base, int exponent);
  static ExprPtr negate(ExprPtr a);
};

struct ParseError : UserError {
  int line, column;
  ParseError(const std::string& msg, int line, int column)
      : UserError(msg + " (line " + std::to_string(line) + ", column " +
                  std::to_string(column) + ")"),
        line(line), column(column) {}
};

// `line`/`column` seed the error positions for multi-line sources.
ExprPtr parse_expression(std::string_view text, int line = 1, int column = 1);

std::string render_expr(const Expr& e);
bool expr_equal(const ExprPtr& a, const ExprPtr& b);
void collect_symbols(const Expr& e, std::vector<std::string>& out);

// Evaluate with symbols restricted to declared parameters.
RationalCoeff eval_coeff(const Expr& e, const ParamSetPtr& params);

// Evaluate over the operator ring: parameters plus the shift generators
// x, y, z (those defined for `dim`). Division requires a coefficient or a
// unit divisor; negative powers require units.
OperatorPoly eval_operator(const Expr& e, int dim, const ParamSetPtr& params);

double eval_numeric(const Expr& e, const std::map<std::string, double>& bindings);
Rational eval_rational(const Expr& e, const std::map<std::string, Rational>& bindings);

// If e == c * m_sym for a pure-parameter c (no constant part), return c.
std::optional<RationalCoeff> linear_coefficient(const Expr& e, const std::string& moment_symbol,
                                                const ParamSetPtr& params);

}  // namespace lbfd

#endif
