#include "lbfd/expr.hpp"

#include <cctype>

#include "lbfd/error.hpp"

namespace lbfd {

ExprPtr Expr::integer(Int v) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Integer;
  e->value = std::move(v);
  return e;
}

ExprPtr Expr::symbol_ref(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Symbol;
  e->symbol = std::move(name);
  return e;
}

ExprPtr Expr::binary(Kind k, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}

ExprPtr Expr::power(ExprPtr base, int exponent) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Pow;
  e->lhs = std::move(base);
  e->exponent = exponent;
  return e;
}

ExprPtr Expr::negate(ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Neg;
  e->lhs = std::move(a);
  return e;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, int line, int column)
      : text_(text), line_(line), col0_(column) {}

  ExprPtr parse() {
    ExprPtr e = sum();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_;
  int col0_;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, col0_ + static_cast<int>(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  ExprPtr sum() {
    ExprPtr e = product();
    while (true) {
      if (eat('+'))
        e = Expr::binary(Expr::Kind::Add, e, product());
      else if (eat('-'))
        e = Expr::binary(Expr::Kind::Sub, e, product());
      else
        return e;
    }
  }

  ExprPtr product() {
    ExprPtr e = factor();
    while (true) {
      if (eat('*'))
        e = Expr::binary(Expr::Kind::Mul, e, factor());
      else if (eat('/'))
        e = Expr::binary(Expr::Kind::Div, e, factor());
      else
        return e;
    }
  }

  ExprPtr factor() {
    if (eat('-')) return Expr::negate(factor());
    ExprPtr e = primary();
    if (eat('^')) {
      bool neg = eat('-');
      skip_ws();
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("expected integer exponent after '^'");
      long k = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        k = k * 10 + (text_[pos_] - '0');
        if (k > 1000000) fail("exponent too large");
        ++pos_;
      }
      e = Expr::power(e, neg ? -static_cast<int>(k) : static_cast<int>(k));
    }
    return e;
  }

  ExprPtr primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = sum();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Int v = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        v = v * 10 + (text_[pos_] - '0');
        ++pos_;
      }
      if (pos_ < text_.size() && text_[pos_] == '.')
        fail("floating-point literals are not allowed; use rationals like 1/3");
      return Expr::integer(std::move(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        name += text_[pos_];
        ++pos_;
      }
      return Expr::symbol_ref(std::move(name));
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

ExprPtr parse_expression(std::string_view text, int line, int column) {
  return Parser(text, line, column).parse();
}

std::string render_expr(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Integer:
      return e.value.str();
    case Expr::Kind::Symbol:
      return e.symbol;
    case Expr::Kind::Add:
      return "(" + render_expr(*e.lhs) + "+" + render_expr(*e.rhs) + ")";
    case Expr::Kind::Sub:
      return "(" + render_expr(*e.lhs) + "-" + render_expr(*e.rhs) + ")";
    case Expr::Kind::Mul:
      return "(" + render_expr(*e.lhs) + "*" + render_expr(*e.rhs) + ")";
    case Expr::Kind::Div:
      return "(" + render_expr(*e.lhs) + "/" + render_expr(*e.rhs) + ")";
    case Expr::Kind::Pow: {
      std::string base = render_expr(*e.lhs);
      if (e.lhs->kind != Expr::Kind::Integer && e.lhs->kind != Expr::Kind::Symbol)
        base = "(" + base + ")";
      return base + "^" + std::to_string(e.exponent);
    }
    case Expr::Kind::Neg:
      return "-" + render_expr(*e.lhs);
  }
  return "";
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Expr::Kind::Integer:
      return a->value == b->value;
    case Expr::Kind::Symbol:
      return a->symbol == b->symbol;
    case Expr::Kind::Pow:
      return a->exponent == b->exponent && expr_equal(a->lhs, b->lhs);
    case Expr::Kind::Neg:
      return expr_equal(a->lhs, b->lhs);
    default:
      return expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
  }
}

void collect_symbols(const Expr& e, std::vector<std::string>& out) {
  switch (e.kind) {
    case Expr::Kind::Symbol:
      out.push_back(e.symbol);
      return;
    case Expr::Kind::Integer:
      return;
    case Expr::Kind::Pow:
    case Expr::Kind::Neg:
      collect_symbols(*e.lhs, out);
      return;
    default:
      collect_symbols(*e.lhs, out);
      collect_symbols(*e.rhs, out);
      return;
  }
}

OperatorPoly eval_operator(const Expr& e, int dim, const ParamSetPtr& params) {
  switch (e.kind) {
    case Expr::Kind::Integer:
      return OperatorPoly::constant(
          RationalCoeff::constant(Rational(e.value), params), dim);
    case Expr::Kind::Symbol: {
      if (params->index_of(e.symbol) >= 0)
        return OperatorPoly::constant(RationalCoeff::parameter(e.symbol, params), dim);
      if (e.symbol == "x" && dim >= 1) return OperatorPoly::shift_op({1, 0, 0}, dim, params);
      if (e.symbol == "y" && dim >= 2) return OperatorPoly::shift_op({0, 1, 0}, dim, params);
      if (e.symbol == "z" && dim >= 3) return OperatorPoly::shift_op({0, 0, 1}, dim, params);
      throw UserError("unknown symbol: " + e.symbol);
    }
    case Expr::Kind::Add:
      return eval_operator(*e.lhs, dim, params) + eval_operator(*e.rhs, dim, params);
    case Expr::Kind::Sub:
      return eval_operator(*e.lhs, dim, params) - eval_operator(*e.rhs, dim, params);
    case Expr::Kind::Mul:
      return eval_operator(*e.lhs, dim, params) * eval_operator(*e.rhs, dim, params);
    case Expr::Kind::Div: {
      OperatorPoly a = eval_operator(*e.lhs, dim, params);
      OperatorPoly b = eval_operator(*e.rhs, dim, params);
      if (b.is_zero()) throw UserError("division by zero");
      if (b.is_coefficient()) return a.scaled(b.as_coefficient().inverse());
      if (b.is_unit()) return a * b.unit_inverse();
      throw UserError("division by a non-unit operator: " + b.str());
    }
    case Expr::Kind::Pow: {
      OperatorPoly b = eval_operator(*e.lhs, dim, params);
      if (e.exponent >= 0) return b.pow(e.exponent);
      if (b.is_coefficient())
        return OperatorPoly::constant(b.as_coefficient().pow(e.exponent), dim);
      if (b.is_unit()) return b.unit_inverse().pow(-e.exponent);
      throw UserError("negative power of a non-unit operator: " + b.str());
    }
    case Expr::Kind::Neg:
      return -eval_operator(*e.lhs, dim, params);
  }
  throw Error("unreachable");
}

RationalCoeff eval_coeff(const Expr& e, const ParamSetPtr& params) {
  OperatorPoly p = eval_operator(e, 1, params);
  if (!p.is_coefficient()) throw UserError("shift operators not allowed here: " + p.str());
  return p.as_coefficient();
}

double eval_numeric(const Expr& e, const std::map<std::string, double>& bindings) {
  switch (e.kind) {
    case Expr::Kind::Integer:
      return to_double(Rational(e.value));
    case Expr::Kind::Symbol: {
      auto it = bindings.find(e.symbol);
      if (it == bindings.end()) throw UserError("unbound symbol: " + e.symbol);
      return it->second;
    }
    case Expr::Kind::Add:
      return eval_numeric(*e.lhs, bindings) + eval_numeric(*e.rhs, bindings);
    case Expr::Kind::Sub:
      return eval_numeric(*e.lhs, bindings) - eval_numeric(*e.rhs, bindings);
    case Expr::Kind::Mul:
      return eval_numeric(*e.lhs, bindings) * eval_numeric(*e.rhs, bindings);
    case Expr::Kind::Div:
      return eval_numeric(*e.lhs, bindings) / eval_numeric(*e.rhs, bindings);
    case Expr::Kind::Pow: {
      double b = eval_numeric(*e.lhs, bindings);
      double r = 1.0;
      int k = e.exponent >= 0 ? e.exponent : -e.exponent;
      for (int i = 0; i < k; ++i) r *= b;
      return e.exponent >= 0 ? r : 1.0 / r;
    }
    case Expr::Kind::Neg:
      return -eval_numeric(*e.lhs, bindings);
  }
  throw Error("unreachable");
}

Rational eval_rational(const Expr& e, const std::map<std::string, Rational>& bindings) {
  switch (e.kind) {
    case Expr::Kind::Integer:
      return Rational(e.value);
    case Expr::Kind::Symbol: {
      auto it = bindings.find(e.symbol);
      if (it == bindings.end()) throw UserError("unbound symbol: " + e.symbol);
      return it->second;
    }
    case Expr::Kind::Add:
      return eval_rational(*e.lhs, bindings) + eval_rational(*e.rhs, bindings);
    case Expr::Kind::Sub:
      return eval_rational(*e.lhs, bindings) - eval_rational(*e.rhs, bindings);
    case Expr::Kind::Mul:
      return eval_rational(*e.lhs, bindings) * eval_rational(*e.rhs, bindings);
    case Expr::Kind::Div: {
      Rational d = eval_rational(*e.rhs, bindings);
      if (d == 0) throw UserError("division by zero");
      return eval_rational(*e.lhs, bindings) / d;
    }
    case Expr::Kind::Pow: {
      Rational b = eval_rational(*e.lhs, bindings);
      Rational r = 1;
      int k = e.exponent >= 0 ? e.exponent : -e.exponent;
      for (int i = 0; i < k; ++i) r *= b;
      if (e.exponent < 0) {
        if (r == 0) throw UserError("division by zero");
        r = Rational(1) / r;
      }
      return r;
    }
    case Expr::Kind::Neg:
      return -eval_rational(*e.lhs, bindings);
  }
  throw Error("unreachable");
}

namespace {

struct AffineValue {
  RationalCoeff a, b;  // a + b * m
};

AffineValue eval_affine(const Expr& e, const std::string& m, const ParamSetPtr& params) {
  auto pure = [&](RationalCoeff c) { return AffineValue{std::move(c), RationalCoeff::zero(params)}; };
  switch (e.kind) {
    case Expr::Kind::Integer:
      return pure(RationalCoeff::constant(Rational(e.value), params));
    case Expr::Kind::Symbol:
      if (e.symbol == m)
        return AffineValue{RationalCoeff::zero(params), RationalCoeff::one(params)};
      return pure(RationalCoeff::parameter(e.symbol, params));
    case Expr::Kind::Add: {
      AffineValue l = eval_affine(*e.lhs, m, params), r = eval_affine(*e.rhs, m, params);
      return {l.a + r.a, l.b + r.b};
    }
    case Expr::Kind::Sub: {
      AffineValue l = eval_affine(*e.lhs, m, params), r = eval_affine(*e.rhs, m, params);
      return {l.a - r.a, l.b - r.b};
    }
    case Expr::Kind::Mul: {
      AffineValue l = eval_affine(*e.lhs, m, params), r = eval_affine(*e.rhs, m, params);
      if (!l.b.is_zero() && !r.b.is_zero()) throw UserError("equilibrium is not linear");
      return {l.a * r.a, l.a * r.b + l.b * r.a};
    }
    case Expr::Kind::Div: {
      AffineValue l = eval_affine(*e.lhs, m, params), r = eval_affine(*e.rhs, m, params);
      if (!r.b.is_zero()) throw UserError("equilibrium is not linear");
      return {l.a / r.a, l.b / r.a};
    }
    case Expr::Kind::Pow: {
      AffineValue l = eval_affine(*e.lhs, m, params);
      if (!l.b.is_zero()) {
        if (e.exponent == 1) return l;
        throw UserError("equilibrium is not linear");
      }
      return {l.a.pow(e.exponent), RationalCoeff::zero(params)};
    }
    case Expr::Kind::Neg: {
      AffineValue l = eval_affine(*e.lhs, m, params);
      return {-l.a, -l.b};
    }
  }
  throw Error("unreachable");
}

}  // namespace

std::optional<RationalCoeff> linear_coefficient(const Expr& e, const std::string& moment_symbol,
                                                const ParamSetPtr& params) {
  try {
    AffineValue v = eval_affine(e, moment_symbol, params);
    if (!v.a.is_zero()) return std::nullopt;  // affine but not linear
    return v.b;
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace lbfd
