#ifndef LBFD_RATIONAL_COEFF_HPP
#define LBFD_RATIONAL_COEFF_HPP

#include <map>
#include <optional>
#include <string>

#include "lbfd/param_poly.hpp"

namespace lbfd {

// Rational function of the scheme parameters, num/den with den != 0.
// Canonical form: the pair carries no common rational content, the
// denominator has integer coefficients and a positive leading term, and
// obvious common factors (monomials, exact divisors) are cancelled.
class RationalCoeff {
 public:
  RationalCoeff();  // zero over the empty parameter set
  RationalCoeff(ParamPoly num, ParamPoly den);

  static RationalCoeff zero(ParamSetPtr params);
  static RationalCoeff one(ParamSetPtr params);
  static RationalCoeff constant(Rational value, ParamSetPtr params = empty_param_set());
  static RationalCoeff integer(long v) { return constant(Rational(v)); }
  static RationalCoeff parameter(std::string_view name, ParamSetPtr params);

  const ParamPoly& num() const { return num_; }
  const ParamPoly& den() const { return den_; }
  const ParamSetPtr& params() const { return num_.params(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  std::optional<Rational> constant_value() const;

  RationalCoeff operator-() const;
  RationalCoeff operator+(const RationalCoeff& o) const;
  RationalCoeff operator-(const RationalCoeff& o) const;
  RationalCoeff operator*(const RationalCoeff& o) const;
  RationalCoeff operator/(const RationalCoeff& o) const;  // throws on zero divisor
  RationalCoeff inverse() const;
  RationalCoeff pow(int k) const;
  RationalCoeff divided_by_int(long k) const;

  // Semantic equality: a/b == c/d iff a*d - c*b == 0.
  bool operator==(const RationalCoeff& o) const;

  double eval(const std::map<std::string, double>& bindings) const;
  RationalCoeff substitute(std::string_view name, const Rational& value) const;
  RationalCoeff with_params(const ParamSetPtr& superset) const;

  std::string str() const;

 private:
  ParamPoly num_, den_;
  void normalize();
};

}  // namespace lbfd

#endif
