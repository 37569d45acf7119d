#ifndef LBFD_OPERATOR_POLY_HPP
#define LBFD_OPERATOR_POLY_HPP

#include <array>
#include <complex>
#include <map>
#include <span>
#include <string>

#include "lbfd/rational_coeff.hpp"

namespace lbfd {

// Exponent vector of a shift monomial; entries beyond the operator's
// dimension are zero. shift {1,0,0} is the generator x, {-1,0,0} is x^-1.
using Shift = std::array<int, 3>;

Shift shift_of(int a, int b = 0, int c = 0);
Shift shift_add(const Shift& a, const Shift& b);
Shift shift_neg(const Shift& a);

// Element of the commutative ring of finite-difference operators on the
// lattice: a Laurent polynomial in the per-axis shift generators whose
// coefficients are rational functions of the scheme parameters. The zero
// element is the empty term map.
class OperatorPoly {
 public:
  using TermMap = std::map<Shift, RationalCoeff>;

  OperatorPoly() : dim_(1), params_(empty_param_set()) {}
  static OperatorPoly zero(int dim, ParamSetPtr params);
  static OperatorPoly one(int dim, ParamSetPtr params);
  static OperatorPoly constant(RationalCoeff c, int dim);
  static OperatorPoly shift_op(const Shift& z, int dim, ParamSetPtr params);
  static OperatorPoly term(RationalCoeff c, const Shift& z, int dim);

  int dim() const { return dim_; }
  const ParamSetPtr& params() const { return params_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  // Units of the ring: a single term with nonzero coefficient.
  bool is_unit() const { return terms_.size() == 1; }
  // A pure coefficient: zero or a single term with zero shift.
  bool is_coefficient() const;
  RationalCoeff as_coefficient() const;  // requires is_coefficient()
  RationalCoeff coefficient_at(const Shift& z) const;

  OperatorPoly operator-() const;
  OperatorPoly operator+(const OperatorPoly& o) const;
  OperatorPoly operator-(const OperatorPoly& o) const;
  OperatorPoly operator*(const OperatorPoly& o) const;
  OperatorPoly scaled(const RationalCoeff& c) const;
  // Negative exponents require a unit (or a pure coefficient).
  OperatorPoly pow(int k) const;
  OperatorPoly unit_inverse() const;  // (alpha shift_z)^-1 = (1/alpha) shift_-z

  bool operator==(const OperatorPoly& o) const;

  Shift min_exponents() const;  // componentwise over terms
  Shift max_exponents() const;

  // Fourier symbol: sum_z coeff_z(bindings) * exp(-i dx z.xi).
  std::complex<double> eval_fourier(std::span<const double> xi, double dx,
                                    const std::map<std::string, double>& bindings) const;

  OperatorPoly substitute(std::string_view name, const Rational& value) const;
  OperatorPoly with_params(const ParamSetPtr& superset) const;

  std::string str() const;

 private:
  int dim_;
  ParamSetPtr params_;
  TermMap terms_;

  void insert_term(const Shift& z, RationalCoeff c);
  static void unify(OperatorPoly& a, OperatorPoly& b);
};

}  // namespace lbfd

#endif
