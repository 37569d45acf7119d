#ifndef LBFD_OP_FRACTION_HPP
#define LBFD_OP_FRACTION_HPP

#include <optional>
#include <string>
#include <vector>

#include "lbfd/operator_poly.hpp"

namespace lbfd {

// Element of the fraction field of the operator ring. Shift monomials are
// units, so the denominator is normalized to an ordinary polynomial (minimal
// exponents zero) with leading coefficient one; exact common factors are
// cancelled by trial division.
class OpFraction {
 public:
  OpFraction() : num_(), den_(OperatorPoly::one(1, empty_param_set())) {}
  explicit OpFraction(OperatorPoly num);
  OpFraction(OperatorPoly num, OperatorPoly den);  // throws on zero den

  static OpFraction zero(int dim, ParamSetPtr params);

  const OperatorPoly& num() const { return num_; }
  const OperatorPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  // The fraction lies in the ring itself iff the denominator reduced to 1.
  std::optional<OperatorPoly> as_poly() const;

  OpFraction operator-() const;
  OpFraction operator+(const OpFraction& o) const;
  OpFraction operator-(const OpFraction& o) const;
  OpFraction operator*(const OpFraction& o) const;
  OpFraction operator/(const OpFraction& o) const;

  bool operator==(const OpFraction& o) const;  // cross-multiplied

  // num terms + den terms; used for pivot selection to limit swell.
  std::size_t complexity() const { return num_.term_count() + den_.term_count(); }

  std::string str() const;

 private:
  OperatorPoly num_, den_;
  void normalize();
};

// Exact Laurent division: nullopt if b does not divide a in the ring.
std::optional<OperatorPoly> divide_exact_laurent(const OperatorPoly& a, const OperatorPoly& b);

// Basis of the null space of a rectangular matrix over the fraction field.
// Gaussian elimination with full pivoting; the pivot of least complexity is
// chosen. An empty result means the matrix is injective.
std::vector<std::vector<OpFraction>> kernel_basis(const std::vector<std::vector<OpFraction>>& m);

// One solution of m x = rhs over the fraction field (free variables zero);
// nullopt if the system is inconsistent.
std::optional<std::vector<OpFraction>> solve_linear(const std::vector<std::vector<OpFraction>>& m,
                                                    const std::vector<OpFraction>& rhs);

}  // namespace lbfd

#endif
