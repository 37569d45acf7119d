#ifndef LBFD_OP_MATRIX_HPP
#define LBFD_OP_MATRIX_HPP

#include <complex>
#include <string>
#include <vector>

#include "lbfd/operator_poly.hpp"

namespace lbfd {

// Dense matrix over the operator ring. Indices are 0-based.
class OpMatrix {
 public:
  OpMatrix() : rows_(0), cols_(0) {}
  OpMatrix(int rows, int cols, int dim, ParamSetPtr params);  // zero-filled
  static OpMatrix identity(int n, int dim, ParamSetPtr params);
  static OpMatrix diagonal(const std::vector<OperatorPoly>& d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int dim() const;
  ParamSetPtr params() const;

  OperatorPoly& at(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
  const OperatorPoly& at(int i, int j) const {
    return e_[static_cast<std::size_t>(i) * cols_ + j];
  }

  OpMatrix operator+(const OpMatrix& o) const;
  OpMatrix operator-(const OpMatrix& o) const;
  OpMatrix operator*(const OpMatrix& o) const;
  OpMatrix scaled(const OperatorPoly& c) const;
  OpMatrix pow(int k) const;  // k >= 0, square
  OperatorPoly trace() const;

  // Zero out rows and columns not in `keep` (0-based indices, same size).
  OpMatrix cut(const std::vector<int>& keep) const;
  // Keep only rows and columns in `keep` (|keep| x |keep| matrix).
  OpMatrix trimmed(const std::vector<int>& keep) const;
  // Conjugate by the permutation: result(i,j) = (*this)(perm[i], perm[j]).
  OpMatrix permuted(const std::vector<int>& perm) const;

  bool is_zero() const;
  bool operator==(const OpMatrix& o) const;

  OpMatrix substitute(std::string_view name, const Rational& value) const;
  OpMatrix with_params(const ParamSetPtr& superset) const;

  std::string str() const;

 private:
  int rows_, cols_;
  std::vector<OperatorPoly> e_;
};

// Polynomial in the indeterminate X with coefficients in the operator ring.
// coeff(k) is the coefficient of X^k; trailing zeros are pruned.
class RingPoly {
 public:
  RingPoly() = default;  // zero polynomial
  explicit RingPoly(std::vector<OperatorPoly> coeffs);
  static RingPoly monomial(const OperatorPoly& c, int k);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const;
  OperatorPoly coeff(int k) const;
  const std::vector<OperatorPoly>& coeffs() const { return c_; }

  RingPoly operator+(const RingPoly& o) const;
  RingPoly operator-(const RingPoly& o) const;
  RingPoly operator*(const RingPoly& o) const;
  RingPoly shifted_up(int k) const;  // multiply by X^k

  bool operator==(const RingPoly& o) const;

  // Euclidean division by a monic divisor; returns {quotient, remainder}.
  static std::pair<RingPoly, RingPoly> divide_monic(const RingPoly& a, const RingPoly& b);
  bool divisible_by(const RingPoly& monic) const;

  // Evaluate at a square matrix, with X^0 = I.
  OpMatrix eval_at(const OpMatrix& c) const;

  // Sample all coefficients at a wave vector; ascending degree.
  std::vector<std::complex<double>> sample(std::span<const double> xi, double dx,
                                           const std::map<std::string, double>& bindings) const;

  RingPoly substitute(std::string_view name, const Rational& value) const;
  RingPoly with_params(const ParamSetPtr& superset) const;

  std::string str() const;  // powers of X descending

 private:
  std::vector<OperatorPoly> c_;
  void prune();
};

}  // namespace lbfd

#endif
