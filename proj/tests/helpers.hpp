#ifndef LBFD_TESTS_HELPERS_HPP
#define LBFD_TESTS_HELPERS_HPP

#include <random>
#include <string>
#include <vector>

#include "lbfd/expr.hpp"
#include "lbfd/linalg.hpp"
#include "lbfd/op_matrix.hpp"
#include "lbfd/scheme.hpp"

namespace lbfd::testing {

inline OperatorPoly op(const std::string& text, const ParamSetPtr& params, int dim = 1) {
  return eval_operator(*parse_expression(text), dim, params);
}

inline RationalCoeff rc(const std::string& text, const ParamSetPtr& params) {
  return eval_coeff(*parse_expression(text), params);
}

inline OpMatrix opmat(const std::vector<std::vector<std::string>>& rows,
                      const ParamSetPtr& params, int dim = 1) {
  int r = static_cast<int>(rows.size());
  int c = static_cast<int>(rows[0].size());
  OpMatrix m(r, c, dim, params);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      m.at(i, j) = op(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], params, dim);
  return m;
}

inline OpMatrix int_matrix(const std::vector<std::vector<int>>& rows) {
  const ParamSetPtr& params = empty_param_set();
  int r = static_cast<int>(rows.size());
  OpMatrix m(r, r, 1, params);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      m.at(i, j) = OperatorPoly::constant(
          RationalCoeff::constant(Rational(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]),
                                  params),
          1);
  return m;
}

// Ascending coefficient strings -> RingPoly.
inline RingPoly ring(const std::vector<std::string>& coeffs, const ParamSetPtr& params,
                     int dim = 1) {
  std::vector<OperatorPoly> v;
  for (const auto& t : coeffs) v.push_back(op(t, params, dim));
  return RingPoly(std::move(v));
}

// Fixture matrices used throughout the constant-coefficient examples.
inline OpMatrix a_one() { return int_matrix({{1, 1, 1}, {1, 2, 1}, {1, 2, 0}}); }
inline OpMatrix a_two() { return int_matrix({{1, 1, 1}, {0, 2, 0}, {0, 0, 2}}); }
inline OpMatrix a_three() { return int_matrix({{1, 1, 0}, {1, 2, 0}, {1, 2, 1}}); }
inline OpMatrix a_four() { return int_matrix({{1, 0, 1}, {0, -2, 0}, {0, 0, 2}}); }

// Random exact objects for the property suites. Coefficients stay small so
// the closed forms remain readable when a test fails.
inline Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 3);
  return Rational(num(rng), den(rng));
}

inline RationalCoeff random_coeff(std::mt19937& rng, const ParamSetPtr& params) {
  std::uniform_int_distribution<int> nterms(1, 2);
  std::uniform_int_distribution<int> pick(0, std::max(0, static_cast<int>(params->size()) - 1));
  std::uniform_int_distribution<int> use_param(0, 2);
  ParamPoly num = ParamPoly::zero(params);
  int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    ParamPoly term = ParamPoly::constant(random_rational(rng), params);
    if (params->size() > 0 && use_param(rng) == 0)
      term = term * ParamPoly::parameter(params->name(static_cast<std::size_t>(pick(rng))), params);
    num = num + term;
  }
  return RationalCoeff(num, ParamPoly::constant(Rational(1), params));
}

inline OperatorPoly random_op(std::mt19937& rng, int dim, const ParamSetPtr& params,
                              int max_terms = 3) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> exp(-1, 1);
  OperatorPoly p = OperatorPoly::zero(dim, params);
  int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    Shift z{0, 0, 0};
    for (int a = 0; a < dim; ++a) z[static_cast<std::size_t>(a)] = exp(rng);
    p = p + OperatorPoly::term(random_coeff(rng, params), z, dim);
  }
  return p;
}

inline OpMatrix random_opmat(std::mt19937& rng, int q, int dim, const ParamSetPtr& params) {
  OpMatrix m(q, q, dim, params);
  std::uniform_int_distribution<int> sparse(0, 2);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      if (sparse(rng) != 0) m.at(i, j) = random_op(rng, dim, params, 2);
  return m;
}

// Laplace-expansion determinant; independent of Faddeev-Leverrier.
template <class T>
T laplace_det(const std::vector<std::vector<T>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  T det = m[0][0] - m[0][0];  // zero of the right context
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<T>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<T> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    T term = m[0][j] * laplace_det(minor);
    det = (j % 2 == 0) ? det + term : det - term;
  }
  return det;
}

// Adjugate by cofactors over the operator ring (oracle for the rank-one
// determinant identity).
inline OpMatrix adjugate_cofactor(const OpMatrix& m) {
  const int n = m.rows();
  OpMatrix adj(n, n, m.dim(), m.params());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<std::vector<OperatorPoly>> minor;
      for (int r = 0; r < n; ++r) {
        if (r == i) continue;
        std::vector<OperatorPoly> row;
        for (int c = 0; c < n; ++c)
          if (c != j) row.push_back(m.at(r, c));
        minor.push_back(std::move(row));
      }
      OperatorPoly det = minor.empty() ? OperatorPoly::one(m.dim(), m.params())
                                       : laplace_det(minor);
      adj.at(j, i) = ((i + j) % 2 == 0) ? det : -det;
    }
  }
  return adj;
}

inline OperatorPoly det_cofactor(const OpMatrix& m) {
  std::vector<std::vector<OperatorPoly>> rows;
  for (int i = 0; i < m.rows(); ++i) {
    std::vector<OperatorPoly> row;
    for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  return laplace_det(rows);
}

// (-1)^q det(C - XI) through cofactors over the polynomial ring in X.
inline RingPoly charpoly_cofactor(const OpMatrix& c) {
  const int q = c.rows();
  std::vector<std::vector<RingPoly>> m;
  for (int i = 0; i < q; ++i) {
    std::vector<RingPoly> row;
    for (int j = 0; j < q; ++j) {
      RingPoly entry = RingPoly({c.at(i, j)});
      if (i == j)
        entry = entry - RingPoly::monomial(OperatorPoly::one(c.dim(), c.params()), 1);
      row.push_back(std::move(entry));
    }
    m.push_back(std::move(row));
  }
  RingPoly det = laplace_det(m);
  if (q % 2 != 0) det = RingPoly() - det;
  return det;
}

}  // namespace lbfd::testing

#endif
