#ifndef LBFD_SCHEME_HPP
#define LBFD_SCHEME_HPP

#include <map>
#include <string>
#include <vector>

#include "lbfd/expr.hpp"
#include "lbfd/linalg.hpp"
#include "lbfd/op_matrix.hpp"

namespace lbfd {

// User-level description of a lattice Boltzmann scheme: velocities, moment
// matrix, relaxation rates (the first `conserved` are zero) and equilibrium
// expressions for the non-conserved moments in terms of m1..mN.
struct SchemeSpec {
  std::string name;
  int dim = 1;
  int q = 1;
  int conserved = 1;  // N
  ParamSetPtr params = empty_param_set();
  std::vector<Shift> velocities;             // size q, integer vectors
  std::vector<RationalCoeff> moment_matrix;  // q*q, row-major
  std::vector<RationalCoeff> rates;          // size q
  std::map<int, ExprPtr> equilibria;         // 0-based moment index -> expression

  void validate() const;  // throws UserError on violations
  const RationalCoeff& m_entry(int i, int j) const {
    return moment_matrix[static_cast<std::size_t>(i) * static_cast<std::size_t>(q) + j];
  }
  ExprPtr equilibrium(int i) const;  // zero expression when unset
};

struct BuiltScheme {
  SchemeSpec spec;
  OpMatrix T, A, B;
  std::vector<std::string> warnings;
};

// T = M diag(shifts) M^-1, A = T(I-S), B = TS. Exact; A + B = T holds by
// construction and is re-checked.
BuiltScheme build(const SchemeSpec& spec);

// A_ell keeps rows and columns {ell} u {N..q-1} (zero-padded); the diamond
// remainder A - A_ell carries the other conserved moments. ell is 0-based.
std::pair<OpMatrix, OpMatrix> decompose_conserved(const BuiltScheme& b, int ell);

struct TrimInfo {
  int Q = 0;                // non-conserved moments with rate != 1
  std::vector<int> order;   // internal position -> original moment index
  std::vector<int> inverse; // original moment index -> internal position
};

// Count the non-unit rates and compute the permutation placing unit-rate
// moments last (conserved moments stay first, relative orders preserved).
TrimInfo detect_trim(const BuiltScheme& b);

// Closed-loop matrix A + B (eps x e1) for linear equilibria m^eq = eps m1.
// Requires N = 1; eps has q entries (the first is ignored by B).
OpMatrix linearize_equilibria(const BuiltScheme& b, const std::vector<RationalCoeff>& eps);

// Linear-equilibrium vector read off the spec's equilibrium expressions;
// throws UserError if any is not of the form c * m1.
std::vector<RationalCoeff> linear_equilibrium_vector(const SchemeSpec& spec);

// Built-in catalog (d1q2, d1q3, d1q3_two, d1q3_srt, d1q3_mrt, d1q3_burgers,
// d2q4, link_w1..link_w3).
std::vector<std::string> catalog_names();
bool catalog_has(const std::string& name);
SchemeSpec catalog_scheme(const std::string& name);

// TRT link scheme with all magic parameters 1/4: q = 1 + 2W velocities
// 0, +c_1, -c_1, ..., rates alternating s and 2-s. The one-argument form
// uses the axis pairs +-j in one dimension; the general form takes one
// velocity per pair (its negative is added automatically).
SchemeSpec make_link_scheme(int W);
SchemeSpec make_link_scheme(const std::vector<Shift>& pair_velocities, int dim);

}  // namespace lbfd

#endif
