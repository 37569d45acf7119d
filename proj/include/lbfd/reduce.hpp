#ifndef LBFD_REDUCE_HPP
#define LBFD_REDUCE_HPP

#include <map>
#include <string>
#include <vector>

#include "lbfd/scheme.hpp"

namespace lbfd {

enum class ReducePath { Charpoly, Minimal, Mpafr };

struct ReduceOptions {
  ReducePath path = ReducePath::Charpoly;
  // Drop unit-rate moments before forming the characteristic polynomial
  // (their columns of A vanish, shrinking the reduced problem).
  bool trim = true;
  // Drop trailing time levels whose stencils are all zero.
  bool prune_trailing = true;
};

// Multi-step explicit finite-difference scheme on one conserved moment:
//   m_ell[n+1] = sum_k h_k m_ell[n-k]
//              + sum_k sum_i src[k][i] m_i^eq[n-k]
//              + sum_k sum_j xsrc[k][j] m_j[n-k]     (other conserved j)
// All stencils are exact elements of the operator ring. Moment indices are
// 0-based and refer to the user's original ordering.
struct FDScheme {
  std::string scheme_name;
  int dim = 1;
  int q = 1;
  int conserved_count = 1;
  int ell = 0;  // which conserved moment
  int steps = 0;  // K: number of past time levels used
  std::vector<OperatorPoly> homogeneous;              // size steps
  std::vector<std::map<int, OperatorPoly>> sources;   // size steps
  std::vector<std::map<int, OperatorPoly>> cross;     // size steps
  std::string provenance;  // charpoly | trimmed | minimal | mpafr
  RingPoly polynomial;     // annihilator the scheme was derived from
  ParamSetPtr params = empty_param_set();
  std::vector<Shift> velocities;  // copied from the spec (support bounds)

  bool operator==(const FDScheme& o) const;
};

// Reduction via the characteristic (or minimal) polynomial of the trimmed
// block; requires one conserved moment.
FDScheme reduce_single(const BuiltScheme& b, const ReduceOptions& opt = {});

// One finite-difference scheme per conserved moment; cross stencils carry
// the couplings to the other conserved moments.
std::vector<FDScheme> reduce_multi(const BuiltScheme& b, const ReduceOptions& opt = {});

// Reduction through the minimal polynomial annihilating the first row.
FDScheme reduce_mpafr(const BuiltScheme& b);

struct BootstrapPlan {
  int warmup_steps = 0;       // K - 1 one-step scheme applications
  bool equilibrium_init = true;
};

BootstrapPlan bootstrap_plan(const BuiltScheme& b, const FDScheme& fd);

// Human-readable stencil listing, lags ascending.
std::string render(const FDScheme& fd);
// Machine-readable structured text: lags, exponent vectors, coefficients.
std::string serialize(const FDScheme& fd);

}  // namespace lbfd

#endif
