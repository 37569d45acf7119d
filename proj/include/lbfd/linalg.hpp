#ifndef LBFD_LINALG_HPP
#define LBFD_LINALG_HPP

#include <vector>

#include "lbfd/op_fraction.hpp"
#include "lbfd/op_matrix.hpp"

namespace lbfd {

// Inverse of a matrix whose entries are pure coefficients (no shift terms),
// over the rational-function field. Throws UserError naming the offending
// pivot column if the matrix is singular.
OpMatrix field_invert(const OpMatrix& m);

// Characteristic polynomial (-1)^r det(C - XI) of a square matrix over the
// operator ring, computed with only ring products, traces and exact integer
// divisions.
RingPoly faddeev_leverrier(const OpMatrix& c);

// Characteristic polynomial of the submatrix keeping rows/columns in `keep`.
RingPoly charpoly_trimmed(const OpMatrix& c, const std::vector<int>& keep);

OpMatrix apply_ring_poly(const RingPoly& p, const OpMatrix& c);

// Monic annihilator of least degree with ring coefficients. Searches
// ascending degrees by solving the linear system on vectorized powers of C;
// returns the characteristic polynomial when nothing smaller verifies.
RingPoly minimal_polynomial(const OpMatrix& c);

// Null-space basis over the fraction field of the ring; empty if injective.
std::vector<std::vector<OpFraction>> kernel_fraction_field(const OpMatrix& v);

struct MpamfrResult {
  RingPoly mpamfr;  // zero-order coefficient left at zero (it is free)
  RingPoly mpafr;   // completed with psi_0 = -sum psi_k (A^k)_11
  int degree = 0;
};

// Minimal monic polynomial annihilating the first row of A except possibly
// its first entry, plus the completion that also annihilates entry (1,1).
// Falls back to the minimal polynomial when no shorter candidate clears the
// kernel search with ring coefficients.
MpamfrResult mpamfr(const OpMatrix& a);

}  // namespace lbfd

#endif
