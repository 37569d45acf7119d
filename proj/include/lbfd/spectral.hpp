#ifndef LBFD_SPECTRAL_HPP
#define LBFD_SPECTRAL_HPP

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "lbfd/reduce.hpp"
#include "lbfd/scheme.hpp"

namespace lbfd {

struct SpectralOptions {
  double tol_mod = 1e-10;   // modulus slack on the unit circle
  double tol_sep = 1e-8;    // minimal distance between near-unit roots
  int xi_points = 257;      // per dimension, odd so xi = 0 is sampled
  int gamma_samples = 1001; // Chebyshev-spaced points on [-1, 1]
};

// Characteristic polynomial of the closed-loop matrix A + B (eps x e1).
RingPoly closed_loop_charpoly(const BuiltScheme& b, const std::vector<RationalCoeff>& eps);

// Amplification polynomial of the derived finite-difference scheme under
// linear equilibria: X^K - sum_k (h_k + sum_i src_k_i eps_i) X^{K-1-k}.
RingPoly amplification_from_fd(const FDScheme& fd, const std::vector<RationalCoeff>& eps);

struct StabilityReport {
  bool stable = true;
  double worst_modulus = 0.0;
  std::vector<double> offending_xi;  // empty when stable
  bool multiple_on_circle = false;   // near-unit root failing separation
};

// Roots of the sampled amplification polynomial at every wave vector on a
// uniform grid over [-pi/dx, pi/dx]^d via companion-matrix eigenvalues.
// Stable iff all moduli are <= 1 + tol_mod and every root with modulus
// >= 1 - tol_mod is separated from the other roots by more than tol_sep.
StabilityReport sample_and_test(const RingPoly& p, int dim,
                                const std::map<std::string, double>& bindings, double dx,
                                const SpectralOptions& opt = {});

struct ScanCell {
  double v1, v2;
  StabilityReport report;
};

struct ScanResult {
  std::string name1, name2;
  std::vector<ScanCell> cells;  // name1 outer, name2 inner
};

// Per-cell stability verdicts over a 2-parameter grid; the polynomial is
// computed once symbolically and sampled per cell. Values are cell centers.
ScanResult region_scan(const BuiltScheme& b, const std::string& name1, double lo1, double hi1,
                       int n1, const std::string& name2, double lo2, double hi2, int n2,
                       const std::map<std::string, double>& base_bindings,
                       const SpectralOptions& opt = {});

std::string scan_csv(const ScanResult& scan);

struct Prop71Result {
  bool rectangle_ok = false;  // 3C^2/2 - 1 <= D <= 1/2
  bool polynomial_ok = false; // max over gamma of the root-location bound <= 0
  double max_value = 0.0;
  double argmax_gamma = 0.0;
  bool stable() const { return rectangle_ok && polynomial_ok; }
};

// Closed-form sufficient stability conditions for the one-conserved d1q3
// scheme with p = 1 and equilibria (lambda C, 2 lambda^2 D) m1.
Prop71Result prop71_conditions(double C, double D, double s, int gamma_samples = 1001);

// Dimensionless residual diffusivity (1/s - 1/2)(2(1+D)/3 - C^2); the full
// coefficient carries an extra factor lambda dx.
double equivalent_diffusion(double C, double D, double s);

// Roots of a monic complex polynomial (ascending coefficients, leading 1).
std::vector<std::complex<double>> poly_roots(std::vector<std::complex<double>> coeffs);

}  // namespace lbfd

#endif
