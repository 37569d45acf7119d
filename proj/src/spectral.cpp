#include "lbfd/spectral.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <sstream>

#include "lbfd/error.hpp"

namespace lbfd {

RingPoly closed_loop_charpoly(const BuiltScheme& b, const std::vector<RationalCoeff>& eps) {
  return faddeev_leverrier(linearize_equilibria(b, eps));
}

RingPoly amplification_from_fd(const FDScheme& fd, const std::vector<RationalCoeff>& eps) {
  if (fd.conserved_count != 1) throw UserError("amplification needs one conserved moment");
  if (static_cast<int>(eps.size()) != fd.q) throw UserError("eps must have q entries");
  const int K = fd.steps;
  std::vector<OperatorPoly> coeffs(static_cast<std::size_t>(K) + 1,
                                   OperatorPoly::zero(fd.dim, fd.params));
  coeffs[static_cast<std::size_t>(K)] = OperatorPoly::one(fd.dim, fd.params);
  for (int k = 0; k < K; ++k) {
    OperatorPoly c = fd.homogeneous[static_cast<std::size_t>(k)];
    if (!fd.cross[static_cast<std::size_t>(k)].empty())
      throw UserError("amplification of a scheme with cross terms");
    for (const auto& [i, s] : fd.sources[static_cast<std::size_t>(k)])
      c = c + s.scaled(eps[static_cast<std::size_t>(i)]);
    // Lag k multiplies m1^{n-k}; as a polynomial coefficient that is X^{K-1-k}.
    coeffs[static_cast<std::size_t>(K - 1 - k)] = -c;
  }
  return RingPoly(std::move(coeffs));
}

std::vector<std::complex<double>> poly_roots(std::vector<std::complex<double>> coeffs) {
  if (coeffs.empty()) throw Error("empty polynomial");
  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n == 0) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -coeffs[static_cast<std::size_t>(i)];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw Error("eigenvalue solver failed to converge");
  std::vector<std::complex<double>> roots(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) roots[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return roots;
}

namespace {

void check_roots(const std::vector<std::complex<double>>& roots, const SpectralOptions& opt,
                 StabilityReport& report, const std::vector<double>& xi) {
  for (std::size_t i = 0; i < roots.size(); ++i) {
    double m = std::abs(roots[i]);
    report.worst_modulus = std::max(report.worst_modulus, m);
    bool bad = false;
    if (m > 1.0 + opt.tol_mod) bad = true;
    if (m >= 1.0 - opt.tol_mod) {
      for (std::size_t j = 0; j < roots.size(); ++j) {
        if (j == i) continue;
        if (std::abs(roots[i] - roots[j]) <= opt.tol_sep) {
          bad = true;
          report.multiple_on_circle = true;
        }
      }
    }
    if (bad && report.stable) {
      report.stable = false;
      report.offending_xi = xi;
    } else if (bad) {
      report.stable = false;
    }
  }
}

}  // namespace

StabilityReport sample_and_test(const RingPoly& p, int dim,
                                const std::map<std::string, double>& bindings, double dx,
                                const SpectralOptions& opt) {
  if (!p.is_monic()) throw UserError("amplification polynomial must be monic");
  if (dim < 1 || dim > 3) throw UserError("dimension must be 1, 2 or 3");
  StabilityReport report;
  const int n = opt.xi_points;
  const double xi_max = std::numbers::pi / dx;
  std::vector<int> idx(static_cast<std::size_t>(dim), 0);
  std::vector<double> xi(static_cast<std::size_t>(dim), 0.0);
  while (true) {
    for (int a = 0; a < dim; ++a)
      xi[static_cast<std::size_t>(a)] =
          -xi_max + 2.0 * xi_max * idx[static_cast<std::size_t>(a)] / (n - 1);
    std::vector<std::complex<double>> coeffs = p.sample(xi, dx, bindings);
    check_roots(poly_roots(std::move(coeffs)), opt, report, xi);
    int a = 0;
    for (; a < dim; ++a) {
      if (++idx[static_cast<std::size_t>(a)] < n) break;
      idx[static_cast<std::size_t>(a)] = 0;
    }
    if (a == dim) break;
  }
  return report;
}

ScanResult region_scan(const BuiltScheme& b, const std::string& name1, double lo1, double hi1,
                       int n1, const std::string& name2, double lo2, double hi2, int n2,
                       const std::map<std::string, double>& base_bindings,
                       const SpectralOptions& opt) {
  RingPoly chi = closed_loop_charpoly(b, linear_equilibrium_vector(b.spec));
  ScanResult out;
  out.name1 = name1;
  out.name2 = name2;
  for (int i = 0; i < n1; ++i) {
    double v1 = lo1 + (hi1 - lo1) * (i + 0.5) / n1;
    for (int j = 0; j < n2; ++j) {
      double v2 = lo2 + (hi2 - lo2) * (j + 0.5) / n2;
      std::map<std::string, double> bind = base_bindings;
      bind[name1] = v1;
      bind[name2] = v2;
      ScanCell cell;
      cell.v1 = v1;
      cell.v2 = v2;
      cell.report = sample_and_test(chi, b.spec.dim, bind, 1.0, opt);
      out.cells.push_back(std::move(cell));
    }
  }
  return out;
}

std::string scan_csv(const ScanResult& scan) {
  std::ostringstream out;
  out << scan.name1 << "," << scan.name2 << ",stable,worst_modulus\n";
  char buf[128];
  for (const auto& c : scan.cells) {
    std::snprintf(buf, sizeof buf, "%.10g,%.10g,%d,%.12g\n", c.v1, c.v2,
                  c.report.stable ? 1 : 0, c.report.worst_modulus);
    out << buf;
  }
  return out.str();
}

Prop71Result prop71_conditions(double C, double D, double s, int gamma_samples) {
  Prop71Result res;
  res.rectangle_ok = (1.5 * C * C - 1.0 <= D) && (D <= 0.5);
  double worst = -std::numeric_limits<double>::infinity();
  double argmax = -1.0;
  for (int j = 0; j < gamma_samples; ++j) {
    double gamma = std::cos(std::numbers::pi * j / (gamma_samples - 1));
    double omega = (1.0 - s) * (gamma + 2.0 + 2.0 * D * (1.0 - gamma)) / 3.0;
    double value = s * s * C * C * (1.0 + gamma) * (1.0 + omega) * (1.0 + omega) +
                   (4.0 / 9.0) * (2.0 - s) * (D + 1.0) * (1.0 - omega) *
                       ((2.0 - s) * (D + 1.0) * (1.0 - gamma) * (1.0 - omega) +
                        3.0 * (omega * omega - 1.0));
    if (value > worst) {
      worst = value;
      argmax = gamma;
    }
  }
  res.max_value = worst;
  res.argmax_gamma = argmax;
  res.polynomial_ok = worst <= 0.0;
  return res;
}

double equivalent_diffusion(double C, double D, double s) {
  if (s == 0.0) throw UserError("relaxation rate s must be nonzero");
  return (1.0 / s - 0.5) * (2.0 * (1.0 + D) / 3.0 - C * C);
}

}  // namespace lbfd
