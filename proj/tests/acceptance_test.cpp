// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Each block is self-contained and pinned to its stated
// tolerance; runtimes are reported so budget regressions are visible.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "lbfd/reduce.hpp"
#include "lbfd/sim.hpp"
#include "lbfd/spectral.hpp"

using namespace lbfd;
using namespace lbfd::testing;

namespace {

int g_failures = 0;

class Criterion {
 public:
  Criterion(int number, std::string label)
      : number_(number), label_(std::move(label)), start_(std::chrono::steady_clock::now()) {}

  void require(bool ok, const std::string& detail) {
    if (!ok && first_failure_.empty()) first_failure_ = detail;
    ok_ = ok_ && ok;
  }

  ~Criterion() {
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    std::printf("[%s] criterion %d: %s (%.1f s)%s%s\n", ok_ ? "PASS" : "FAIL", number_,
                label_.c_str(), secs, first_failure_.empty() ? "" : " -- ",
                first_failure_.c_str());
    if (!ok_) ++g_failures;
  }

 private:
  int number_;
  std::string label_;
  bool ok_ = true;
  std::string first_failure_;
  std::chrono::steady_clock::time_point start_;
};

SchemeSpec d1q3_with_unit_p() {
  SchemeSpec s = catalog_scheme("d1q3");
  s.rates[2] = RationalCoeff::one(s.params);
  return s;
}

void criterion_1() {
  Criterion c(1, "symbolic characteristic and minimal polynomials, exact");
  auto none = empty_param_set();

  c.require(faddeev_leverrier(a_one()) == ring({"1", "-2", "-3", "1"}, none), "chi of A_I");
  c.require(faddeev_leverrier(a_two()) == ring({"-4", "8", "-5", "1"}, none), "chi of A_II");
  c.require(minimal_polynomial(a_two()) == ring({"2", "-3", "1"}, none), "mu of A_II");

  {
    BuiltScheme b = build(catalog_scheme("d1q3"));
    const ParamSetPtr& P = b.spec.params;
    RingPoly chi = faddeev_leverrier(b.A);
    c.require(chi.coeff(0) == op("-(1-p)*(1-s)", P), "d1q3 gamma0");
    c.require(chi.coeff(1) ==
                  op("p*s*(x + 1 + x^-1)/3 - p*(5*x + 2 + 5*x^-1)/6 - s*(x + 2 + x^-1)/2 "
                     "+ (x + 1 + x^-1)",
                     P),
              "d1q3 gamma1");
    c.require(chi.coeff(2) ==
                  op("p*(x + 4 + x^-1)/6 + s*(x + x^-1)/2 - (x + 1 + x^-1)", P),
              "d1q3 gamma2");
    c.require(chi.coeff(3) == op("1", P), "d1q3 monic");
  }
  {
    BuiltScheme b = build(catalog_scheme("d1q2"));
    const ParamSetPtr& P = b.spec.params;
    c.require(faddeev_leverrier(b.A) ==
                  ring({"1-s", "-(2-s)*(x + x^-1)/2", "1"}, P),
              "d1q2 chi");
  }
  {
    BuiltScheme b = build(catalog_scheme("d2q4"));
    const ParamSetPtr& P = b.spec.params;
    RingPoly expected =
        ring({"-(1-s)^2*(x + x^-1 + y + y^-1)/4",
              "(1-s)*((2-s)*(x*y + x^-1*y + x*y^-1 + x^-1*y^-1)/4 + 1)",
              "(2*s-3)*(x + x^-1 + y + y^-1)/4", "1"},
             P, 2);
    c.require(charpoly_trimmed(b.A, {0, 1, 2}) == expected, "d2q4 trimmed chi");
    c.require(faddeev_leverrier(b.A) == expected.shifted_up(1), "d2q4 full chi");
  }
  {
    BuiltScheme b = build(catalog_scheme("d1q3_srt"));
    const ParamSetPtr& P = b.spec.params;
    c.require(faddeev_leverrier(b.A) ==
                  ring({"-(1-omega)^2", "(1-omega)*((x + x^-1) + (1-omega))",
                        "omega*(x + x^-1) - (x + 1 + x^-1)", "1"},
                       P),
              "d1q3 SRT chi");
  }
  {
    BuiltScheme b = build(catalog_scheme("d1q3_mrt"));
    const ParamSetPtr& P = b.spec.params;
    c.require(faddeev_leverrier(b.A) ==
                  ring({"-(1-omega2)*(1-omega3)",
                        "1 + omega2*omega3 - omega2 - omega3 "
                        "+ (1 - omega2/2 - omega3/2)*(x + x^-1)",
                        "-1 + (x + x^-1)*(omega2/2 + omega3/2 - 1)", "1"},
                       P),
              "d1q3 MRT chi");
  }
}

bool same_sources(const std::map<int, OperatorPoly>& got,
                  const std::map<int, OperatorPoly>& want) {
  if (got.size() != want.size()) return false;
  for (const auto& [k, v] : want) {
    auto it = got.find(k);
    if (it == got.end() || !(it->second == v)) return false;
  }
  return true;
}

void criterion_2() {
  Criterion c(2, "derived finite-difference schemes match their closed forms, exact");
  {
    BuiltScheme b = build(catalog_scheme("d1q3"));
    const ParamSetPtr& P = b.spec.params;
    FDScheme fd = reduce_single(b);
    c.require(fd.steps == 3, "d1q3 step count");
    c.require(fd.homogeneous[0] ==
                  op("-p*(x + 4 + x^-1)/6 - s*(x + x^-1)/2 + (x + 1 + x^-1)", P),
              "d1q3 lag-0 homogeneous");
    c.require(fd.homogeneous[1] ==
                  op("-p*s*(x + 1 + x^-1)/3 + p*(5*x + 2 + 5*x^-1)/6 "
                     "+ s*(x + 2 + x^-1)/2 - (x + 1 + x^-1)",
                     P),
              "d1q3 lag-1 homogeneous");
    c.require(fd.homogeneous[2] == op("(1-p)*(1-s)", P), "d1q3 lag-2 homogeneous");
    c.require(same_sources(fd.sources[0],
                           {{1, op("s*(x - x^-1)/(2*lambda)", P)},
                            {2, op("p*(x - 2 + x^-1)/(6*lambda^2)", P)}}),
              "d1q3 lag-0 sources");
    c.require(same_sources(fd.sources[1],
                           {{1, op("-s*(1-p)*(x - x^-1)/(2*lambda)", P)},
                            {2, op("p*(1-s)*(x - 2 + x^-1)/(6*lambda^2)", P)}}),
              "d1q3 lag-1 sources");
    c.require(fd.sources[2].empty(), "d1q3 has no lag-2 sources");
  }
  {
    std::vector<FDScheme> fds = reduce_multi(build(catalog_scheme("d1q3_two")));
    const ParamSetPtr& P = fds[0].params;
    c.require(fds.size() == 2, "two conserved moments give two schemes");
    c.require(fds[0].steps == 2 && fds[0].homogeneous[0] == op("1 + (1-p)*(x + x^-1)/2", P) &&
                  fds[0].homogeneous[1] == op("-(1-p)*(x + x^-1)/2", P) &&
                  fds[0].cross[0].size() == 1 &&
                  fds[0].cross[0].at(1) == op("(x - x^-1)/(2*lambda)", P) &&
                  fds[0].cross[1].at(1) == op("-(1-p)*(x - x^-1)/(2*lambda)", P) &&
                  same_sources(fds[0].sources[0],
                               {{2, op("p*(x - 2 + x^-1)/(2*lambda^2)", P)}}) &&
                  fds[0].sources[1].empty(),
              "coupled m1 scheme");
    c.require(fds[1].steps == 2 && fds[1].homogeneous[0] == op("(2-p)*(x + x^-1)/2", P) &&
                  fds[1].homogeneous[1] == op("-(1-p)", P) && fds[1].cross[0].empty() &&
                  fds[1].cross[1].empty() &&
                  same_sources(fds[1].sources[0],
                               {{2, op("p*(x - x^-1)/(2*lambda)", P)}}) &&
                  fds[1].sources[1].empty(),
              "coupled m2 scheme");
  }
  {
    FDScheme fd = reduce_single(build(d1q3_with_unit_p()));
    const ParamSetPtr& P = fd.params;
    c.require(fd.steps == 2 &&
                  fd.homogeneous[0] == op("(1-s)*(x + x^-1)/2 + (x + 1 + x^-1)/3", P) &&
                  fd.homogeneous[1] == op("-(1-s)*(x + 4 + x^-1)/6", P) &&
                  same_sources(fd.sources[0],
                               {{1, op("s*(x - x^-1)/(2*lambda)", P)},
                                {2, op("(x - 2 + x^-1)/(6*lambda^2)", P)}}) &&
                  same_sources(fd.sources[1],
                               {{2, op("(1-s)*(x - 2 + x^-1)/(6*lambda^2)", P)}}),
              "trimmed two-step scheme at p = 1");
  }
  {
    FDScheme fd = reduce_single(build(catalog_scheme("d1q2")));
    const ParamSetPtr& P = fd.params;
    c.require(fd.steps == 2 && fd.homogeneous[0] == op("(2-s)*(x + x^-1)/2", P) &&
                  fd.homogeneous[1] == op("-(1-s)", P) &&
                  same_sources(fd.sources[0], {{1, op("s*(x - x^-1)/(2*lambda)", P)}}) &&
                  fd.sources[1].empty(),
              "d1q2 theta scheme");
  }
  {
    FDScheme fd = reduce_single(build(catalog_scheme("d1q3_srt")));
    const ParamSetPtr& P = fd.params;
    c.require(fd.steps == 3 && fd.homogeneous[0] == op("(1-omega)*(x + x^-1) + 1", P) &&
                  fd.homogeneous[1] == op("-(1-omega)*(x + x^-1) - (1-omega)^2", P) &&
                  fd.homogeneous[2] == op("(1-omega)^2", P) &&
                  same_sources(fd.sources[0],
                               {{1, op("omega*(x - x^-1)/(2*lambda)", P)},
                                {2, op("omega*(x - 2 + x^-1)/(2*lambda^2)", P)}}) &&
                  same_sources(fd.sources[1],
                               {{1, op("-omega*(1-omega)*(x - x^-1)/(2*lambda)", P)},
                                {2, op("omega*(1-omega)*(x - 2 + x^-1)/(2*lambda^2)", P)}}) &&
                  fd.sources[2].empty(),
              "d1q3 SRT scheme");
  }
  {
    FDScheme fd = reduce_single(build(catalog_scheme("d1q3_mrt")));
    const ParamSetPtr& P = fd.params;
    c.require(fd.steps == 3 &&
                  fd.homogeneous[0] == op("(1 - omega2/2 - omega3/2)*(x + x^-1) + 1", P) &&
                  fd.homogeneous[1] == op("-(1 - omega2/2 - omega3/2)*(x + x^-1) "
                                          "- (1 - omega2 - omega3 + omega2*omega3)",
                                          P) &&
                  fd.homogeneous[2] == op("(1-omega2)*(1-omega3)", P) &&
                  same_sources(fd.sources[0],
                               {{1, op("omega2*(x - x^-1)/(2*lambda)", P)},
                                {2, op("omega3*(x - 2 + x^-1)/(2*lambda^2)", P)}}) &&
                  same_sources(fd.sources[1],
                               {{1, op("-omega2*(1-omega3)*(x - x^-1)/(2*lambda)", P)},
                                {2, op("omega3*(1-omega2)*(x - 2 + x^-1)/(2*lambda^2)", P)}}) &&
                  fd.sources[2].empty(),
              "d1q3 MRT scheme");
  }
  {
    FDScheme fd = reduce_single(build(catalog_scheme("d2q4")));
    const ParamSetPtr& P = fd.params;
    c.require(fd.steps == 3 &&
                  fd.homogeneous[0] == op("-(2*s-3)*(x + x^-1 + y + y^-1)/4", P, 2) &&
                  fd.homogeneous[1] ==
                      op("-(1-s) - (1-s)*(2-s)*(x*y + x^-1*y + x*y^-1 + x^-1*y^-1)/4", P, 2) &&
                  fd.homogeneous[2] == op("(1-s)^2*(x + x^-1 + y + y^-1)/4", P, 2) &&
                  fd.sources[0].at(1) == op("s*(x - x^-1)/(2*lambda)", P, 2) &&
                  fd.sources[0].at(2) == op("s*(y - y^-1)/(2*lambda)", P, 2) &&
                  fd.sources[1].at(1) ==
                      op("-s*(1-s)*(x - x^-1)*(y + y^-1)/(4*lambda)", P, 2) &&
                  fd.sources[1].at(2) ==
                      op("-s*(1-s)*(y - y^-1)*(x + x^-1)/(4*lambda)", P, 2) &&
                  fd.sources[2].count(1) == 0 && fd.sources[2].count(2) == 0,
              "d2q4 scheme");
  }
  for (int w = 1; w <= 3; ++w) {
    BuiltScheme b = build(make_link_scheme(w));
    const ParamSetPtr& P = b.spec.params;
    FDScheme fd = reduce_mpafr(b);
    bool ok = fd.steps == 2 && fd.homogeneous[0] == op("2-s", P) &&
              fd.homogeneous[1] == op("-(1-s)", P) && fd.sources[1].empty();
    for (int l = 1; l <= w && ok; ++l) {
      std::string cl = std::to_string(l);
      ok = fd.sources[0].at(2 * l - 1) ==
               op("s*(x^" + cl + " - x^-" + cl + ")/(2*lambda)", P) &&
           fd.sources[0].at(2 * l) ==
               op("(2-s)*(x^" + cl + " - 2 + x^-" + cl + ")/(2*lambda^2)", P);
    }
    c.require(ok, "link scheme W = " + std::to_string(w));
  }
}

void criterion_3() {
  Criterion c(3, "Cayley-Hamilton property suite on 200 random matrices");
  auto params = make_param_set({"s", "lambda"});
  std::mt19937 rng(20240809);
  int done = 0;
  for (int it = 0; it < 200; ++it) {
    int q = 1 + (it % 4);
    int dim = 1 + (it % 2);
    OpMatrix m = random_opmat(rng, q, dim, params);
    RingPoly chi = faddeev_leverrier(m);
    if (!apply_ring_poly(chi, m).is_zero()) {
      c.require(false, "chi(C)(C) != 0 at iteration " + std::to_string(it));
      return;
    }
    if (q >= 2) {
      std::vector<int> keep{0};
      if (q >= 3) keep.push_back(2);
      RingPoly cut_chi = faddeev_leverrier(m.cut(keep));
      RingPoly trim_chi = charpoly_trimmed(m, keep);
      if (!(cut_chi == trim_chi.shifted_up(q - static_cast<int>(keep.size())))) {
        c.require(false, "cut-matrix identity failed at iteration " + std::to_string(it));
        return;
      }
    }
    ++done;
  }
  c.require(done == 200, "iteration count");

  // Divisibility where all three polynomials are computed.
  for (const char* name : {"link_w1", "d1q3", "d1q2"}) {
    BuiltScheme b = build(catalog_scheme(name));
    RingPoly chi = faddeev_leverrier(b.A);
    RingPoly mu = minimal_polynomial(b.A);
    RingPoly nu = mpamfr(b.A).mpafr;
    c.require(chi.divisible_by(mu), std::string(name) + ": mu | chi");
    c.require(mu.divisible_by(nu), std::string(name) + ": mpafr | mu");
  }
  c.require(faddeev_leverrier(a_two()).divisible_by(minimal_polynomial(a_two())),
            "constant fixture divisibility");
}

void criterion_4() {
  Criterion c(4, "amplification polynomial equals the closed-loop characteristic polynomial");
  for (const char* name : {"d1q2", "d1q3", "d2q4"}) {
    SchemeSpec spec = catalog_scheme(name);
    std::vector<std::string> names = spec.params->names();
    for (int i = 1; i < spec.q; ++i) names.push_back("eps" + std::to_string(i + 1));
    ParamSetPtr extended = make_param_set(names);
    SchemeSpec wide = spec;
    wide.params = extended;
    for (auto& e : wide.moment_matrix) e = e.with_params(extended);
    for (auto& r : wide.rates) r = r.with_params(extended);
    BuiltScheme b = build(wide);

    std::vector<RationalCoeff> eps{RationalCoeff::zero(extended)};
    for (int i = 1; i < spec.q; ++i)
      eps.push_back(RationalCoeff::parameter("eps" + std::to_string(i + 1), extended));

    ReduceOptions full;
    full.trim = false;
    full.prune_trailing = false;
    FDScheme fd = reduce_single(b, full);
    c.require(amplification_from_fd(fd, eps) == closed_loop_charpoly(b, eps),
              std::string(name) + " with symbolic equilibria");
  }
}

Field random_smooth(const Grid& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  double c0 = uni(rng), a1 = uni(rng), b1 = uni(rng), a2 = uni(rng), b2 = uni(rng);
  Field f(static_cast<std::size_t>(g.cells()));
  const double tau = 2.0 * 3.14159265358979323846;
  long idx = 0;
  for (long k = 0; k < (g.dim > 2 ? g.n[2] : 1); ++k)
    for (long j = 0; j < (g.dim > 1 ? g.n[1] : 1); ++j)
      for (long i = 0; i < g.n[0]; ++i, ++idx) {
        double u = static_cast<double>(i) / g.n[0];
        double v = g.dim > 1 ? static_cast<double>(j) / g.n[1] : 0.0;
        f[static_cast<std::size_t>(idx)] = 1.5 + c0 + a1 * std::sin(tau * u) +
                                           b1 * std::cos(tau * u) +
                                           a2 * std::sin(2 * tau * (u + v)) +
                                           (g.dim > 1 ? b2 * std::cos(tau * v) : 0.0);
      }
  return f;
}

void criterion_5() {
  Criterion c(5, "one-step and multi-step trajectories coincide numerically");
  std::map<std::string, double> bind{{"lambda", 1.0}, {"s", 1.3},  {"p", 1.5},
                                     {"omega", 0.9},  {"omega2", 1.2}, {"omega3", 0.8},
                                     {"C", 0.4},      {"D", 0.4},  {"Cx", 0.3},
                                     {"Cy", -0.2}};
  for (const auto& name : catalog_names()) {
    if (name == "d1q3_burgers") continue;  // nonlinear case below
    BuiltScheme b = build(catalog_scheme(name));
    std::vector<FDScheme> fds = reduce_multi(b);
    Grid g = b.spec.dim == 1 ? Grid::line(64, 2.0 / 64) : Grid::plane(32, 32, 2.0 / 32);
    for (unsigned seed : {11u, 22u, 33u}) {
      std::vector<Field> init;
      for (int j = 0; j < b.spec.conserved; ++j)
        init.push_back(random_smooth(g, seed + static_cast<unsigned>(j) * 7));
      double dev = compare_trajectories(b, fds, 100, g, bind, init);
      c.require(dev <= 1e-11, name + " seed " + std::to_string(seed) + " deviation " +
                                  std::to_string(dev));
    }
  }
  {
    BuiltScheme b = build(catalog_scheme("d1q3_burgers"));
    Grid g = Grid::line(64, 2.0 / 64);
    for (unsigned seed : {11u, 22u, 33u}) {
      Field u0 = random_smooth(g, seed);
      for (auto& v : u0) v = 0.2 * (v - 1.5);
      double dev = compare_trajectories(b, reduce_multi(b), 50, g, bind, {u0});
      c.require(dev <= 1e-10, "burgers seed " + std::to_string(seed) + " deviation " +
                                  std::to_string(dev));
    }
  }
}

void criterion_6() {
  Criterion c(6, "stability probes and the closed-form condition cross-check");
  BuiltScheme b = build(catalog_scheme("d1q3"));
  RingPoly chi = closed_loop_charpoly(b, linear_equilibrium_vector(b.spec));
  auto verdict = [&](double s, double D) {
    std::map<std::string, double> bind{
        {"lambda", 1.0}, {"s", s}, {"p", 1.0}, {"C", 0.5}, {"D", D}};
    return sample_and_test(chi, 1, bind, 1.0);
  };
  for (double s : {0.5, 1.0, 1.5, 1.9})
    c.require(verdict(s, 0.4).stable, "expected stability at D = 0.4, s = " + std::to_string(s));
  c.require(verdict(1.15, -0.625).stable, "expected stability at s = 1.15, D = -0.625");
  c.require(!verdict(1.2, -0.625).stable, "expected instability at s = 1.2, D = -0.625");

  c.require(prop71_conditions(0.5, -0.625, 1.0).rectangle_ok,
            "rectangle boundary D = -0.625 included");
  c.require(!prop71_conditions(0.5, -0.626, 1.0).rectangle_ok,
            "rectangle boundary D = -0.625 sharp");

  // Verdict agreement on a 20 x 20 grid except within one cell of the
  // stability boundary (of either method).
  const int n1 = 20, n2 = 20;
  std::vector<bool> rootv(static_cast<std::size_t>(n1 * n2)), propv(rootv.size());
  for (int i = 0; i < n1; ++i) {
    double s = 0.0 + 2.0 * (i + 0.5) / n1;
    for (int j = 0; j < n2; ++j) {
      double D = -1.0 + 1.6 * (j + 0.5) / n2;
      rootv[static_cast<std::size_t>(i * n2 + j)] = verdict(s, D).stable;
      propv[static_cast<std::size_t>(i * n2 + j)] = prop71_conditions(0.5, D, s).stable();
    }
  }
  int bulk_disagreements = 0;
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      std::size_t at = static_cast<std::size_t>(i * n2 + j);
      if (rootv[at] == propv[at]) continue;
      bool near_boundary = false;
      for (int di = -1; di <= 1 && !near_boundary; ++di) {
        for (int dj = -1; dj <= 1 && !near_boundary; ++dj) {
          int ni = i + di, nj = j + dj;
          if (ni < 0 || nj < 0 || ni >= n1 || nj >= n2) continue;
          std::size_t nat = static_cast<std::size_t>(ni * n2 + nj);
          if (rootv[nat] != rootv[at] || propv[nat] != propv[at]) near_boundary = true;
        }
      }
      if (!near_boundary) ++bulk_disagreements;
    }
  }
  c.require(bulk_disagreements == 0,
            std::to_string(bulk_disagreements) + " disagreements away from the boundary");
}

void criterion_7() {
  Criterion c(7, "convergence orders of the advection bench");
  struct Expectation {
    double D, s;
    char datum;
    double order, tol;
  };
  const std::vector<Expectation> table{
      {0.4, 1.5, 'a', 0.25, 0.10}, {0.4, 1.5, 'b', 0.75, 0.10},
      {0.4, 1.5, 'c', 1.00, 0.15}, {0.4, 1.5, 'd', 1.00, 0.15},
      {-0.625, 1.0, 'a', 1.0 / 3, 0.10}, {-0.625, 1.0, 'b', 1.00, 0.15},
      {-0.625, 1.0, 'c', 5.0 / 3, 0.20}, {-0.625, 1.0, 'd', 2.00, 0.15},
  };
  for (const auto& e : table) {
    ConvergenceConfig cfg;
    cfg.datum = e.datum;
    cfg.s = e.s;
    cfg.D = e.D;
    cfg.level_min = 6;
    cfg.level_max = 11;
    ConvergenceTable t = convergence_study(cfg);
    char buf[160];
    std::snprintf(buf, sizeof buf, "datum %c at D = %g, s = %g: order %.3f, expected %.3f +- %.2f",
                  e.datum, e.D, e.s, t.ls_order, e.order, e.tol);
    c.require(!t.diverged && std::abs(t.ls_order - e.order) <= e.tol, buf);
  }
  {
    // Unstable choice: refinement must fail to converge. The peak growth
    // factor at (s, D) = (1.2, -0.625) is 1.000273 per step, so the
    // instability overtakes the consistency decay only around dx = 2^-13;
    // the sequence is therefore continued to 2^-14, where the error turns
    // upward and the non-convergence is unambiguous.
    ConvergenceConfig cfg;
    cfg.datum = 'a';
    cfg.s = 1.2;
    cfg.D = -0.625;
    cfg.level_min = 6;
    cfg.level_max = 14;
    ConvergenceTable t = convergence_study(cfg);
    bool turned = false;
    for (std::size_t i = 0; i + 1 < t.rows.size(); ++i)
      if (t.rows[i + 1].error >= t.rows[i].error) turned = true;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "unstable run must stop converging: errors %.3e (2^-6) .. %.3e (2^-11) .. "
                  "%.3e (2^-14)",
                  t.rows.front().error, t.rows[5].error, t.rows.back().error);
    c.require(turned && t.rows.back().error > t.rows[t.rows.size() - 2].error, buf);
    std::printf("  note: unstable witness needs dx below the pinned 2^-11 (peak growth "
                "1.000273); errors %.3e -> %.3e -> %.3e at 2^-11, 2^-13, 2^-14\n",
                t.rows[5].error, t.rows[7].error, t.rows[8].error);
  }
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria failed\n", g_failures);
  return 1;
}
