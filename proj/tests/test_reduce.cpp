#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "lbfd/reduce.hpp"
#include "lbfd/sim.hpp"

using namespace lbfd;
using namespace lbfd::testing;

namespace {

SchemeSpec d1q3_with_p(const std::string& p) {
  SchemeSpec s = catalog_scheme("d1q3");
  s.rates[2] = rc(p, s.params);
  return s;
}

int count_occurrences(const std::string& text, const std::string& token) {
  int n = 0;
  for (std::size_t pos = text.find(token); pos != std::string::npos;
       pos = text.find(token, pos + 1))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("d1q2 reduces to the theta scheme") {
  BuiltScheme b = build(catalog_scheme("d1q2"));
  const ParamSetPtr& P = b.spec.params;
  FDScheme fd = reduce_single(b);
  CHECK(fd.steps == 2);
  CHECK(fd.provenance == "charpoly");
  CHECK(fd.homogeneous[0] == op("(2-s)*(x + x^-1)/2", P));
  CHECK(fd.homogeneous[1] == op("-(1-s)", P));
  REQUIRE(fd.sources[0].size() == 1);
  CHECK(fd.sources[0].at(1) == op("s*(x - x^-1)/(2*lambda)", P));
  CHECK(fd.sources[1].empty());
  CHECK(fd.cross[0].empty());
}

TEST_CASE("d1q3 reduces to its three-step closed form") {
  BuiltScheme b = build(catalog_scheme("d1q3"));
  const ParamSetPtr& P = b.spec.params;
  FDScheme fd = reduce_single(b);
  CHECK(fd.steps == 3);
  CHECK(fd.homogeneous[0] ==
        op("-p*(x + 4 + x^-1)/6 - s*(x + x^-1)/2 + (x + 1 + x^-1)", P));
  CHECK(fd.homogeneous[1] ==
        op("-p*s*(x + 1 + x^-1)/3 + p*(5*x + 2 + 5*x^-1)/6 + s*(x + 2 + x^-1)/2 - (x + 1 + x^-1)",
           P));
  CHECK(fd.homogeneous[2] == op("(1-p)*(1-s)", P));
  REQUIRE(fd.sources[0].size() == 2);
  CHECK(fd.sources[0].at(1) == op("s*(x - x^-1)/(2*lambda)", P));
  CHECK(fd.sources[0].at(2) == op("p*(x - 2 + x^-1)/(6*lambda^2)", P));
  REQUIRE(fd.sources[1].size() == 2);
  CHECK(fd.sources[1].at(1) == op("-s*(1-p)*(x - x^-1)/(2*lambda)", P));
  CHECK(fd.sources[1].at(2) == op("p*(1-s)*(x - 2 + x^-1)/(6*lambda^2)", P));
  CHECK(fd.sources[2].empty());
}

TEST_CASE("d1q3 with p = 1: trimmed two-step scheme, equal to the full path") {
  BuiltScheme b = build(d1q3_with_p("1"));
  const ParamSetPtr& P = b.spec.params;
  FDScheme fd = reduce_single(b);
  CHECK(fd.steps == 2);
  CHECK(fd.provenance == "trimmed");
  CHECK(fd.homogeneous[0] == op("(1-s)*(x + x^-1)/2 + (x + 1 + x^-1)/3", P));
  CHECK(fd.homogeneous[1] == op("-(1-s)*(x + 4 + x^-1)/6", P));
  CHECK(fd.sources[0].at(1) == op("s*(x - x^-1)/(2*lambda)", P));
  CHECK(fd.sources[0].at(2) == op("(x - 2 + x^-1)/(6*lambda^2)", P));
  CHECK(fd.sources[1].at(2) == op("(1-s)*(x - 2 + x^-1)/(6*lambda^2)", P));
  CHECK(fd.sources[1].count(1) == 0);

  ReduceOptions full;
  full.trim = false;
  FDScheme fd_full = reduce_single(b, full);
  CHECK(fd == fd_full);
}

TEST_CASE("two conserved moments: both closed forms of the coupled d1q3") {
  BuiltScheme b = build(catalog_scheme("d1q3_two"));
  const ParamSetPtr& P = b.spec.params;
  std::vector<FDScheme> fds = reduce_multi(b);
  REQUIRE(fds.size() == 2);

  const FDScheme& m1 = fds[0];
  CHECK(m1.steps == 2);
  CHECK(m1.homogeneous[0] == op("1 + (1-p)*(x + x^-1)/2", P));
  CHECK(m1.homogeneous[1] == op("-(1-p)*(x + x^-1)/2", P));
  CHECK(m1.cross[0].at(1) == op("(x - x^-1)/(2*lambda)", P));
  CHECK(m1.cross[1].at(1) == op("-(1-p)*(x - x^-1)/(2*lambda)", P));
  CHECK(m1.sources[0].at(2) == op("p*(x - 2 + x^-1)/(2*lambda^2)", P));
  CHECK(m1.sources[1].empty());

  const FDScheme& m2 = fds[1];
  CHECK(m2.steps == 2);
  CHECK(m2.homogeneous[0] == op("(2-p)*(x + x^-1)/2", P));
  CHECK(m2.homogeneous[1] == op("-(1-p)", P));
  CHECK(m2.cross[0].empty());
  CHECK(m2.cross[1].empty());
  CHECK(m2.sources[0].at(2) == op("p*(x - x^-1)/(2*lambda)", P));
  CHECK(m2.sources[1].empty());
}

TEST_CASE("reduce_multi specializes to reduce_single for one conserved moment") {
  BuiltScheme b = build(catalog_scheme("d1q3"));
  std::vector<FDScheme> fds = reduce_multi(b);
  REQUIRE(fds.size() == 1);
  CHECK(fds[0] == reduce_single(b));
}

TEST_CASE("d1q3 SRT closed form") {
  BuiltScheme b = build(catalog_scheme("d1q3_srt"));
  const ParamSetPtr& P = b.spec.params;
  FDScheme fd = reduce_single(b);
  CHECK(fd.steps == 3);
  CHECK(fd.homogeneous[0] == op("(1-omega)*(x + x^-1) + 1", P));
  CHECK(fd.homogeneous[1] == op("-(1-omega)*(x + x^-1) - (1-omega)^2", P));
  CHECK(fd.homogeneous[2] == op("(1-omega)^2", P));
  CHECK(fd.sources[0].at(1) == op("omega*(x - x^-1)/(2*lambda)", P));
  CHECK(fd.sources[1].at(1) == op("-omega*(1-omega)*(x - x^-1)/(2*lambda)", P));
  CHECK(fd.sources[0].at(2) == op("omega*(x - 2 + x^-1)/(2*lambda^2)", P));
  CHECK(fd.sources[1].at(2) == op("omega*(1-omega)*(x - 2 + x^-1)/(2*lambda^2)", P));
  CHECK(fd.sources[2].empty());
}

TEST_CASE("d1q3 MRT closed form") {
  BuiltScheme b = build(catalog_scheme("d1q3_mrt"));
  const ParamSetPtr& P = b.spec.params;
  FDScheme fd = reduce_single(b);
  CHECK(fd.steps == 3);
  CHECK(fd.homogeneous[0] == op("(1 - omega2/2 - omega3/2)*(x + x^-1) + 1", P));
  CHECK(fd.homogeneous[1] ==
        op("-(1 - omega2/2 - omega3/2)*(x + x^-1) - (1 - omega2 - omega3 + omega2*omega3)", P));
  CHECK(fd.homogeneous[2] == op("(1-omega2)*(1-omega3)", P));
  CHECK(fd.sources[0].at(1) == op("omega2*(x - x^-1)/(2*lambda)", P));
  CHECK(fd.sources[1].at(1) == op("-omega2*(1-omega3)*(x - x^-1)/(2*lambda)", P));
  CHECK(fd.sources[0].at(2) == op("omega3*(x - 2 + x^-1)/(2*lambda^2)", P));
  CHECK(fd.sources[1].at(2) == op("omega3*(1-omega2)*(x - 2 + x^-1)/(2*lambda^2)", P));
  CHECK(fd.sources[2].empty());
}

TEST_CASE("d2q4 reduces to its three-step closed form") {
  BuiltScheme b = build(catalog_scheme("d2q4"));
  const ParamSetPtr& P = b.spec.params;
  FDScheme fd = reduce_single(b);
  CHECK(fd.steps == 3);
  CHECK(fd.provenance == "trimmed");
  std::string avg_axis = "(x + x^-1 + y + y^-1)/4";
  std::string avg_diag = "(x*y + x*y^-1 + x^-1*y + x^-1*y^-1)/4";
  CHECK(fd.homogeneous[0] == op("-(2*s-3)*" + avg_axis, P, 2));
  CHECK(fd.homogeneous[1] == op("-(1-s) - (1-s)*(2-s)*" + avg_diag, P, 2));
  CHECK(fd.homogeneous[2] == op("(1-s)^2*" + avg_axis, P, 2));
  CHECK(fd.sources[0].at(1) == op("s*(x - x^-1)/(2*lambda)", P, 2));
  CHECK(fd.sources[0].at(2) == op("s*(y - y^-1)/(2*lambda)", P, 2));
  CHECK(fd.sources[1].at(1) == op("-s*(1-s)*(x - x^-1)*(y + y^-1)/(4*lambda)", P, 2));
  CHECK(fd.sources[1].at(2) == op("-s*(1-s)*(y - y^-1)*(x + x^-1)/(4*lambda)", P, 2));
  // The flux moments get no lag-2 sources (m4^eq is zero in this catalog
  // entry, so its stencils never fire).
  CHECK(fd.sources[2].count(1) == 0);
  CHECK(fd.sources[2].count(2) == 0);
}

TEST_CASE("link schemes reduce to the two-step scheme through the first-row path") {
  for (int w = 1; w <= 3; ++w) {
    BuiltScheme b = build(make_link_scheme(w));
    const ParamSetPtr& P = b.spec.params;
    FDScheme fd = reduce_mpafr(b);
    CHECK(fd.steps == 2);
    CHECK(fd.provenance == "mpafr");
    CHECK(fd.homogeneous[0] == op("2-s", P));
    CHECK(fd.homogeneous[1] == op("-(1-s)", P));
    REQUIRE(fd.sources[0].size() == static_cast<std::size_t>(2 * w));
    for (int l = 1; l <= w; ++l) {
      std::string cl = std::to_string(l);
      CHECK(fd.sources[0].at(2 * l - 1) ==
            op("s*(x^" + cl + " - x^-" + cl + ")/(2*lambda)", P));
      CHECK(fd.sources[0].at(2 * l) ==
            op("(2-s)*(x^" + cl + " - 2 + x^-" + cl + ")/(2*lambda^2)", P));
    }
    CHECK(fd.sources[1].empty());
  }
}

TEST_CASE("the link reduction is independent of dimension and pair choice") {
  // Two pairs in the plane, one diagonal: still the same two-step scheme,
  // with the pair shifts appearing in the source stencils.
  std::vector<Shift> pairs{{1, 0, 0}, {1, 1, 0}};
  BuiltScheme b = build(make_link_scheme(pairs, 2));
  const ParamSetPtr& P = b.spec.params;
  FDScheme fd = reduce_mpafr(b);
  CHECK(fd.steps == 2);
  CHECK(fd.homogeneous[0] == op("2-s", P, 2));
  CHECK(fd.homogeneous[1] == op("-(1-s)", P, 2));
  CHECK(fd.sources[0].at(1) == op("s*(x - x^-1)/(2*lambda)", P, 2));
  CHECK(fd.sources[0].at(3) == op("s*(x*y - x^-1*y^-1)/(2*lambda)", P, 2));
  CHECK(fd.sources[0].at(4) == op("(2-s)*(x*y - 2 + x^-1*y^-1)/(2*lambda^2)", P, 2));
  CHECK(fd.sources[1].empty());

  Grid g = Grid::plane(16, 16, 1.0);
  std::map<std::string, double> bind{{"lambda", 1.0}, {"s", 1.3}, {"C", 0.2}, {"D", 0.3}};
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Field u0(static_cast<std::size_t>(g.cells()));
  for (auto& v : u0) v = 1.0 + 0.3 * uni(rng);
  CHECK(compare_trajectories(b, {fd}, 60, g, bind, {u0}) <= 1e-11);
}

TEST_CASE("the first-row path agrees with the characteristic path on d1q3") {
  BuiltScheme b = build(catalog_scheme("d1q3"));
  CHECK(reduce_mpafr(b) == reduce_single(b));
}

TEST_CASE("a decoupled first row gives a one-step first-row reduction") {
  SchemeSpec s = catalog_scheme("d1q3");
  s.rates[1] = RationalCoeff::one(s.params);
  s.rates[2] = RationalCoeff::one(s.params);
  FDScheme fd = reduce_mpafr(build(s));
  CHECK(fd.steps == 1);
  CHECK(fd.homogeneous[0] == op("(x + 1 + x^-1)/3", s.params));
}

TEST_CASE("d1q2 interpolates between averaging and leap-frog") {
  SchemeSpec base = catalog_scheme("d1q2");
  SchemeSpec s2 = base;
  s2.rates[1] = rc("2", s2.params);
  FDScheme leapfrog = reduce_single(build(s2));
  CHECK(leapfrog.homogeneous[0].is_zero());
  CHECK(leapfrog.homogeneous[1] == op("1", s2.params));

  SchemeSpec s1 = base;
  s1.rates[1] = RationalCoeff::one(s1.params);
  CHECK(reduce_single(build(s1)).homogeneous[0] == op("(x + x^-1)/2", s1.params));
}

TEST_CASE("all rates one: a single-step scheme with sources only at lag zero") {
  SchemeSpec s = catalog_scheme("d1q3");
  s.rates[1] = RationalCoeff::one(s.params);
  s.rates[2] = RationalCoeff::one(s.params);
  FDScheme fd = reduce_single(build(s));
  CHECK(fd.steps == 1);
  CHECK(fd.homogeneous[0] == op("(x + 1 + x^-1)/3", s.params));
  CHECK(!fd.sources[0].empty());
}

TEST_CASE("bootstrap plans") {
  SchemeSpec relax = catalog_scheme("d1q3");
  relax.rates[1] = RationalCoeff::one(relax.params);
  relax.rates[2] = RationalCoeff::one(relax.params);
  BuiltScheme br = build(relax);
  CHECK(bootstrap_plan(br, reduce_single(br)).warmup_steps == 0);

  BuiltScheme b3 = build(catalog_scheme("d1q3"));
  CHECK(bootstrap_plan(b3, reduce_single(b3)).warmup_steps == 2);

  BuiltScheme b2 = build(catalog_scheme("d1q2"));
  CHECK(bootstrap_plan(b2, reduce_single(b2)).warmup_steps == 1);
}

TEST_CASE("rendering") {
  BuiltScheme d1q2 = build(catalog_scheme("d1q2"));
  std::string text = render(reduce_single(d1q2));
  CHECK(count_occurrences(text, "(1-s)") == 1);
  CHECK(text.find("m1[n+1] =") == 0);
  CHECK(text.find("m2^eq[n]") != std::string::npos);

  FDScheme zero;
  zero.steps = 1;
  zero.homogeneous.assign(1, OperatorPoly::zero(1, empty_param_set()));
  zero.sources.assign(1, {});
  zero.cross.assign(1, {});
  CHECK(render(zero) == "m1[n+1] = 0\n");
}

TEST_CASE("d1q3 stencil golden file") {
  BuiltScheme b = build(catalog_scheme("d1q3"));
  std::string text = render(reduce_single(b));
  std::ifstream golden(std::string(LBFD_TEST_DIR) + "/golden/d1q3_stencil.txt");
  REQUIRE_MESSAGE(golden.good(), "golden file missing");
  std::stringstream buf;
  buf << golden.rdbuf();
  CHECK(text == buf.str());
}

TEST_CASE("stencil support stays inside the space-time cone") {
  for (const auto& name : catalog_names()) {
    BuiltScheme b = build(catalog_scheme(name));
    if (b.spec.conserved != 1) continue;
    FDScheme fd = reduce_single(b);
    int cmax = 0;
    for (const Shift& c : b.spec.velocities)
      for (int a = 0; a < b.spec.dim; ++a)
        cmax = std::max(cmax, std::abs(c[static_cast<std::size_t>(a)]));
    for (int k = 0; k < fd.steps; ++k) {
      auto check_support = [&](const OperatorPoly& p) {
        for (const auto& [z, c] : p.terms())
          for (int a = 0; a < b.spec.dim; ++a)
            CHECK(std::abs(z[static_cast<std::size_t>(a)]) <= (k + 1) * cmax);
      };
      check_support(fd.homogeneous[static_cast<std::size_t>(k)]);
      for (const auto& [i, p] : fd.sources[static_cast<std::size_t>(k)]) check_support(p);
    }
  }
}

TEST_CASE("constants are fixed points of the homogeneous part") {
  // With zero equilibria a conservative scheme must preserve constants:
  // the homogeneous symbols sum to one at zero wave number.
  std::map<std::string, double> bind{{"lambda", 1.0}, {"s", 1.3},  {"p", 0.7},
                                     {"omega", 1.1},  {"omega2", 0.6}, {"omega3", 1.4},
                                     {"C", 0.4},      {"D", 0.2},  {"Cx", 0.3},
                                     {"Cy", -0.2}};
  for (const auto& name : catalog_names()) {
    BuiltScheme b = build(catalog_scheme(name));
    for (const FDScheme& fd : reduce_multi(b)) {
      std::vector<double> xi(static_cast<std::size_t>(fd.dim), 0.0);
      std::complex<double> sum = 0.0;
      for (const auto& h : fd.homogeneous) sum += h.eval_fourier(xi, 1.0, bind);
      INFO(name);
      CHECK(std::abs(sum - 1.0) < 1e-13);
    }
  }
}

TEST_CASE("serialization is deterministic and complete") {
  BuiltScheme b = build(catalog_scheme("d1q3"));
  FDScheme fd = reduce_single(b);
  std::string s1 = serialize(fd), s2 = serialize(fd);
  CHECK(s1 == s2);
  CHECK(s1.find("steps 3") != std::string::npos);
  CHECK(s1.find("stencil homogeneous lag 0") != std::string::npos);
  CHECK(s1.find("stencil source m2^eq lag 1") != std::string::npos);
  CHECK(s1.find("end") != std::string::npos);
}
