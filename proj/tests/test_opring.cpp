#include <doctest.h>

#include <complex>
#include <random>

#include "helpers.hpp"

using namespace lbfd;
using namespace lbfd::testing;

TEST_CASE("addition: inverses and cancellation") {
  auto params = empty_param_set();
  OperatorPoly x = op("x", params);
  CHECK((x + (-x)).is_zero());
  CHECK(op("(x + x^-1) + (x - x^-1)", params) == op("2*x", params));
}

TEST_CASE("addition: two equivalent forms of the d1q3 gamma2 agree") {
  auto params = make_param_set({"s", "p"});
  OperatorPoly form1 = op("p*(x + 4 + x^-1)/6 + s*(x + x^-1)/2 - (x + 1 + x^-1)", params);
  OperatorPoly form2 =
      op("-(1-p)*(x + 4 + x^-1)/6 - (1-s)*(x + x^-1)/2 - (x + 1 + x^-1)/3", params);
  CHECK((form1 - form2).is_zero());
  CHECK(form1 == form2);
}

TEST_CASE("product: units and convolution") {
  auto params = empty_param_set();
  CHECK(op("x * x^-1", params) == op("1", params));
  CHECK(op("(x - x^-1)*(x + x^-1)", params) == op("x^2 - x^-2", params));
}

TEST_CASE("product: centered derivative squared") {
  auto params = make_param_set({"lambda"});
  OperatorPoly d = op("(x - x^-1)/(2*lambda)", params);
  CHECK(d * d == op("(x^2 - 2 + x^-2)/(4*lambda^2)", params));
}

TEST_CASE("unit inversion") {
  auto params = make_param_set({"lambda"});
  CHECK(op("2*x", params).unit_inverse() == op("x^-1/2", params));
  CHECK(op("lambda*x*y", params, 2).unit_inverse() == op("x^-1*y^-1/lambda", params, 2));
  CHECK_THROWS_AS(op("x + x^-1", params).unit_inverse(), Error);
  CHECK_THROWS_AS(OperatorPoly::zero(1, params).unit_inverse(), Error);
}

TEST_CASE("Fourier symbols") {
  auto params = make_param_set({"lambda"});
  std::map<std::string, double> bind{{"lambda", 1.0}};
  double dx = 0.25;
  for (double xi : {0.0, 0.7, -2.9}) {
    std::vector<double> w{xi};
    auto cosx = op("(x + x^-1)/2", params).eval_fourier(w, dx, bind);
    CHECK(std::abs(cosx - std::complex<double>(std::cos(dx * xi), 0.0)) < 1e-14);
    auto der = op("(x - x^-1)/(2*lambda)", params).eval_fourier(w, dx, bind);
    CHECK(std::abs(der - std::complex<double>(0.0, -std::sin(dx * xi))) < 1e-14);
  }
  std::vector<double> zero{0.0};
  CHECK(std::abs(op("x", params).eval_fourier(zero, dx, bind) - 1.0) < 1e-15);
}

TEST_CASE("Fourier evaluation rejects unbound parameters and zero denominators") {
  auto params = make_param_set({"lambda"});
  std::vector<double> w{1.0};
  CHECK_THROWS_AS(op("x/lambda", params).eval_fourier(w, 1.0, {}), UserError);
  CHECK_THROWS_AS(op("x/lambda", params).eval_fourier(w, 1.0, {{"lambda", 0.0}}), UserError);
}

TEST_CASE("ring axioms on random triples") {
  auto params = make_param_set({"s", "lambda"});
  std::mt19937 rng(7);
  for (int it = 0; it < 200; ++it) {
    int dim = 1 + (it % 2);
    OperatorPoly a = random_op(rng, dim, params);
    OperatorPoly b = random_op(rng, dim, params);
    OperatorPoly c = random_op(rng, dim, params);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) + c == a + (b + c));
  }
}

TEST_CASE("Fourier evaluation is a ring homomorphism") {
  auto params = make_param_set({"s", "lambda"});
  std::map<std::string, double> bind{{"s", 1.3}, {"lambda", 0.8}};
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> uxi(-3.0, 3.0);
  for (int it = 0; it < 100; ++it) {
    OperatorPoly a = random_op(rng, 1, params);
    OperatorPoly b = random_op(rng, 1, params);
    std::vector<double> w{uxi(rng)};
    auto ea = a.eval_fourier(w, 0.5, bind);
    auto eb = b.eval_fourier(w, 0.5, bind);
    auto eab = (a * b).eval_fourier(w, 0.5, bind);
    auto eapb = (a + b).eval_fourier(w, 0.5, bind);
    double scale = std::max({1.0, std::abs(ea) * std::abs(eb), std::abs(ea) + std::abs(eb)});
    CHECK(std::abs(eab - ea * eb) / scale < 1e-13);
    CHECK(std::abs(eapb - (ea + eb)) / scale < 1e-13);
  }
}

TEST_CASE("rational coefficients: representative independence") {
  auto params = make_param_set({"s", "lambda"});
  std::mt19937 rng(23);
  for (int it = 0; it < 100; ++it) {
    RationalCoeff a = random_coeff(rng, params);
    RationalCoeff b = random_coeff(rng, params);
    RationalCoeff k = random_coeff(rng, params);
    if (b.is_zero() || k.is_zero()) continue;
    RationalCoeff lhs = a / b;
    RationalCoeff rhs = (a * k) / (b * k);
    CHECK(lhs == rhs);
  }
  // (1-s)/(2 lambda) equals ((1-s)*lambda) / (2 lambda^2).
  CHECK(rc("(1-s)/(2*lambda)", params) == rc("((1-s)*lambda)/(2*lambda^2)", params));
}

TEST_CASE("zero is the empty term map") {
  auto params = make_param_set({"s"});
  OperatorPoly z = op("s*x - s*x", params);
  CHECK(z.is_zero());
  CHECK(z.terms().empty());
}

TEST_CASE("canonical rendering") {
  auto params = make_param_set({"lambda", "s"});
  CHECK(op("(1-s)/(2*lambda) * (x - x^-1)", params).str() ==
        "(1-s)/(2*lambda) * (x - x^-1)");
  CHECK(op("x^-1", params).str() == "x^-1");
  CHECK(op("0", params).str() == "0");
  CHECK(op("(x + 4 + x^-1)/6", params).str() == "1/6 * (x + 4 + x^-1)");
  CHECK(rc("s-1", params).str() == "-(1-s)");
}

TEST_CASE("dimension mismatch is rejected") {
  auto params = empty_param_set();
  OperatorPoly a = op("x", params, 1);
  OperatorPoly b = op("y", params, 2);
  CHECK_THROWS_AS(a + b, Error);
  CHECK_THROWS_AS(a * b, Error);
}
