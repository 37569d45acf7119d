#include "lbfd/rational_coeff.hpp"

#include "lbfd/error.hpp"

namespace lbfd {

RationalCoeff::RationalCoeff()
    : num_(ParamPoly::zero(empty_param_set())),
      den_(ParamPoly::constant(Rational(1), empty_param_set())) {}

RationalCoeff::RationalCoeff(ParamPoly num, ParamPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  unify_params(num_, den_);
  if (den_.is_zero()) throw Error("zero denominator in rational coefficient");
  normalize();
}

RationalCoeff RationalCoeff::zero(ParamSetPtr params) {
  return RationalCoeff(ParamPoly::zero(params), ParamPoly::constant(Rational(1), params));
}

RationalCoeff RationalCoeff::one(ParamSetPtr params) {
  return constant(Rational(1), std::move(params));
}

RationalCoeff RationalCoeff::constant(Rational value, ParamSetPtr params) {
  return RationalCoeff(ParamPoly::constant(std::move(value), params),
                       ParamPoly::constant(Rational(1), params));
}

RationalCoeff RationalCoeff::parameter(std::string_view name, ParamSetPtr params) {
  return RationalCoeff(ParamPoly::parameter(name, params),
                       ParamPoly::constant(Rational(1), params));
}

void RationalCoeff::normalize() {
  if (num_.is_zero()) {
    den_ = ParamPoly::constant(Rational(1), num_.params());
    return;
  }
  if (!den_.is_constant()) {
    // Cancel the common monomial factor.
    ParamPoly::Exponents mn = num_.min_exponents(), md = den_.min_exponents();
    ParamPoly::Exponents common(mn.size());
    bool any = false;
    for (std::size_t i = 0; i < mn.size(); ++i) {
      common[i] = std::min(mn[i], md[i]);
      any = any || common[i] > 0;
    }
    if (any) {
      num_ = num_.monomial_quotient(common);
      den_ = den_.monomial_quotient(common);
    }
    // Trial divisions catch the frequent exact cancellations.
    if (!den_.is_constant()) {
      if (auto q = ParamPoly::divide_exact(num_, den_)) {
        num_ = *q;
        den_ = ParamPoly::constant(Rational(1), num_.params());
      } else if (!num_.is_constant()) {
        if (auto p = ParamPoly::divide_exact(den_, num_)) {
          num_ = ParamPoly::constant(Rational(1), num_.params());
          den_ = *p;
        }
      }
    }
  }
  // Remove the common rational content of the pair and fix the sign so the
  // denominator's leading term is positive.
  Rational g = rational_gcd(num_.content(), den_.content());
  if (den_.leading_sign() < 0) g = -g;
  if (g != 1) {
    Rational inv = Rational(1) / g;
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

bool RationalCoeff::is_one() const { return num_ == den_; }

std::optional<Rational> RationalCoeff::constant_value() const {
  auto n = num_.constant_value();
  auto d = den_.constant_value();
  if (!n || !d) return std::nullopt;
  return *n / *d;
}

RationalCoeff RationalCoeff::operator-() const {
  RationalCoeff r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalCoeff RationalCoeff::operator+(const RationalCoeff& o) const {
  return RationalCoeff(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalCoeff RationalCoeff::operator-(const RationalCoeff& o) const {
  return RationalCoeff(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalCoeff RationalCoeff::operator*(const RationalCoeff& o) const {
  return RationalCoeff(num_ * o.num_, den_ * o.den_);
}

RationalCoeff RationalCoeff::operator/(const RationalCoeff& o) const {
  if (o.is_zero()) throw Error("division by zero coefficient");
  return RationalCoeff(num_ * o.den_, den_ * o.num_);
}

RationalCoeff RationalCoeff::inverse() const {
  if (is_zero()) throw Error("inverse of zero coefficient");
  return RationalCoeff(den_, num_);
}

RationalCoeff RationalCoeff::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  RationalCoeff r = one(params());
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

RationalCoeff RationalCoeff::divided_by_int(long k) const {
  if (k == 0) throw Error("division by zero");
  return RationalCoeff(num_, den_.scaled(Rational(k)));
}

bool RationalCoeff::operator==(const RationalCoeff& o) const {
  return (num_ * o.den_ - o.num_ * den_).is_zero();
}

double RationalCoeff::eval(const std::map<std::string, double>& bindings) const {
  double d = den_.eval(bindings);
  if (d == 0.0) throw UserError("parameter binding makes a denominator vanish: " + den_.str());
  return num_.eval(bindings) / d;
}

RationalCoeff RationalCoeff::substitute(std::string_view name, const Rational& value) const {
  return RationalCoeff(num_.substitute(name, value), den_.substitute(name, value));
}

RationalCoeff RationalCoeff::with_params(const ParamSetPtr& superset) const {
  return RationalCoeff(num_.with_params(superset), den_.with_params(superset));
}

std::string RationalCoeff::str() const {
  if (is_zero()) return "0";
  // Hoist an overall minus sign so e.g. s - 1 prints as -(1-s).
  ParamPoly n = num_;
  bool neg = n.terms().begin()->second < 0;
  if (neg) n = -n;
  std::string ns = n.str();
  if (n.terms().size() > 1) ns = "(" + ns + ")";
  std::string out = (neg ? "-" : "") + ns;
  if (!(den_.constant_value() == Rational(1))) {
    std::string ds = den_.str();
    if (!den_.is_constant() || den_.terms().size() > 1) ds = "(" + ds + ")";
    out += "/" + ds;
  }
  return out;
}

}  // namespace lbfd
