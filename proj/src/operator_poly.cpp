#include "lbfd/operator_poly.hpp"

#include <algorithm>
#include <cmath>

#include "lbfd/error.hpp"

namespace lbfd {

Shift shift_of(int a, int b, int c) { return Shift{a, b, c}; }

Shift shift_add(const Shift& a, const Shift& b) {
  return Shift{a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

Shift shift_neg(const Shift& a) { return Shift{-a[0], -a[1], -a[2]}; }

OperatorPoly OperatorPoly::zero(int dim, ParamSetPtr params) {
  OperatorPoly p;
  p.dim_ = dim;
  p.params_ = std::move(params);
  return p;
}

OperatorPoly OperatorPoly::one(int dim, ParamSetPtr params) {
  return shift_op(Shift{0, 0, 0}, dim, std::move(params));
}

OperatorPoly OperatorPoly::constant(RationalCoeff c, int dim) {
  return term(std::move(c), Shift{0, 0, 0}, dim);
}

OperatorPoly OperatorPoly::shift_op(const Shift& z, int dim, ParamSetPtr params) {
  OperatorPoly p = zero(dim, params);
  p.terms_.emplace(z, RationalCoeff::one(std::move(params)));
  return p;
}

OperatorPoly OperatorPoly::term(RationalCoeff c, const Shift& z, int dim) {
  for (int i = dim; i < 3; ++i)
    if (z[static_cast<std::size_t>(i)] != 0) throw Error("shift exponent beyond dimension");
  OperatorPoly p = zero(dim, c.params());
  if (!c.is_zero()) p.terms_.emplace(z, std::move(c));
  return p;
}

bool OperatorPoly::is_coefficient() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && terms_.begin()->first == Shift{0, 0, 0};
}

RationalCoeff OperatorPoly::as_coefficient() const {
  if (!is_coefficient()) throw Error("operator has shift terms, not a pure coefficient");
  if (terms_.empty()) return RationalCoeff::zero(params_);
  return terms_.begin()->second;
}

RationalCoeff OperatorPoly::coefficient_at(const Shift& z) const {
  auto it = terms_.find(z);
  if (it == terms_.end()) return RationalCoeff::zero(params_);
  return it->second;
}

void OperatorPoly::insert_term(const Shift& z, RationalCoeff c) {
  if (c.is_zero()) return;
  auto it = terms_.find(z);
  if (it == terms_.end()) {
    terms_.emplace(z, std::move(c));
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void OperatorPoly::unify(OperatorPoly& a, OperatorPoly& b) {
  if (a.dim_ != b.dim_) {
    // A pure coefficient (no shift terms) can live in any dimension.
    if (a.is_coefficient())
      a.dim_ = b.dim_;
    else if (b.is_coefficient())
      b.dim_ = a.dim_;
    else
      throw Error("operator dimension mismatch");
  }
  if (a.params_ == b.params_ || *a.params_ == *b.params_) return;
  if (a.params_->size() == 0) {
    a = a.with_params(b.params_);
  } else if (b.params_->size() == 0) {
    b = b.with_params(a.params_);
  } else {
    throw Error("parameter sets do not match");
  }
}

OperatorPoly OperatorPoly::operator-() const {
  OperatorPoly r = *this;
  for (auto& [z, c] : r.terms_) c = -c;
  return r;
}

OperatorPoly OperatorPoly::operator+(const OperatorPoly& o) const {
  OperatorPoly a = *this, b = o;
  unify(a, b);
  for (const auto& [z, c] : b.terms_) a.insert_term(z, c);
  return a;
}

OperatorPoly OperatorPoly::operator-(const OperatorPoly& o) const { return *this + (-o); }

OperatorPoly OperatorPoly::operator*(const OperatorPoly& o) const {
  OperatorPoly a = *this, b = o;
  unify(a, b);
  OperatorPoly r = zero(a.dim_, a.params_);
  for (const auto& [za, ca] : a.terms_)
    for (const auto& [zb, cb] : b.terms_) r.insert_term(shift_add(za, zb), ca * cb);
  return r;
}

OperatorPoly OperatorPoly::scaled(const RationalCoeff& c) const {
  if (c.is_zero()) return zero(dim_, params_);
  OperatorPoly r = zero(dim_, params_);
  for (const auto& [z, tc] : terms_) r.insert_term(z, tc * c);
  return r;
}

OperatorPoly OperatorPoly::pow(int k) const {
  if (k < 0) return unit_inverse().pow(-k);
  OperatorPoly r = one(dim_, params_);
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

OperatorPoly OperatorPoly::unit_inverse() const {
  if (terms_.size() != 1) throw Error("not a unit: " + str());
  const auto& [z, c] = *terms_.begin();
  return term(c.inverse(), shift_neg(z), dim_);
}

bool OperatorPoly::operator==(const OperatorPoly& o) const {
  OperatorPoly a = *this, b = o;
  unify(a, b);
  if (a.terms_.size() != b.terms_.size()) return false;
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    if (!(ia->second == ib->second)) return false;
  }
  return true;
}

Shift OperatorPoly::min_exponents() const {
  Shift m{0, 0, 0};
  bool first = true;
  for (const auto& [z, c] : terms_) {
    if (first) {
      m = z;
      first = false;
    } else {
      for (int i = 0; i < 3; ++i) m[i] = std::min(m[i], z[i]);
    }
  }
  return m;
}

Shift OperatorPoly::max_exponents() const {
  Shift m{0, 0, 0};
  bool first = true;
  for (const auto& [z, c] : terms_) {
    if (first) {
      m = z;
      first = false;
    } else {
      for (int i = 0; i < 3; ++i) m[i] = std::max(m[i], z[i]);
    }
  }
  return m;
}

std::complex<double> OperatorPoly::eval_fourier(
    std::span<const double> xi, double dx,
    const std::map<std::string, double>& bindings) const {
  std::complex<double> sum = 0.0;
  for (const auto& [z, c] : terms_) {
    double phase = 0.0;
    for (int i = 0; i < dim_; ++i) phase += dx * z[static_cast<std::size_t>(i)] * xi[i];
    sum += c.eval(bindings) * std::exp(std::complex<double>(0.0, -phase));
  }
  return sum;
}

OperatorPoly OperatorPoly::substitute(std::string_view name, const Rational& value) const {
  OperatorPoly r = zero(dim_, params_);
  for (const auto& [z, c] : terms_) r.insert_term(z, c.substitute(name, value));
  return r;
}

OperatorPoly OperatorPoly::with_params(const ParamSetPtr& superset) const {
  OperatorPoly r = zero(dim_, superset);
  for (const auto& [z, c] : terms_) r.insert_term(z, c.with_params(superset));
  return r;
}

namespace {

std::string shift_str(const Shift& z, int dim) {
  static const char* names[3] = {"x", "y", "z"};
  std::string out;
  for (int i = 0; i < dim; ++i) {
    int e = z[static_cast<std::size_t>(i)];
    if (e == 0) continue;
    if (!out.empty()) out += "*";
    out += names[i];
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;  // empty for the identity shift
}

}  // namespace

std::string OperatorPoly::str() const {
  if (terms_.empty()) return "0";
  if (is_coefficient()) return terms_.begin()->second.str();

  // Terms in descending lexicographic order, so x comes before 1 and x^-1.
  std::vector<std::pair<Shift, RationalCoeff>> ts(terms_.rbegin(), terms_.rend());

  // When the coefficients only differ by rational factors, hoist their
  // common content: (x + 4 + x^-1)/6 prints as "1/6 * (x + 4 + x^-1)" and
  // the d1q2 flux as "(1-s)/(2*lambda) * (x - x^-1)".
  if (ts.size() > 1) {
    const RationalCoeff& c0 = ts.front().second;
    bool common = true;
    std::vector<Rational> ratio(ts.size());
    for (std::size_t i = 0; i < ts.size() && common; ++i) {
      auto r = (ts[i].second / c0).constant_value();
      if (r)
        ratio[i] = *r;
      else
        common = false;
    }
    if (common) {
      Rational g = 0;
      for (const Rational& r : ratio) g = rational_gcd(g, r);
      RationalCoeff group = c0 * RationalCoeff::constant(g, params_);
      std::string inner;
      for (std::size_t i = 0; i < ts.size(); ++i) {
        Rational k = ratio[i] / g;
        std::string m = shift_str(ts[i].first, dim_);
        Rational a = k < 0 ? Rational(-k) : k;
        std::string body;
        if (m.empty())
          body = rational_str(a);
        else if (a == 1)
          body = m;
        else
          body = rational_str(a) + "*" + m;
        if (i == 0)
          inner += (k < 0 ? "-" : "") + body;
        else
          inner += (k < 0 ? " - " : " + ") + body;
      }
      if (group.is_one()) return "(" + inner + ")";
      if ((-group).is_one()) return "-(" + inner + ")";
      return group.str() + " * (" + inner + ")";
    }
  }

  std::string out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    RationalCoeff c = ts[i].second;
    std::string cs = c.str();
    bool neg = !cs.empty() && cs[0] == '-';
    if (neg) cs = (-c).str();
    if (i == 0) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    std::string m = shift_str(ts[i].first, dim_);
    if (m.empty()) {
      out += cs;
    } else if (cs == "1") {
      out += m;
    } else {
      out += cs + " * " + m;
    }
  }
  return out;
}

}  // namespace lbfd
