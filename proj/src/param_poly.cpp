#include "lbfd/param_poly.hpp"

#include <algorithm>

#include "lbfd/error.hpp"

namespace lbfd {

ParamSet::ParamSet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j]) throw UserError("duplicate parameter name: " + names_[i]);
}

int ParamSet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return -1;
}

ParamSetPtr make_param_set(std::vector<std::string> names) {
  return std::make_shared<const ParamSet>(std::move(names));
}

const ParamSetPtr& empty_param_set() {
  static const ParamSetPtr empty = std::make_shared<const ParamSet>();
  return empty;
}

ParamPoly ParamPoly::zero(ParamSetPtr params) {
  ParamPoly p;
  p.params_ = std::move(params);
  return p;
}

ParamPoly ParamPoly::constant(Rational value, ParamSetPtr params) {
  ParamPoly p = zero(std::move(params));
  if (value != 0) p.terms_.emplace(Exponents(p.params_->size(), 0), std::move(value));
  return p;
}

ParamPoly ParamPoly::parameter(std::string_view name, ParamSetPtr params) {
  int idx = params->index_of(name);
  if (idx < 0) throw UserError("unknown parameter: " + std::string(name));
  ParamPoly p = zero(std::move(params));
  Exponents e(p.params_->size(), 0);
  e[static_cast<std::size_t>(idx)] = 1;
  p.terms_.emplace(std::move(e), Rational(1));
  return p;
}

bool ParamPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const Exponents& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
}

std::optional<Rational> ParamPoly::constant_value() const {
  if (!is_constant()) return std::nullopt;
  if (terms_.empty()) return Rational(0);
  return terms_.begin()->second;
}

void ParamPoly::insert_term(Exponents e, Rational c) {
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(std::move(e), std::move(c));
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void unify_params(ParamPoly& a, ParamPoly& b) {
  if (a.params() == b.params() || *a.params() == *b.params()) return;
  if (a.is_constant() && a.params()->size() == 0) {
    a = a.with_params(b.params());
    return;
  }
  if (b.is_constant() && b.params()->size() == 0) {
    b = b.with_params(a.params());
    return;
  }
  throw Error("parameter sets do not match");
}

ParamPoly ParamPoly::operator-() const {
  ParamPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

ParamPoly ParamPoly::operator+(const ParamPoly& o) const {
  ParamPoly a = *this, b = o;
  unify_params(a, b);
  for (const auto& [e, c] : b.terms_) a.insert_term(e, c);
  return a;
}

ParamPoly ParamPoly::operator-(const ParamPoly& o) const { return *this + (-o); }

ParamPoly ParamPoly::operator*(const ParamPoly& o) const {
  ParamPoly a = *this, b = o;
  unify_params(a, b);
  ParamPoly r = zero(a.params_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.insert_term(std::move(e), ca * cb);
    }
  }
  return r;
}

ParamPoly ParamPoly::scaled(const Rational& k) const {
  if (k == 0) return zero(params_);
  ParamPoly r = *this;
  for (auto& [e, c] : r.terms_) c *= k;
  return r;
}

ParamPoly ParamPoly::pow(unsigned k) const {
  ParamPoly r = constant(Rational(1), params_);
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

bool ParamPoly::operator==(const ParamPoly& o) const {
  ParamPoly a = *this, b = o;
  unify_params(a, b);
  return a.terms_ == b.terms_;
}

Rational ParamPoly::content() const {
  Rational g = 0;
  for (const auto& [e, c] : terms_) g = rational_gcd(g, c);
  return g;
}

int ParamPoly::leading_sign() const {
  if (terms_.empty()) return 0;
  return terms_.rbegin()->second < 0 ? -1 : 1;
}

ParamPoly::Exponents ParamPoly::min_exponents() const {
  if (terms_.empty()) return Exponents(params_->size(), 0);
  Exponents m = terms_.begin()->first;
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
  return m;
}

ParamPoly ParamPoly::monomial_quotient(const Exponents& e) const {
  ParamPoly r = zero(params_);
  for (const auto& [te, c] : terms_) {
    Exponents q(te.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
      q[i] = te[i] - e[i];
      if (q[i] < 0) throw Error("monomial quotient with negative exponent");
    }
    r.terms_.emplace(std::move(q), c);
  }
  return r;
}

std::optional<ParamPoly> ParamPoly::divide_exact(const ParamPoly& a, const ParamPoly& b) {
  if (b.is_zero()) return std::nullopt;
  ParamPoly x = a, y = b;
  unify_params(x, y);
  if (x.is_zero()) return x;
  // The trailing terms of an exact quotient also divide: reject early, and
  // bound the iterations by the exponent box the quotient can live in.
  long box = 1;
  {
    const Exponents& ta = x.terms_.begin()->first;
    const Exponents& tb = y.terms_.begin()->first;
    for (std::size_t i = 0; i < ta.size(); ++i)
      if (ta[i] < tb[i]) return std::nullopt;
    Exponents xa(ta.size(), 0), xb(ta.size(), 0);
    for (const auto& [e, c] : x.terms_)
      for (std::size_t i = 0; i < e.size(); ++i) xa[i] = std::max(xa[i], e[i]);
    for (const auto& [e, c] : y.terms_)
      for (std::size_t i = 0; i < e.size(); ++i) xb[i] = std::max(xb[i], e[i]);
    for (std::size_t i = 0; i < xa.size(); ++i) {
      if (xa[i] < xb[i]) return std::nullopt;
      box *= xa[i] - xb[i] + 1;
      if (box > 256) {
        box = 256;
        break;
      }
    }
  }
  ParamPoly q = zero(x.params_);
  ParamPoly r = x;
  const auto& [lead_e, lead_c] = *y.terms_.rbegin();
  // Failing divisions can reduce the leading monomial for a long time while
  // the remainder churns; genuine quotients in this codebase stay small.
  long budget = 4 + 2 * box;
  while (!r.is_zero()) {
    if (--budget < 0) return std::nullopt;
    const auto& [re, rc] = *r.terms_.rbegin();
    Exponents te(re.size());
    for (std::size_t i = 0; i < te.size(); ++i) {
      te[i] = re[i] - lead_e[i];
      if (te[i] < 0) return std::nullopt;
    }
    Rational tc = rc / lead_c;
    ParamPoly t = zero(x.params_);
    t.terms_.emplace(te, tc);
    q.insert_term(std::move(te), std::move(tc));
    r = r - t * y;
  }
  return q;
}

double ParamPoly::eval(const std::map<std::string, double>& bindings) const {
  std::vector<double> values(params_->size());
  for (std::size_t i = 0; i < params_->size(); ++i) {
    auto it = bindings.find(params_->name(i));
    bool used = false;
    for (const auto& [e, c] : terms_)
      if (e[i] != 0) used = true;
    if (it == bindings.end()) {
      if (used) throw UserError("unbound parameter: " + params_->name(i));
      values[i] = 0.0;
    } else {
      values[i] = it->second;
    }
  }
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = to_double(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (int k = 0; k < e[i]; ++k) t *= values[i];
    }
    sum += t;
  }
  return sum;
}

Rational ParamPoly::eval_rational(const std::map<std::string, Rational>& bindings) const {
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto it = bindings.find(params_->name(i));
      if (it == bindings.end()) throw UserError("unbound parameter: " + params_->name(i));
      for (int k = 0; k < e[i]; ++k) t *= it->second;
    }
    sum += t;
  }
  return sum;
}

ParamPoly ParamPoly::substitute(std::string_view name, const Rational& value) const {
  int idx = params_->index_of(name);
  if (idx < 0) return *this;
  ParamPoly r = zero(params_);
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (int k = 0; k < e[static_cast<std::size_t>(idx)]; ++k) t *= value;
    Exponents ne = e;
    ne[static_cast<std::size_t>(idx)] = 0;
    r.insert_term(std::move(ne), std::move(t));
  }
  return r;
}

ParamPoly ParamPoly::with_params(const ParamSetPtr& superset) const {
  std::vector<int> where(params_->size());
  for (std::size_t i = 0; i < params_->size(); ++i) {
    where[i] = superset->index_of(params_->name(i));
    if (where[i] < 0) throw Error("parameter " + params_->name(i) + " missing from target set");
  }
  ParamPoly r = zero(superset);
  for (const auto& [e, c] : terms_) {
    Exponents ne(superset->size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) ne[static_cast<std::size_t>(where[i])] = e[i];
    r.insert_term(std::move(ne), c);
  }
  return r;
}

std::string ParamPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational a = c;
    if (first) {
      if (a < 0) {
        out += "-";
        a = -a;
      }
    } else {
      out += (a < 0) ? "-" : "+";
      if (a < 0) a = -a;
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += params_->name(i);
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += rational_str(a);
    } else if (a == 1) {
      out += mono;
    } else {
      out += rational_str(a) + "*" + mono;
    }
  }
  return out;
}

}  // namespace lbfd
