#ifndef LBFD_PARAM_POLY_HPP
#define LBFD_PARAM_POLY_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lbfd/rational.hpp"

namespace lbfd {

// Ordered set of scheme parameter names (e.g. lambda, s, p, C, D). The
// declaration order fixes the canonical (lexicographic) ordering of
// exponent vectors and therefore deterministic printing.
class ParamSet {
 public:
  ParamSet() = default;
  explicit ParamSet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  int index_of(std::string_view name) const;

  bool operator==(const ParamSet& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
};

using ParamSetPtr = std::shared_ptr<const ParamSet>;

ParamSetPtr make_param_set(std::vector<std::string> names);
const ParamSetPtr& empty_param_set();

// Polynomial in the declared parameters with exact rational coefficients.
// Zero coefficients are never stored; the zero polynomial has no terms.
class ParamPoly {
 public:
  using Exponents = std::vector<int>;  // one entry per declared parameter
  using TermMap = std::map<Exponents, Rational>;

  ParamPoly() : params_(empty_param_set()) {}
  static ParamPoly zero(ParamSetPtr params);
  static ParamPoly constant(Rational value, ParamSetPtr params);
  static ParamPoly parameter(std::string_view name, ParamSetPtr params);

  const ParamSetPtr& params() const { return params_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::optional<Rational> constant_value() const;  // nullopt if not constant

  ParamPoly operator-() const;
  ParamPoly operator+(const ParamPoly& o) const;
  ParamPoly operator-(const ParamPoly& o) const;
  ParamPoly operator*(const ParamPoly& o) const;
  ParamPoly scaled(const Rational& k) const;
  ParamPoly pow(unsigned k) const;

  bool operator==(const ParamPoly& o) const;

  // Positive gcd of all coefficients (0 for the zero polynomial).
  Rational content() const;
  // Sign of the lexicographically largest term's coefficient (0 if zero).
  int leading_sign() const;
  // Componentwise minimum exponent over all terms.
  Exponents min_exponents() const;
  // Divide every term by the given monomial (exponents must not go negative).
  ParamPoly monomial_quotient(const Exponents& e) const;

  // Exact polynomial division; nullopt if b does not divide a.
  static std::optional<ParamPoly> divide_exact(const ParamPoly& a, const ParamPoly& b);

  double eval(const std::map<std::string, double>& bindings) const;
  Rational eval_rational(const std::map<std::string, Rational>& bindings) const;
  ParamPoly substitute(std::string_view name, const Rational& value) const;
  // Remap onto a parameter set containing all of this one's names.
  ParamPoly with_params(const ParamSetPtr& superset) const;

  std::string str() const;  // terms in ascending lexicographic order

 private:
  ParamSetPtr params_;
  TermMap terms_;

  void insert_term(Exponents e, Rational c);
  friend class RationalCoeff;
};

// Raise both operands onto a common parameter set. Constants coerce onto any
// set; otherwise the sets must agree.
void unify_params(ParamPoly& a, ParamPoly& b);

}  // namespace lbfd

#endif
