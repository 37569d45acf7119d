#include "lbfd/scheme.hpp"

#include <algorithm>
#include <cctype>

#include "lbfd/error.hpp"

namespace lbfd {

void SchemeSpec::validate() const {
  if (dim < 1 || dim > 3) throw UserError("dimension must be 1, 2 or 3");
  if (q < 1) throw UserError("q must be positive");
  if (conserved < 1 || conserved > q)
    throw UserError("conserved moment count must lie in [1, q]");
  if (static_cast<int>(velocities.size()) != q)
    throw UserError("velocity count does not match q");
  for (const Shift& c : velocities)
    for (int i = dim; i < 3; ++i)
      if (c[static_cast<std::size_t>(i)] != 0)
        throw UserError("velocity has a component beyond the declared dimension");
  if (static_cast<int>(moment_matrix.size()) != q * q)
    throw UserError("moment matrix must have q*q entries");
  if (static_cast<int>(rates.size()) != q) throw UserError("relaxation needs q entries");
  for (int i = 0; i < conserved; ++i)
    if (!rates[static_cast<std::size_t>(i)].is_zero())
      throw UserError("relaxation rate " + std::to_string(i + 1) +
                      " must be zero (conserved moment)");
  for (const auto& [idx, expr] : equilibria) {
    if (idx < conserved || idx >= q)
      throw UserError("equilibrium index m" + std::to_string(idx + 1) +
                      " is not a non-conserved moment");
    std::vector<std::string> syms;
    collect_symbols(*expr, syms);
    for (const auto& s : syms) {
      if (params->index_of(s) >= 0) continue;
      if (s.size() > 1 && s[0] == 'm') {
        bool digits = std::all_of(s.begin() + 1, s.end(),
                                  [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
        if (digits) {
          int k = std::stoi(s.substr(1));
          if (k >= 1 && k <= conserved) continue;
          throw UserError("equilibrium references " + s + " which is not a conserved moment");
        }
      }
      throw UserError("unknown symbol in equilibrium: " + s);
    }
  }
}

ExprPtr SchemeSpec::equilibrium(int i) const {
  auto it = equilibria.find(i);
  if (it != equilibria.end()) return it->second;
  return Expr::integer(0);
}

BuiltScheme build(const SchemeSpec& spec) {
  spec.validate();
  BuiltScheme out;
  out.spec = spec;
  const int q = spec.q, d = spec.dim;
  const ParamSetPtr& params = spec.params;

  for (int i = spec.conserved; i < q; ++i) {
    auto v = spec.rates[static_cast<std::size_t>(i)].constant_value();
    if (v && (*v <= 0 || *v > 2))
      out.warnings.push_back("relaxation rate " + std::to_string(i + 1) + " = " +
                             rational_str(*v) + " lies outside (0, 2]");
  }

  OpMatrix m(q, q, d, params);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) m.at(i, j) = OperatorPoly::constant(spec.m_entry(i, j), d);
  OpMatrix minv = field_invert(m);

  std::vector<OperatorPoly> shifts;
  shifts.reserve(static_cast<std::size_t>(q));
  for (const Shift& c : spec.velocities) shifts.push_back(OperatorPoly::shift_op(c, d, params));

  out.T = m * OpMatrix::diagonal(shifts) * minv;

  OpMatrix i_minus_s(q, q, d, params), s_diag(q, q, d, params);
  for (int i = 0; i < q; ++i) {
    const RationalCoeff& s = spec.rates[static_cast<std::size_t>(i)];
    i_minus_s.at(i, i) = OperatorPoly::constant(RationalCoeff::one(params) - s, d);
    s_diag.at(i, i) = OperatorPoly::constant(s, d);
  }
  out.A = out.T * i_minus_s;
  out.B = out.T * s_diag;

  if (!(out.A + out.B == out.T)) throw InternalError("A + B != T after build");
  return out;
}

std::pair<OpMatrix, OpMatrix> decompose_conserved(const BuiltScheme& b, int ell) {
  const int q = b.spec.q, n = b.spec.conserved;
  if (ell < 0 || ell >= n) throw UserError("conserved index out of range");
  std::vector<int> keep{ell};
  for (int i = n; i < q; ++i) keep.push_back(i);
  OpMatrix a_ell = b.A.cut(keep);
  OpMatrix diamond = b.A - a_ell;
  return {std::move(a_ell), std::move(diamond)};
}

TrimInfo detect_trim(const BuiltScheme& b) {
  const int q = b.spec.q, n = b.spec.conserved;
  TrimInfo info;
  info.order.reserve(static_cast<std::size_t>(q));
  for (int i = 0; i < n; ++i) info.order.push_back(i);
  std::vector<int> unit;
  for (int i = n; i < q; ++i) {
    if (b.spec.rates[static_cast<std::size_t>(i)].is_one())
      unit.push_back(i);
    else
      info.order.push_back(i);
  }
  info.Q = static_cast<int>(info.order.size()) - n;
  info.order.insert(info.order.end(), unit.begin(), unit.end());
  info.inverse.assign(static_cast<std::size_t>(q), 0);
  for (int pos = 0; pos < q; ++pos)
    info.inverse[static_cast<std::size_t>(info.order[static_cast<std::size_t>(pos)])] = pos;

  // The unit-rate columns of A vanish; keep that property checked.
  for (int j : unit)
    for (int i = 0; i < q; ++i)
      if (!b.A.at(i, j).is_zero())
        throw InternalError("column of a unit-rate moment did not vanish in A");
  return info;
}

OpMatrix linearize_equilibria(const BuiltScheme& b, const std::vector<RationalCoeff>& eps) {
  if (b.spec.conserved != 1)
    throw UserError("linear closure requires exactly one conserved moment");
  const int q = b.spec.q;
  if (static_cast<int>(eps.size()) != q) throw UserError("eps must have q entries");
  OpMatrix closed = b.A;
  for (int i = 0; i < q; ++i) {
    OperatorPoly sum = OperatorPoly::zero(b.A.dim(), b.A.params());
    for (int j = 0; j < q; ++j)
      sum = sum + b.B.at(i, j).scaled(eps[static_cast<std::size_t>(j)]);
    closed.at(i, 0) = closed.at(i, 0) + sum;
  }
  return closed;
}

std::vector<RationalCoeff> linear_equilibrium_vector(const SchemeSpec& spec) {
  if (spec.conserved != 1) throw UserError("linear closure requires exactly one conserved moment");
  std::vector<RationalCoeff> eps;
  eps.reserve(static_cast<std::size_t>(spec.q));
  eps.push_back(RationalCoeff::zero(spec.params));  // unused by B
  for (int i = 1; i < spec.q; ++i) {
    auto c = linear_coefficient(*spec.equilibrium(i), "m1", spec.params);
    if (!c)
      throw UserError("equilibrium of m" + std::to_string(i + 1) +
                      " is not linear in m1; bind it or use the nonlinear paths");
    eps.push_back(*c);
  }
  return eps;
}

namespace {

SchemeSpec base_spec(std::string name, int dim, int q, int conserved,
                     std::vector<std::string> params) {
  SchemeSpec s;
  s.name = std::move(name);
  s.dim = dim;
  s.q = q;
  s.conserved = conserved;
  s.params = make_param_set(std::move(params));
  return s;
}

RationalCoeff coeff(const SchemeSpec& s, const std::string& text) {
  return eval_coeff(*parse_expression(text), s.params);
}

void set_matrix(SchemeSpec& s, const std::vector<std::string>& entries) {
  s.moment_matrix.clear();
  for (const auto& t : entries) s.moment_matrix.push_back(coeff(s, t));
}

void set_rates(SchemeSpec& s, const std::vector<std::string>& entries) {
  s.rates.clear();
  for (const auto& t : entries) s.rates.push_back(coeff(s, t));
}

SchemeSpec make_d1q2() {
  SchemeSpec s = base_spec("d1q2", 1, 2, 1, {"lambda", "s", "C"});
  s.velocities = {{1, 0, 0}, {-1, 0, 0}};
  set_matrix(s, {"1", "1", "lambda", "-lambda"});
  set_rates(s, {"0", "s"});
  s.equilibria[1] = parse_expression("lambda*C*m1");
  return s;
}

SchemeSpec make_d1q3() {
  SchemeSpec s = base_spec("d1q3", 1, 3, 1, {"lambda", "s", "p", "C", "D"});
  s.velocities = {{0, 0, 0}, {1, 0, 0}, {-1, 0, 0}};
  set_matrix(s, {"1", "1", "1",
                 "0", "lambda", "-lambda",
                 "-2*lambda^2", "lambda^2", "lambda^2"});
  set_rates(s, {"0", "s", "p"});
  s.equilibria[1] = parse_expression("lambda*C*m1");
  s.equilibria[2] = parse_expression("2*lambda^2*D*m1");
  return s;
}

SchemeSpec make_d1q3_burgers() {
  SchemeSpec s = make_d1q3();
  s.name = "d1q3_burgers";
  s.equilibria[1] = parse_expression("m1^2/2");
  return s;
}

SchemeSpec make_d1q3_two() {
  SchemeSpec s = base_spec("d1q3_two", 1, 3, 2, {"lambda", "p", "C"});
  s.velocities = {{0, 0, 0}, {1, 0, 0}, {-1, 0, 0}};
  set_matrix(s, {"1", "1", "1",
                 "0", "lambda", "-lambda",
                 "0", "lambda^2", "lambda^2"});
  set_rates(s, {"0", "0", "p"});
  s.equilibria[2] = parse_expression("lambda^2*C*m1");
  return s;
}

SchemeSpec make_d1q3_srt() {
  SchemeSpec s = base_spec("d1q3_srt", 1, 3, 1, {"lambda", "omega", "C", "D"});
  s.velocities = {{0, 0, 0}, {1, 0, 0}, {-1, 0, 0}};
  set_matrix(s, {"1", "1", "1",
                 "0", "lambda", "-lambda",
                 "0", "lambda^2", "lambda^2"});
  set_rates(s, {"0", "omega", "omega"});
  s.equilibria[1] = parse_expression("lambda*C*m1");
  s.equilibria[2] = parse_expression("2*lambda^2*D*m1");
  return s;
}

SchemeSpec make_d1q3_mrt() {
  SchemeSpec s = base_spec("d1q3_mrt", 1, 3, 1, {"lambda", "omega2", "omega3", "C", "D"});
  s.velocities = {{0, 0, 0}, {1, 0, 0}, {-1, 0, 0}};
  set_matrix(s, {"1", "1", "1",
                 "0", "lambda", "-lambda",
                 "0", "lambda^2", "lambda^2"});
  set_rates(s, {"0", "omega2", "omega3"});
  s.equilibria[1] = parse_expression("lambda*C*m1");
  s.equilibria[2] = parse_expression("2*lambda^2*D*m1");
  return s;
}

SchemeSpec make_d2q4() {
  SchemeSpec s = base_spec("d2q4", 2, 4, 1, {"lambda", "s", "Cx", "Cy"});
  s.velocities = {{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}};
  set_matrix(s, {"1", "1", "1", "1",
                 "lambda", "0", "-lambda", "0",
                 "0", "lambda", "0", "-lambda",
                 "lambda^2", "-lambda^2", "lambda^2", "-lambda^2"});
  set_rates(s, {"0", "s", "s", "1"});
  s.equilibria[1] = parse_expression("lambda*Cx*m1");
  s.equilibria[2] = parse_expression("lambda*Cy*m1");
  s.equilibria[3] = parse_expression("0");
  return s;
}

}  // namespace

SchemeSpec make_link_scheme(int W) {
  if (W < 1) throw UserError("link scheme needs W >= 1");
  std::vector<Shift> pairs;
  for (int j = 1; j <= W; ++j) pairs.push_back({j, 0, 0});
  return make_link_scheme(pairs, 1);
}

SchemeSpec make_link_scheme(const std::vector<Shift>& pair_velocities, int dim) {
  const int W = static_cast<int>(pair_velocities.size());
  if (W < 1) throw UserError("link scheme needs W >= 1");
  for (const Shift& c : pair_velocities)
    if (c == Shift{0, 0, 0}) throw UserError("link pair velocities must be nonzero");
  const int q = 1 + 2 * W;
  SchemeSpec s = base_spec("link_w" + std::to_string(W), dim, q, 1, {"lambda", "s", "C", "D"});
  s.velocities.push_back({0, 0, 0});
  for (const Shift& c : pair_velocities) {
    s.velocities.push_back(c);
    s.velocities.push_back(shift_neg(c));
  }
  // Row 0 all ones; each link contributes a flux row (lambda, -lambda) and
  // an energy row (lambda^2, lambda^2) on its velocity pair.
  std::vector<RationalCoeff> m(static_cast<std::size_t>(q) * static_cast<std::size_t>(q),
                               RationalCoeff::zero(s.params));
  auto set = [&](int i, int j, const std::string& t) {
    m[static_cast<std::size_t>(i) * static_cast<std::size_t>(q) + j] = coeff(s, t);
  };
  for (int j = 0; j < q; ++j) set(0, j, "1");
  for (int l = 1; l <= W; ++l) {
    set(2 * l - 1, 2 * l - 1, "lambda");
    set(2 * l - 1, 2 * l, "-lambda");
    set(2 * l, 2 * l - 1, "lambda^2");
    set(2 * l, 2 * l, "lambda^2");
  }
  s.moment_matrix = std::move(m);
  s.rates.push_back(RationalCoeff::zero(s.params));
  for (int l = 1; l <= W; ++l) {
    s.rates.push_back(coeff(s, "s"));
    s.rates.push_back(coeff(s, "2-s"));
  }
  for (int l = 1; l <= W; ++l) {
    s.equilibria[2 * l - 1] = parse_expression("lambda*C*m1");
    s.equilibria[2 * l] = parse_expression("lambda^2*D*m1");
  }
  return s;
}

std::vector<std::string> catalog_names() {
  return {"d1q2", "d1q3", "d1q3_two", "d1q3_srt", "d1q3_mrt", "d1q3_burgers",
          "d2q4", "link_w1", "link_w2", "link_w3"};
}

bool catalog_has(const std::string& name) {
  auto names = catalog_names();
  return std::find(names.begin(), names.end(), name) != names.end() || name == "link";
}

SchemeSpec catalog_scheme(const std::string& name) {
  if (name == "d1q2") return make_d1q2();
  if (name == "d1q3") return make_d1q3();
  if (name == "d1q3_two") return make_d1q3_two();
  if (name == "d1q3_srt") return make_d1q3_srt();
  if (name == "d1q3_mrt") return make_d1q3_mrt();
  if (name == "d1q3_burgers") return make_d1q3_burgers();
  if (name == "d2q4") return make_d2q4();
  if (name == "link" || name == "link_w1") return make_link_scheme(1);
  if (name == "link_w2") return make_link_scheme(2);
  if (name == "link_w3") return make_link_scheme(3);
  throw UserError("unknown catalog scheme: " + name);
}

}  // namespace lbfd
