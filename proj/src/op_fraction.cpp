#include "lbfd/op_fraction.hpp"

#include <algorithm>

#include "lbfd/error.hpp"

namespace lbfd {

namespace {

// Multiply by the unit shift making all exponents non-negative with
// componentwise minimum zero; returns the removed exponent vector.
OperatorPoly shift_normalized(const OperatorPoly& p, Shift* removed = nullptr) {
  Shift m = p.min_exponents();
  if (removed) *removed = m;
  if (m == Shift{0, 0, 0} || p.is_zero()) return p;
  return p * OperatorPoly::shift_op(shift_neg(m), p.dim(), p.params());
}

std::optional<OperatorPoly> divide_laurent(const OperatorPoly& a, const OperatorPoly& b,
                                           bool bounded) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return OperatorPoly::zero(a.dim(), a.params());
  if (b.is_unit()) return a * b.unit_inverse();
  Shift ma, mb;
  OperatorPoly an = shift_normalized(a, &ma);
  OperatorPoly bn = shift_normalized(b, &mb);
  // Ordinary multivariate division by leading-term elimination in the
  // canonical lexicographic order; exact iff the remainder reaches zero.
  // Both the trailing and the leading term of the divisor must divide the
  // corresponding terms of the dividend.
  long box = 1;
  {
    const Shift& ta = an.terms().begin()->first;
    const Shift& tb = bn.terms().begin()->first;
    if (ta[0] < tb[0] || ta[1] < tb[1] || ta[2] < tb[2]) return std::nullopt;
    Shift xa = an.max_exponents(), xb = bn.max_exponents();
    for (int i = 0; i < 3; ++i) {
      if (xa[static_cast<std::size_t>(i)] < xb[static_cast<std::size_t>(i)]) return std::nullopt;
      box *= xa[static_cast<std::size_t>(i)] - xb[static_cast<std::size_t>(i)] + 1;
    }
  }
  OperatorPoly q = OperatorPoly::zero(an.dim(), an.params());
  OperatorPoly r = an;
  const auto& lead = *bn.terms().rbegin();
  // An exact division adds one quotient monomial per pass; failing trial
  // divisions are cut short instead of churning.
  long budget = bounded ? std::min<long>(4 + 2 * box, 512) : 1L << 24;
  while (!r.is_zero()) {
    if (--budget < 0) return std::nullopt;
    const auto& rl = *r.terms().rbegin();
    Shift t = shift_add(rl.first, shift_neg(lead.first));
    if (t[0] < 0 || t[1] < 0 || t[2] < 0) return std::nullopt;
    OperatorPoly mono = OperatorPoly::term(rl.second / lead.second, t, r.dim());
    q = q + mono;
    r = r - mono * bn;
  }
  // Reattach the unit factor shift_(ma - mb).
  return q * OperatorPoly::shift_op(shift_add(ma, shift_neg(mb)), q.dim(), q.params());
}

// Exact ring division for the fraction-free elimination, where divisibility
// is guaranteed; failure means a genuine bug upstream.
OperatorPoly divide_certain(const OperatorPoly& a, const OperatorPoly& b) {
  auto q = divide_laurent(a, b, false);
  if (!q) throw InternalError("exact ring division failed during elimination");
  return *q;
}

}  // namespace

std::optional<OperatorPoly> divide_exact_laurent(const OperatorPoly& a, const OperatorPoly& b) {
  return divide_laurent(a, b, true);
}

OpFraction::OpFraction(OperatorPoly num)
    : num_(std::move(num)), den_(OperatorPoly::one(num_.dim(), num_.params())) {}

OpFraction::OpFraction(OperatorPoly num, OperatorPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error("zero denominator in operator fraction");
  normalize();
}

OpFraction OpFraction::zero(int dim, ParamSetPtr params) {
  return OpFraction(OperatorPoly::zero(dim, params));
}

void OpFraction::normalize() {
  if (num_.is_zero()) {
    den_ = OperatorPoly::one(den_.dim(), den_.params());
    return;
  }
  if (den_.is_unit()) {
    num_ = num_ * den_.unit_inverse();
    den_ = OperatorPoly::one(den_.dim(), den_.params());
    return;
  }
  if (auto q = divide_exact_laurent(num_, den_)) {
    num_ = *q;
    den_ = OperatorPoly::one(den_.dim(), den_.params());
    return;
  }
  if (auto p = divide_exact_laurent(den_, num_)) {
    den_ = *p;
    num_ = OperatorPoly::one(num_.dim(), num_.params());
    if (den_.is_unit()) {
      num_ = den_.unit_inverse();
      den_ = OperatorPoly::one(den_.dim(), den_.params());
    }
  }
}

std::optional<OperatorPoly> OpFraction::as_poly() const {
  if (den_ == OperatorPoly::one(den_.dim(), den_.params())) return num_;
  return std::nullopt;
}

OpFraction OpFraction::operator-() const {
  OpFraction r = *this;
  r.num_ = -r.num_;
  return r;
}

OpFraction OpFraction::operator+(const OpFraction& o) const {
  return OpFraction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

OpFraction OpFraction::operator-(const OpFraction& o) const {
  return OpFraction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

OpFraction OpFraction::operator*(const OpFraction& o) const {
  return OpFraction(num_ * o.num_, den_ * o.den_);
}

OpFraction OpFraction::operator/(const OpFraction& o) const {
  if (o.is_zero()) throw Error("division by zero operator fraction");
  return OpFraction(num_ * o.den_, den_ * o.num_);
}

bool OpFraction::operator==(const OpFraction& o) const {
  return (num_ * o.den_ - o.num_ * den_).is_zero();
}

std::string OpFraction::str() const {
  if (as_poly()) return num_.str();
  return "(" + num_.str() + ") / (" + den_.str() + ")";
}

namespace {

// Rank profile by fraction-free (Bareiss) elimination over the ring: every
// division by the previous pivot is exact, which keeps entry growth
// polynomial. Pivots are chosen by least term count.
struct RankProfile {
  int rank = 0;
  std::vector<int> pivot_rows;  // in elimination order
  std::vector<int> pivot_cols;
};

RankProfile rank_profile(std::vector<std::vector<OperatorPoly>> m) {
  RankProfile out;
  if (m.empty()) return out;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::vector<bool> row_used(rows, false), col_used(cols, false);
  OperatorPoly prev;  // previous pivot; unset on the first step
  bool have_prev = false;
  while (true) {
    std::size_t bi = rows, bj = cols, best = 0;
    for (std::size_t i = 0; i < rows; ++i) {
      if (row_used[i]) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        if (col_used[j] || m[i][j].is_zero()) continue;
        std::size_t c = m[i][j].term_count();
        if (bi == rows || c < best) {
          bi = i;
          bj = j;
          best = c;
        }
      }
    }
    if (bi == rows) break;
    row_used[bi] = true;
    col_used[bj] = true;
    out.pivot_rows.push_back(static_cast<int>(bi));
    out.pivot_cols.push_back(static_cast<int>(bj));
    ++out.rank;
    const OperatorPoly pivot = m[bi][bj];
    for (std::size_t i = 0; i < rows; ++i) {
      if (row_used[i]) continue;
      const OperatorPoly f = m[i][bj];
      for (std::size_t j = 0; j < cols; ++j) {
        if (col_used[j] && j != bj) {
          // previously eliminated column, already zero
          continue;
        }
        OperatorPoly v = m[i][j] * pivot - f * m[bi][j];
        m[i][j] = have_prev ? divide_certain(v, prev) : std::move(v);
      }
      m[i][bj] = OperatorPoly::zero(m[i][bj].dim(), m[i][bj].params());
    }
    prev = pivot;
    have_prev = true;
  }
  return out;
}

// Determinant by fraction-free elimination; entries small and square.
OperatorPoly bareiss_det(std::vector<std::vector<OperatorPoly>> m) {
  const std::size_t n = m.size();
  if (n == 0) throw Error("empty determinant");
  OperatorPoly prev;
  bool have_prev = false;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    // Pivot search in column k.
    std::size_t p = n;
    for (std::size_t i = k; i < n; ++i) {
      if (!m[i][k].is_zero() && (p == n || m[i][k].term_count() < m[p][k].term_count())) p = i;
    }
    if (p == n) return OperatorPoly::zero(m[0][0].dim(), m[0][0].params());
    if (p != k) {
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        OperatorPoly v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = have_prev ? divide_certain(v, prev) : std::move(v);
      }
      m[i][k] = OperatorPoly::zero(m[i][k].dim(), m[i][k].params());
    }
    prev = m[k][k];
    have_prev = true;
  }
  OperatorPoly det = m[n - 1][n - 1];
  return sign < 0 ? -det : det;
}

std::vector<std::vector<OperatorPoly>> to_poly_matrix(const std::vector<std::vector<OpFraction>>& m) {
  // Clear row denominators; row scaling changes neither kernel nor rank.
  std::vector<std::vector<OperatorPoly>> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    OperatorPoly common;
    bool first = true;
    for (const auto& f : m[i]) {
      if (first) {
        common = f.den();
        first = false;
      } else if (!(f.den() == common)) {
        common = common * f.den();
      }
    }
    for (const auto& f : m[i]) out[i].push_back(f.num() * divide_certain(common, f.den()));
  }
  return out;
}

}  // namespace

std::vector<std::vector<OpFraction>> kernel_basis(const std::vector<std::vector<OpFraction>>& m) {
  if (m.empty() || m[0].empty()) return {};
  const std::size_t cols = m[0].size();
  std::vector<std::vector<OperatorPoly>> a = to_poly_matrix(m);
  const int dim = a[0][0].dim();
  ParamSetPtr params = a[0][0].params();
  RankProfile rp = rank_profile(a);

  std::vector<bool> is_pivot(cols, false);
  for (int c : rp.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;

  std::vector<std::vector<OpFraction>> basis;
  const int r = rp.rank;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<OpFraction> v(cols, OpFraction::zero(dim, params));
    if (r == 0) {
      v[f] = OpFraction(OperatorPoly::one(dim, params));
      basis.push_back(std::move(v));
      continue;
    }
    // Solve B x = -col_f on the pivot block by Cramer's rule, fraction-free:
    // v_f = det(B), v_pivot_k = det(B with column k replaced by -col_f).
    std::vector<std::vector<OperatorPoly>> b(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        b[static_cast<std::size_t>(i)].push_back(
            a[static_cast<std::size_t>(rp.pivot_rows[static_cast<std::size_t>(i)])]
             [static_cast<std::size_t>(rp.pivot_cols[static_cast<std::size_t>(j)])]);
    OperatorPoly det_b = bareiss_det(b);
    if (det_b.is_zero()) throw InternalError("pivot block is singular");
    OpFraction scale(OperatorPoly::one(dim, params), det_b);
    v[f] = OpFraction(det_b, det_b);  // = 1 after normalization
    for (int k = 0; k < r; ++k) {
      std::vector<std::vector<OperatorPoly>> bk = b;
      for (int i = 0; i < r; ++i)
        bk[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
            -a[static_cast<std::size_t>(rp.pivot_rows[static_cast<std::size_t>(i)])][f];
      v[static_cast<std::size_t>(rp.pivot_cols[static_cast<std::size_t>(k)])] =
          OpFraction(bareiss_det(bk), det_b);
    }
    // The construction annihilates the pivot rows; the remaining rows are
    // their combinations over the fraction field, so this must vanish.
    for (std::size_t i = 0; i < a.size(); ++i) {
      OpFraction dot = OpFraction::zero(dim, params);
      for (std::size_t j = 0; j < cols; ++j)
        dot = dot + v[j] * OpFraction(a[i][j]);
      if (!dot.is_zero()) throw InternalError("kernel vector fails to annihilate a row");
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<OpFraction>> solve_linear(const std::vector<std::vector<OpFraction>>& m,
                                                    const std::vector<OpFraction>& rhs) {
  if (m.empty()) return std::vector<OpFraction>{};
  const std::size_t cols = m[0].size();
  // Append -rhs as an extra column; solutions of m x = rhs are kernel
  // vectors of [m | -rhs] with last component 1.
  std::vector<std::vector<OpFraction>> aug(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    aug[i] = m[i];
    aug[i].push_back(-rhs[i]);
  }
  auto basis = kernel_basis(aug);
  for (auto& v : basis) {
    if (v[cols].is_zero()) continue;
    std::vector<OpFraction> x(cols, OpFraction::zero(1, empty_param_set()));
    for (std::size_t j = 0; j < cols; ++j) x[j] = v[j] / v[cols];
    return x;
  }
  // No kernel vector with a nonzero last component: check whether rhs is
  // reachable at all (it is not iff appending it raises the rank and the
  // kernel search above found only vectors ending in zero).
  return std::nullopt;
}

}  // namespace lbfd
