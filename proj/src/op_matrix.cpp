#include "lbfd/op_matrix.hpp"

#include <sstream>

#include "lbfd/error.hpp"

namespace lbfd {

OpMatrix::OpMatrix(int rows, int cols, int dim, ParamSetPtr params)
    : rows_(rows), cols_(cols),
      e_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
         OperatorPoly::zero(dim, std::move(params))) {
  if (rows <= 0 || cols <= 0) throw Error("matrix dimensions must be positive");
}

OpMatrix OpMatrix::identity(int n, int dim, ParamSetPtr params) {
  OpMatrix m(n, n, dim, params);
  for (int i = 0; i < n; ++i) m.at(i, i) = OperatorPoly::one(dim, params);
  return m;
}

OpMatrix OpMatrix::diagonal(const std::vector<OperatorPoly>& d) {
  if (d.empty()) throw Error("empty diagonal");
  int n = static_cast<int>(d.size());
  OpMatrix m(n, n, d[0].dim(), d[0].params());
  for (int i = 0; i < n; ++i) m.at(i, i) = d[static_cast<std::size_t>(i)];
  return m;
}

int OpMatrix::dim() const { return e_.front().dim(); }

ParamSetPtr OpMatrix::params() const { return e_.front().params(); }

OpMatrix OpMatrix::operator+(const OpMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix shape mismatch in addition");
  OpMatrix r = *this;
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
  return r;
}

OpMatrix OpMatrix::operator-(const OpMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix shape mismatch in subtraction");
  OpMatrix r = *this;
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
  return r;
}

OpMatrix OpMatrix::operator*(const OpMatrix& o) const {
  if (cols_ != o.rows_) throw Error("matrix shape mismatch in product");
  OpMatrix r(rows_, o.cols_, dim(), params());
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < o.cols_; ++j) {
      OperatorPoly sum = OperatorPoly::zero(dim(), params());
      for (int k = 0; k < cols_; ++k) sum = sum + at(i, k) * o.at(k, j);
      r.at(i, j) = std::move(sum);
    }
  }
  return r;
}

OpMatrix OpMatrix::scaled(const OperatorPoly& c) const {
  OpMatrix r = *this;
  for (auto& e : r.e_) e = e * c;
  return r;
}

OpMatrix OpMatrix::pow(int k) const {
  if (rows_ != cols_) throw Error("power of a non-square matrix");
  if (k < 0) throw Error("negative matrix power");
  OpMatrix r = identity(rows_, dim(), params());
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

OperatorPoly OpMatrix::trace() const {
  if (rows_ != cols_) throw Error("trace of a non-square matrix");
  OperatorPoly t = OperatorPoly::zero(dim(), params());
  for (int i = 0; i < rows_; ++i) t = t + at(i, i);
  return t;
}

OpMatrix OpMatrix::cut(const std::vector<int>& keep) const {
  if (rows_ != cols_) throw Error("cut of a non-square matrix");
  std::vector<bool> in(static_cast<std::size_t>(rows_), false);
  for (int i : keep) in[static_cast<std::size_t>(i)] = true;
  OpMatrix r(rows_, cols_, dim(), params());
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (in[static_cast<std::size_t>(i)] && in[static_cast<std::size_t>(j)])
        r.at(i, j) = at(i, j);
  return r;
}

OpMatrix OpMatrix::trimmed(const std::vector<int>& keep) const {
  if (keep.empty()) throw Error("empty index set");
  if (rows_ != cols_) throw Error("trimming a non-square matrix");
  int n = static_cast<int>(keep.size());
  OpMatrix r(n, n, dim(), params());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      r.at(i, j) = at(keep[static_cast<std::size_t>(i)], keep[static_cast<std::size_t>(j)]);
  return r;
}

OpMatrix OpMatrix::permuted(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != rows_ || rows_ != cols_)
    throw Error("bad permutation size");
  OpMatrix r(rows_, cols_, dim(), params());
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      r.at(i, j) = at(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  return r;
}

bool OpMatrix::is_zero() const {
  for (const auto& e : e_)
    if (!e.is_zero()) return false;
  return true;
}

bool OpMatrix::operator==(const OpMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (!(e_[i] == o.e_[i])) return false;
  return true;
}

OpMatrix OpMatrix::substitute(std::string_view name, const Rational& value) const {
  OpMatrix r = *this;
  for (auto& e : r.e_) e = e.substitute(name, value);
  return r;
}

OpMatrix OpMatrix::with_params(const ParamSetPtr& superset) const {
  OpMatrix r = *this;
  for (auto& e : r.e_) e = e.with_params(superset);
  return r;
}

std::string OpMatrix::str() const {
  std::ostringstream out;
  for (int i = 0; i < rows_; ++i) {
    out << "[ ";
    for (int j = 0; j < cols_; ++j) {
      if (j) out << " | ";
      out << at(i, j).str();
    }
    out << " ]\n";
  }
  return out.str();
}

RingPoly::RingPoly(std::vector<OperatorPoly> coeffs) : c_(std::move(coeffs)) { prune(); }

RingPoly RingPoly::monomial(const OperatorPoly& c, int k) {
  std::vector<OperatorPoly> v(static_cast<std::size_t>(k) + 1,
                              OperatorPoly::zero(c.dim(), c.params()));
  v.back() = c;
  return RingPoly(std::move(v));
}

void RingPoly::prune() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

bool RingPoly::is_monic() const {
  if (c_.empty()) return false;
  return c_.back() == OperatorPoly::one(c_.back().dim(), c_.back().params());
}

OperatorPoly RingPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) {
    if (c_.empty()) return OperatorPoly();
    return OperatorPoly::zero(c_.front().dim(), c_.front().params());
  }
  return c_[static_cast<std::size_t>(k)];
}

RingPoly RingPoly::operator+(const RingPoly& o) const {
  std::vector<OperatorPoly> v(std::max(c_.size(), o.c_.size()));
  for (std::size_t k = 0; k < v.size(); ++k) {
    OperatorPoly a = k < c_.size() ? c_[k] : OperatorPoly();
    OperatorPoly b = k < o.c_.size() ? o.c_[k] : OperatorPoly();
    if (k < c_.size() && k < o.c_.size())
      v[k] = a + b;
    else if (k < c_.size())
      v[k] = a;
    else
      v[k] = b;
  }
  return RingPoly(std::move(v));
}

RingPoly RingPoly::operator-(const RingPoly& o) const {
  RingPoly neg = o;
  for (auto& c : neg.c_) c = -c;
  return *this + neg;
}

RingPoly RingPoly::operator*(const RingPoly& o) const {
  if (c_.empty() || o.c_.empty()) return RingPoly();
  std::vector<OperatorPoly> v(c_.size() + o.c_.size() - 1,
                              OperatorPoly::zero(c_.front().dim(), c_.front().params()));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] = v[i + j] + c_[i] * o.c_[j];
  return RingPoly(std::move(v));
}

RingPoly RingPoly::shifted_up(int k) const {
  if (c_.empty()) return RingPoly();
  std::vector<OperatorPoly> v(static_cast<std::size_t>(k),
                              OperatorPoly::zero(c_.front().dim(), c_.front().params()));
  v.insert(v.end(), c_.begin(), c_.end());
  return RingPoly(std::move(v));
}

bool RingPoly::operator==(const RingPoly& o) const {
  if (c_.size() != o.c_.size()) return false;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!(c_[i] == o.c_[i])) return false;
  return true;
}

std::pair<RingPoly, RingPoly> RingPoly::divide_monic(const RingPoly& a, const RingPoly& b) {
  if (!b.is_monic()) throw Error("division requires a monic divisor");
  RingPoly q, r = a;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    int k = r.degree() - b.degree();
    OperatorPoly lead = r.c_.back();
    q = q + RingPoly::monomial(lead, k);
    r = r - (b * RingPoly::monomial(lead, k));
    if (!r.is_zero() && r.degree() >= k + b.degree())
      throw InternalError("polynomial division failed to reduce degree");
  }
  return {q, r};
}

bool RingPoly::divisible_by(const RingPoly& monic) const {
  return divide_monic(*this, monic).second.is_zero();
}

OpMatrix RingPoly::eval_at(const OpMatrix& c) const {
  if (c.rows() != c.cols()) throw Error("polynomial evaluation needs a square matrix");
  OpMatrix sum(c.rows(), c.cols(), c.dim(), c.params());
  OpMatrix power = OpMatrix::identity(c.rows(), c.dim(), c.params());
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (k > 0) power = power * c;
    if (!c_[k].is_zero()) sum = sum + power.scaled(c_[k]);
  }
  return sum;
}

std::vector<std::complex<double>> RingPoly::sample(
    std::span<const double> xi, double dx,
    const std::map<std::string, double>& bindings) const {
  std::vector<std::complex<double>> v;
  v.reserve(c_.size());
  for (const auto& c : c_) v.push_back(c.eval_fourier(xi, dx, bindings));
  return v;
}

RingPoly RingPoly::substitute(std::string_view name, const Rational& value) const {
  RingPoly r = *this;
  for (auto& c : r.c_) c = c.substitute(name, value);
  r.prune();
  return r;
}

RingPoly RingPoly::with_params(const ParamSetPtr& superset) const {
  RingPoly r = *this;
  for (auto& c : r.c_) c = c.with_params(superset);
  return r;
}

std::string RingPoly::str() const {
  if (c_.empty()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    OperatorPoly c = coeff(k);
    if (c.is_zero()) continue;
    std::string cs = c.str();
    bool neg = !cs.empty() && cs[0] == '-';
    if (neg) cs = (-c).str();
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    bool is_one = !neg && c == OperatorPoly::one(c.dim(), c.params());
    std::string xs = k == 0 ? "" : (k == 1 ? "X" : "X^" + std::to_string(k));
    if (xs.empty()) {
      out += "(" + cs + ")";
    } else if (is_one || (neg && (-c) == OperatorPoly::one(c.dim(), c.params()))) {
      out += xs;
    } else {
      out += "(" + cs + ")*" + xs;
    }
  }
  if (out.empty()) out = "0";
  return out;
}

}  // namespace lbfd
