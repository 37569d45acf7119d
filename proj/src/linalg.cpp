#include "lbfd/linalg.hpp"

#include <string>

#include "lbfd/error.hpp"

namespace lbfd {

OpMatrix field_invert(const OpMatrix& m) {
  if (m.rows() != m.cols()) throw Error("inverting a non-square matrix");
  const int n = m.rows();
  const int dim = m.dim();
  ParamSetPtr params = m.params();
  // Work on coefficient entries; shift terms are not allowed here.
  std::vector<std::vector<RationalCoeff>> a(static_cast<std::size_t>(n)),
      inv(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!m.at(i, j).is_coefficient())
        throw Error("matrix entry has shift terms; field inversion needs pure coefficients");
      a[static_cast<std::size_t>(i)].push_back(m.at(i, j).as_coefficient());
      inv[static_cast<std::size_t>(i)].push_back(i == j ? RationalCoeff::one(params)
                                                        : RationalCoeff::zero(params));
    }
  }
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int i = col; i < n; ++i) {
      if (!a[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)].is_zero()) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0)
      throw UserError("singular matrix: no pivot in column " + std::to_string(col + 1) +
                      " (vanishing pivot)");
    std::swap(a[static_cast<std::size_t>(col)], a[static_cast<std::size_t>(pivot)]);
    std::swap(inv[static_cast<std::size_t>(col)], inv[static_cast<std::size_t>(pivot)]);
    RationalCoeff p = a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
    for (int j = 0; j < n; ++j) {
      a[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)] =
          a[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)] / p;
      inv[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)] =
          inv[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)] / p;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      RationalCoeff f = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)];
      if (f.is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
            f * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)];
        inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
            f * inv[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)];
      }
    }
  }
  OpMatrix out(n, n, dim, params);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.at(i, j) = OperatorPoly::constant(
          inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], dim);
  return out;
}

RingPoly faddeev_leverrier(const OpMatrix& c) {
  if (c.rows() != c.cols()) throw Error("characteristic polynomial of a non-square matrix");
  const int r = c.rows();
  const int dim = c.dim();
  ParamSetPtr params = c.params();
  std::vector<OperatorPoly> gamma(static_cast<std::size_t>(r) + 1,
                                  OperatorPoly::zero(dim, params));
  gamma[static_cast<std::size_t>(r)] = OperatorPoly::one(dim, params);
  OpMatrix d = c;
  for (int k = 1; k <= r; ++k) {
    if (k > 1) {
      OpMatrix shifted = d;
      const OperatorPoly& g = gamma[static_cast<std::size_t>(r - k + 1)];
      for (int i = 0; i < r; ++i) shifted.at(i, i) = shifted.at(i, i) + g;
      d = c * shifted;
    }
    OperatorPoly tr = d.trace();
    OperatorPoly coeff = OperatorPoly::zero(dim, params);
    for (const auto& [z, rc] : tr.terms())
      coeff = coeff + OperatorPoly::term(-rc.divided_by_int(k), z, dim);
    gamma[static_cast<std::size_t>(r - k)] = std::move(coeff);
  }
  return RingPoly(std::move(gamma));
}

RingPoly charpoly_trimmed(const OpMatrix& c, const std::vector<int>& keep) {
  if (keep.empty()) throw Error("empty index set");
  return faddeev_leverrier(c.trimmed(keep));
}

OpMatrix apply_ring_poly(const RingPoly& p, const OpMatrix& c) { return p.eval_at(c); }

namespace {

std::vector<std::vector<OpFraction>> to_fraction_matrix(const OpMatrix& v) {
  std::vector<std::vector<OpFraction>> m(static_cast<std::size_t>(v.rows()));
  for (int i = 0; i < v.rows(); ++i)
    for (int j = 0; j < v.cols(); ++j)
      m[static_cast<std::size_t>(i)].emplace_back(v.at(i, j));
  return m;
}

}  // namespace

std::vector<std::vector<OpFraction>> kernel_fraction_field(const OpMatrix& v) {
  return kernel_basis(to_fraction_matrix(v));
}

RingPoly minimal_polynomial(const OpMatrix& c) {
  if (c.rows() != c.cols()) throw Error("minimal polynomial of a non-square matrix");
  const int q = c.rows();
  const int dim = c.dim();
  ParamSetPtr params = c.params();

  std::vector<OpMatrix> powers;
  powers.push_back(OpMatrix::identity(q, dim, params));
  for (int k = 1; k <= q; ++k) powers.push_back(powers.back() * c);

  for (int deg = 1; deg < q; ++deg) {
    // Solve sum_{k<deg} w_k vec(C^k) = -vec(C^deg) over the fraction field.
    std::vector<std::vector<OpFraction>> m;
    std::vector<OpFraction> rhs;
    for (int i = 0; i < q; ++i) {
      for (int j = 0; j < q; ++j) {
        std::vector<OpFraction> row;
        for (int k = 0; k < deg; ++k)
          row.emplace_back(powers[static_cast<std::size_t>(k)].at(i, j));
        m.push_back(std::move(row));
        rhs.emplace_back(-powers[static_cast<std::size_t>(deg)].at(i, j));
      }
    }
    auto sol = solve_linear(m, rhs);
    if (!sol) continue;
    std::vector<OperatorPoly> coeffs;
    bool in_ring = true;
    for (const auto& f : *sol) {
      auto p = f.as_poly();
      if (!p) {
        in_ring = false;
        break;
      }
      coeffs.push_back(*p);
    }
    if (!in_ring) continue;
    coeffs.push_back(OperatorPoly::one(dim, params));
    RingPoly candidate{std::move(coeffs)};
    if (candidate.eval_at(c).is_zero()) return candidate;
  }
  return faddeev_leverrier(c);
}

MpamfrResult mpamfr(const OpMatrix& a) {
  if (a.rows() != a.cols()) throw Error("mpamfr of a non-square matrix");
  const int q = a.rows();
  const int dim = a.dim();
  ParamSetPtr params = a.params();
  if (q == 1) {
    // Degenerate 1x1 case: X - a11 annihilates the (whole) first row.
    MpamfrResult res;
    res.degree = 1;
    res.mpamfr = RingPoly({OperatorPoly::zero(dim, params), OperatorPoly::one(dim, params)});
    res.mpafr = RingPoly({-a.at(0, 0), OperatorPoly::one(dim, params)});
    return res;
  }

  std::vector<OpMatrix> powers;
  powers.push_back(OpMatrix::identity(q, dim, params));
  for (int k = 1; k <= q; ++k) powers.push_back(powers.back() * a);

  auto finish = [&](std::vector<OperatorPoly> psi) {
    // psi[k] for k = 0..K with psi[0] = 0; complete psi0 = -sum psi_k (A^k)_11.
    MpamfrResult res;
    res.degree = static_cast<int>(psi.size()) - 1;
    OperatorPoly psi0 = OperatorPoly::zero(dim, params);
    for (std::size_t k = 1; k < psi.size(); ++k)
      psi0 = psi0 - psi[k] * powers[k].at(0, 0);
    res.mpamfr = RingPoly(psi);
    psi[0] = std::move(psi0);
    res.mpafr = RingPoly(std::move(psi));
    return res;
  };

  for (int K = 1; K <= q; ++K) {
    // V_K has rows (A^k)_{1j} for j = 2..q and columns k = 1..K.
    std::vector<std::vector<OpFraction>> v(static_cast<std::size_t>(q - 1));
    for (int j = 1; j < q; ++j)
      for (int k = 1; k <= K; ++k)
        v[static_cast<std::size_t>(j - 1)].emplace_back(
            powers[static_cast<std::size_t>(k)].at(0, j));
    auto basis = kernel_basis(v);
    if (basis.empty()) continue;
    for (const auto& vec : basis) {
      if (vec.back().is_zero()) continue;  // would contradict minimality of K
      std::vector<OperatorPoly> psi(static_cast<std::size_t>(K) + 1,
                                    OperatorPoly::zero(dim, params));
      bool in_ring = true;
      for (int k = 1; k <= K; ++k) {
        OpFraction f = vec[static_cast<std::size_t>(k - 1)] / vec.back();
        auto p = f.as_poly();
        if (!p) {
          in_ring = false;
          break;
        }
        psi[static_cast<std::size_t>(k)] = *p;
      }
      if (!in_ring) continue;
      return finish(std::move(psi));
    }
  }
  // Search exhausted: the minimal polynomial annihilates everything, so its
  // first-row restriction is the MPAFR.
  RingPoly mu = minimal_polynomial(a);
  std::vector<OperatorPoly> psi(mu.coeffs());
  psi[0] = OperatorPoly::zero(dim, params);
  MpamfrResult res;
  res.degree = mu.degree();
  res.mpamfr = RingPoly(std::move(psi));
  res.mpafr = mu;
  return res;
}

}  // namespace lbfd
