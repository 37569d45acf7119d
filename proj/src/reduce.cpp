#include "lbfd/reduce.hpp"

#include <algorithm>
#include <sstream>

#include "lbfd/error.hpp"

namespace lbfd {

bool FDScheme::operator==(const FDScheme& o) const {
  if (ell != o.ell || steps != o.steps) return false;
  for (int k = 0; k < steps; ++k) {
    if (!(homogeneous[static_cast<std::size_t>(k)] ==
          o.homogeneous[static_cast<std::size_t>(k)]))
      return false;
    auto cmp = [](const std::map<int, OperatorPoly>& a, const std::map<int, OperatorPoly>& b) {
      if (a.size() != b.size()) return false;
      auto ia = a.begin();
      for (auto ib = b.begin(); ib != b.end(); ++ia, ++ib) {
        if (ia->first != ib->first || !(ia->second == ib->second)) return false;
      }
      return true;
    };
    if (!cmp(sources[static_cast<std::size_t>(k)], o.sources[static_cast<std::size_t>(k)]))
      return false;
    if (!cmp(cross[static_cast<std::size_t>(k)], o.cross[static_cast<std::size_t>(k)]))
      return false;
  }
  return true;
}

namespace {

// Assemble the finite-difference scheme for conserved moment `ell` (position
// in the permuted ordering equals its user index: conserved moments are
// never reordered) from
//   - a monic annihilator `poly` = sum c_k X^k of degree K,
//   - the effective matrix E (cut of the permuted A) it annihilates on row
//     ell,
//   - the permuted A and B for cross and equilibrium sources.
// The update reads
//   m^{n+1} = -sum_{k<K} c_k m^{n+1-K+k}
//           + sum_{k<K} row_ell[(sum_{l<=k} c_{K+l-k} E^l) B]   m^eq|^{n-k}
//           + sum_{k<K} row_ell[(sum_{l<=k} c_{K+l-k} E^l) (A-E)] m^{n-k}.
FDScheme assemble(const BuiltScheme& b, const TrimInfo& trim, int ell, const RingPoly& poly,
                  const OpMatrix& a_perm, const OpMatrix& b_perm, const OpMatrix& effective,
                  const std::string& provenance, const ReduceOptions& opt) {
  const int q = b.spec.q;
  const int n = b.spec.conserved;
  const int dim = a_perm.dim();
  ParamSetPtr params = a_perm.params();
  const int K = poly.degree();
  if (K < 1) throw InternalError("annihilator of degree zero");
  if (!poly.is_monic()) throw InternalError("annihilator is not monic");

  // Internal-consistency gate: the polynomial must annihilate row ell of the
  // effective matrix before any stencil is emitted.
  {
    OpMatrix check = poly.eval_at(effective);
    for (int j = 0; j < q; ++j)
      if (!check.at(ell, j).is_zero())
        throw InternalError("annihilation check failed at row entry " + std::to_string(j + 1));
  }

  OpMatrix diamond = a_perm - effective;

  FDScheme fd;
  fd.scheme_name = b.spec.name;
  fd.dim = dim;
  fd.q = q;
  fd.conserved_count = n;
  fd.ell = ell;
  fd.steps = K;
  fd.provenance = provenance;
  fd.polynomial = poly;
  fd.params = params;
  fd.velocities = b.spec.velocities;
  fd.homogeneous.assign(static_cast<std::size_t>(K), OperatorPoly::zero(dim, params));
  fd.sources.assign(static_cast<std::size_t>(K), {});
  fd.cross.assign(static_cast<std::size_t>(K), {});

  OpMatrix power = OpMatrix::identity(q, dim, params);  // E^l
  std::vector<OpMatrix> weight(static_cast<std::size_t>(K),
                               OpMatrix(q, q, dim, params));  // W_k
  for (int l = 0; l < K; ++l) {
    if (l > 0) power = power * effective;
    for (int k = l; k < K; ++k) {
      // W_k accumulates c_{K+l-k} E^l for l = 0..k.
      const OperatorPoly c = poly.coeff(K + l - k);
      if (!c.is_zero())
        weight[static_cast<std::size_t>(k)] =
            weight[static_cast<std::size_t>(k)] + power.scaled(c);
    }
  }

  for (int k = 0; k < K; ++k) {
    fd.homogeneous[static_cast<std::size_t>(k)] = -poly.coeff(K - 1 - k);
    OpMatrix srcs = weight[static_cast<std::size_t>(k)] * b_perm;
    OpMatrix xs = weight[static_cast<std::size_t>(k)] * diamond;
    for (int j = 0; j < q; ++j) {
      int user_j = trim.order[static_cast<std::size_t>(j)];
      const OperatorPoly& s = srcs.at(ell, j);
      if (!s.is_zero()) {
        if (user_j < n)
          throw InternalError("equilibrium source hit a conserved column");
        fd.sources[static_cast<std::size_t>(k)].emplace(user_j, s);
      }
      const OperatorPoly& x = xs.at(ell, j);
      if (!x.is_zero()) {
        if (user_j >= n || user_j == ell)
          throw InternalError("cross stencil hit a non-conserved column");
        fd.cross[static_cast<std::size_t>(k)].emplace(user_j, x);
      }
    }
  }

  if (opt.prune_trailing) {
    while (fd.steps > 1 && fd.homogeneous.back().is_zero() && fd.sources.back().empty() &&
           fd.cross.back().empty()) {
      fd.homogeneous.pop_back();
      fd.sources.pop_back();
      fd.cross.pop_back();
      --fd.steps;
    }
  }
  return fd;
}

FDScheme reduce_one(const BuiltScheme& b, int ell, const ReduceOptions& opt) {
  const int q = b.spec.q;
  const int n = b.spec.conserved;
  TrimInfo trim = detect_trim(b);
  if (!opt.trim) {
    trim.Q = q - n;
    trim.order.clear();
    for (int i = 0; i < q; ++i) trim.order.push_back(i);
    trim.inverse = trim.order;
  }
  OpMatrix a_perm = b.A.permuted(trim.order);
  OpMatrix b_perm = b.B.permuted(trim.order);

  // Conserved moments keep their positions under the trim permutation.
  std::vector<int> keep{ell};
  for (int i = n; i < n + trim.Q; ++i) keep.push_back(i);

  OpMatrix effective = a_perm.cut(keep);
  RingPoly poly;
  std::string provenance;
  switch (opt.path) {
    case ReducePath::Charpoly:
      poly = charpoly_trimmed(a_perm, keep);
      provenance = (n + trim.Q < q && opt.trim) ? "trimmed" : "charpoly";
      break;
    case ReducePath::Minimal:
      poly = minimal_polynomial(a_perm.trimmed(keep));
      provenance = "minimal";
      break;
    case ReducePath::Mpafr:
      throw Error("mpafr path goes through reduce_mpafr");
  }
  return assemble(b, trim, ell, poly, a_perm, b_perm, effective, provenance, opt);
}

}  // namespace

FDScheme reduce_single(const BuiltScheme& b, const ReduceOptions& opt) {
  if (b.spec.conserved != 1)
    throw UserError("reduce_single needs exactly one conserved moment");
  return reduce_one(b, 0, opt);
}

std::vector<FDScheme> reduce_multi(const BuiltScheme& b, const ReduceOptions& opt) {
  std::vector<FDScheme> out;
  for (int ell = 0; ell < b.spec.conserved; ++ell) out.push_back(reduce_one(b, ell, opt));
  return out;
}

FDScheme reduce_mpafr(const BuiltScheme& b) {
  if (b.spec.conserved != 1)
    throw UserError("the first-row reduction needs exactly one conserved moment");
  const int q = b.spec.q;
  TrimInfo trim;
  trim.Q = q - 1;
  for (int i = 0; i < q; ++i) trim.order.push_back(i);
  trim.inverse = trim.order;

  MpamfrResult res = mpamfr(b.A);
  ReduceOptions opt;
  return assemble(b, trim, 0, res.mpafr, b.A, b.B, b.A, "mpafr", opt);
}

BootstrapPlan bootstrap_plan(const BuiltScheme&, const FDScheme& fd) {
  BootstrapPlan plan;
  plan.warmup_steps = fd.steps - 1;
  plan.equilibrium_init = true;
  return plan;
}

namespace {

std::string lag_label(const std::string& base, int k) {
  if (k == 0) return base + "[n]";
  return base + "[n-" + std::to_string(k) + "]";
}

void emit_term(std::ostringstream& out, bool& any, const OperatorPoly& coeff,
               const std::string& label) {
  std::string cs = coeff.str();
  bool neg = !cs.empty() && cs[0] == '-';
  if (neg) cs = (-coeff).str();
  out << "\n  " << (any ? (neg ? "- " : "+ ") : (neg ? "- " : "  "));
  any = true;
  out << "(" << cs << ") * " << label;
}

}  // namespace

std::string render(const FDScheme& fd) {
  std::ostringstream out;
  std::string m = "m" + std::to_string(fd.ell + 1);
  out << m << "[n+1] =";
  bool any = false;
  for (int k = 0; k < fd.steps; ++k) {
    const OperatorPoly& h = fd.homogeneous[static_cast<std::size_t>(k)];
    if (!h.is_zero()) emit_term(out, any, h, lag_label(m, k));
    for (const auto& [j, c] : fd.cross[static_cast<std::size_t>(k)])
      emit_term(out, any, c, lag_label("m" + std::to_string(j + 1), k));
    for (const auto& [i, s] : fd.sources[static_cast<std::size_t>(k)])
      emit_term(out, any, s, lag_label("m" + std::to_string(i + 1) + "^eq", k));
  }
  if (!any) out << " 0";
  out << "\n";
  return out.str();
}

namespace {

void serialize_stencil(std::ostringstream& out, const OperatorPoly& p, int dim) {
  for (auto it = p.terms().begin(); it != p.terms().end(); ++it) {
    out << "  ";
    for (int i = 0; i < dim; ++i) out << it->first[static_cast<std::size_t>(i)] << " ";
    out << ": " << it->second.str() << "\n";
  }
}

}  // namespace

std::string serialize(const FDScheme& fd) {
  std::ostringstream out;
  out << "fdscheme " << fd.scheme_name << "\n";
  out << "dim " << fd.dim << "\n";
  out << "q " << fd.q << "\n";
  out << "conserved " << fd.ell + 1 << " of " << fd.conserved_count << "\n";
  out << "steps " << fd.steps << "\n";
  out << "provenance " << fd.provenance << "\n";
  for (int k = 0; k < fd.steps; ++k) {
    out << "stencil homogeneous lag " << k << "\n";
    serialize_stencil(out, fd.homogeneous[static_cast<std::size_t>(k)], fd.dim);
    for (const auto& [j, c] : fd.cross[static_cast<std::size_t>(k)]) {
      out << "stencil cross m" << j + 1 << " lag " << k << "\n";
      serialize_stencil(out, c, fd.dim);
    }
    for (const auto& [i, s] : fd.sources[static_cast<std::size_t>(k)]) {
      out << "stencil source m" << i + 1 << "^eq lag " << k << "\n";
      serialize_stencil(out, s, fd.dim);
    }
  }
  out << "end\n";
  return out.str();
}

}  // namespace lbfd
