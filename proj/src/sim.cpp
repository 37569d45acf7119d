#include "lbfd/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "lbfd/error.hpp"
#include "lbfd/linalg.hpp"

namespace lbfd {

Grid Grid::line(int nx, double dx) {
  Grid g;
  g.dim = 1;
  g.n = {nx, 1, 1};
  g.dx = dx;
  return g;
}

Grid Grid::plane(int nx, int ny, double dx) {
  Grid g;
  g.dim = 2;
  g.n = {nx, ny, 1};
  g.dx = dx;
  return g;
}

long Grid::cells() const {
  long c = 1;
  for (int a = 0; a < dim; ++a) c *= n[static_cast<std::size_t>(a)];
  return c;
}

long Grid::wrap_index(std::array<long, 3> idx) const {
  long flat = 0, stride = 1;
  for (int a = 0; a < dim; ++a) {
    long na = n[static_cast<std::size_t>(a)];
    long i = idx[static_cast<std::size_t>(a)] % na;
    if (i < 0) i += na;
    flat += i * stride;
    stride *= na;
  }
  return flat;
}

NumericExpr NumericExpr::compile(const Expr& e, int conserved,
                                 const std::map<std::string, double>& bindings) {
  NumericExpr out;
  out.root_ = out.compile_node(e, conserved, bindings);
  return out;
}

int NumericExpr::compile_node(const Expr& e, int conserved,
                              const std::map<std::string, double>& bindings) {
  Node node;
  switch (e.kind) {
    case Expr::Kind::Integer:
      node.kind = 0;
      node.c = to_double(Rational(e.value));
      break;
    case Expr::Kind::Symbol: {
      if (e.symbol.size() > 1 && e.symbol[0] == 'm' &&
          std::all_of(e.symbol.begin() + 1, e.symbol.end(),
                      [](char c) { return c >= '0' && c <= '9'; })) {
        int k = std::stoi(e.symbol.substr(1));
        if (k >= 1 && k <= conserved) {
          node.kind = 1;
          node.moment = k - 1;
          break;
        }
      }
      auto it = bindings.find(e.symbol);
      if (it == bindings.end()) throw UserError("unbound symbol: " + e.symbol);
      node.kind = 0;
      node.c = it->second;
      break;
    }
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
    case Expr::Kind::Mul:
    case Expr::Kind::Div: {
      node.kind = e.kind == Expr::Kind::Add   ? 2
                  : e.kind == Expr::Kind::Sub ? 3
                  : e.kind == Expr::Kind::Mul ? 4
                                              : 5;
      node.a = compile_node(*e.lhs, conserved, bindings);
      node.b = compile_node(*e.rhs, conserved, bindings);
      break;
    }
    case Expr::Kind::Pow:
      node.kind = 6;
      node.exponent = e.exponent;
      node.a = compile_node(*e.lhs, conserved, bindings);
      break;
    case Expr::Kind::Neg:
      node.kind = 7;
      node.a = compile_node(*e.lhs, conserved, bindings);
      break;
  }
  nodes_.push_back(node);
  return static_cast<int>(nodes_.size()) - 1;
}

double NumericExpr::eval_node(int id, const double* m) const {
  const Node& n = nodes_[static_cast<std::size_t>(id)];
  switch (n.kind) {
    case 0:
      return n.c;
    case 1:
      return m[n.moment];
    case 2:
      return eval_node(n.a, m) + eval_node(n.b, m);
    case 3:
      return eval_node(n.a, m) - eval_node(n.b, m);
    case 4:
      return eval_node(n.a, m) * eval_node(n.b, m);
    case 5:
      return eval_node(n.a, m) / eval_node(n.b, m);
    case 6: {
      double b = eval_node(n.a, m);
      double r = 1.0;
      int k = n.exponent >= 0 ? n.exponent : -n.exponent;
      for (int i = 0; i < k; ++i) r *= b;
      return n.exponent >= 0 ? r : 1.0 / r;
    }
    case 7:
      return -eval_node(n.a, m);
  }
  return 0.0;
}

CompiledStencil CompiledStencil::compile(const OperatorPoly& p,
                                         const std::map<std::string, double>& bindings) {
  CompiledStencil out;
  for (const auto& [z, c] : p.terms())
    out.terms.push_back({{z[0], z[1], z[2]}, c.eval(bindings)});
  return out;
}

void CompiledStencil::apply_add(const Grid& g, const Field& in, Field& out) const {
  const long nx = g.n[0], ny = g.n[1], nz = g.n[2];
  for (const Term& t : terms) {
    const double w = t.weight;
    long idx = 0;
    for (long k = 0; k < (g.dim > 2 ? nz : 1); ++k) {
      for (long j = 0; j < (g.dim > 1 ? ny : 1); ++j) {
        for (long i = 0; i < nx; ++i, ++idx) {
          long src = g.wrap_index({i - t.offset[0], j - t.offset[1], k - t.offset[2]});
          out[static_cast<std::size_t>(idx)] += w * in[static_cast<std::size_t>(src)];
        }
      }
    }
  }
}

const SchemeSpec& LBMStepper::spec() const { return built_->spec; }

LBMStepper::LBMStepper(const BuiltScheme& b, std::map<std::string, double> bindings)
    : built_(std::make_shared<BuiltScheme>(b)), bindings_(std::move(bindings)) {
  const SchemeSpec& s = built_->spec;
  const int q = s.q;
  OpMatrix m(q, q, s.dim, s.params);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) m.at(i, j) = OperatorPoly::constant(s.m_entry(i, j), s.dim);
  OpMatrix minv = field_invert(m);
  m_num_.resize(static_cast<std::size_t>(q) * static_cast<std::size_t>(q));
  minv_num_.resize(m_num_.size());
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) {
      m_num_[static_cast<std::size_t>(i) * static_cast<std::size_t>(q) + j] =
          s.m_entry(i, j).eval(bindings_);
      minv_num_[static_cast<std::size_t>(i) * static_cast<std::size_t>(q) + j] =
          minv.at(i, j).as_coefficient().eval(bindings_);
    }
  }
  for (int i = 0; i < q; ++i) rates_.push_back(s.rates[static_cast<std::size_t>(i)].eval(bindings_));
  for (int i = s.conserved; i < q; ++i)
    equilibria_.push_back(NumericExpr::compile(*s.equilibrium(i), s.conserved, bindings_));
}

LBMState LBMStepper::init_equilibrium(const Grid& g, const std::vector<Field>& conserved) const {
  const SchemeSpec& s = spec();
  if (static_cast<int>(conserved.size()) != s.conserved)
    throw UserError("need one initial field per conserved moment");
  LBMState state;
  state.grid = g;
  state.m.assign(static_cast<std::size_t>(s.q), Field(static_cast<std::size_t>(g.cells()), 0.0));
  for (int j = 0; j < s.conserved; ++j) state.m[static_cast<std::size_t>(j)] = conserved[static_cast<std::size_t>(j)];
  std::vector<double> mc(static_cast<std::size_t>(s.conserved));
  for (long c = 0; c < g.cells(); ++c) {
    for (int j = 0; j < s.conserved; ++j)
      mc[static_cast<std::size_t>(j)] = state.m[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
    for (int i = s.conserved; i < s.q; ++i)
      state.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] =
          equilibria_[static_cast<std::size_t>(i - s.conserved)](mc.data());
  }
  return state;
}

Field LBMStepper::equilibrium_field(int moment, const LBMState& s) const {
  const SchemeSpec& sp = spec();
  if (moment < sp.conserved || moment >= sp.q) throw UserError("not a non-conserved moment");
  Field out(static_cast<std::size_t>(s.grid.cells()));
  std::vector<double> mc(static_cast<std::size_t>(sp.conserved));
  for (long c = 0; c < s.grid.cells(); ++c) {
    for (int j = 0; j < sp.conserved; ++j)
      mc[static_cast<std::size_t>(j)] = s.m[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
    out[static_cast<std::size_t>(c)] = equilibria_[static_cast<std::size_t>(moment - sp.conserved)](mc.data());
  }
  return out;
}

void LBMStepper::collide(LBMState& s) const {
  const SchemeSpec& sp = spec();
  std::vector<double> mc(static_cast<std::size_t>(sp.conserved));
  for (long c = 0; c < s.grid.cells(); ++c) {
    for (int j = 0; j < sp.conserved; ++j)
      mc[static_cast<std::size_t>(j)] = s.m[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
    for (int i = sp.conserved; i < sp.q; ++i) {
      double eq = equilibria_[static_cast<std::size_t>(i - sp.conserved)](mc.data());
      double& mi = s.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
      mi += rates_[static_cast<std::size_t>(i)] * (eq - mi);
    }
  }
}

std::vector<Field> LBMStepper::to_distributions(const LBMState& s) const {
  const int q = spec().q;
  const long cells = s.grid.cells();
  std::vector<Field> f(static_cast<std::size_t>(q), Field(static_cast<std::size_t>(cells), 0.0));
  for (int j = 0; j < q; ++j) {
    for (int i = 0; i < q; ++i) {
      double w = minv_num_[static_cast<std::size_t>(j) * static_cast<std::size_t>(q) + i];
      if (w == 0.0) continue;
      const Field& mi = s.m[static_cast<std::size_t>(i)];
      Field& fj = f[static_cast<std::size_t>(j)];
      for (long c = 0; c < cells; ++c) fj[static_cast<std::size_t>(c)] += w * mi[static_cast<std::size_t>(c)];
    }
  }
  return f;
}

std::vector<Field> LBMStepper::to_moments(const Grid& g, const std::vector<Field>& f) const {
  const int q = spec().q;
  const long cells = g.cells();
  std::vector<Field> m(static_cast<std::size_t>(q), Field(static_cast<std::size_t>(cells), 0.0));
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) {
      double w = m_num_[static_cast<std::size_t>(i) * static_cast<std::size_t>(q) + j];
      if (w == 0.0) continue;
      const Field& fj = f[static_cast<std::size_t>(j)];
      Field& mi = m[static_cast<std::size_t>(i)];
      for (long c = 0; c < cells; ++c) mi[static_cast<std::size_t>(c)] += w * fj[static_cast<std::size_t>(c)];
    }
  }
  return m;
}

void LBMStepper::stream(LBMState& s) const {
  const SchemeSpec& sp = spec();
  std::vector<Field> f = to_distributions(s);
  std::vector<Field> fs(f.size(), Field(static_cast<std::size_t>(s.grid.cells()), 0.0));
  const Grid& g = s.grid;
  for (int j = 0; j < sp.q; ++j) {
    const Shift& cvec = sp.velocities[static_cast<std::size_t>(j)];
    const Field& in = f[static_cast<std::size_t>(j)];
    Field& out = fs[static_cast<std::size_t>(j)];
    long idx = 0;
    for (long k = 0; k < (g.dim > 2 ? g.n[2] : 1); ++k)
      for (long jj = 0; jj < (g.dim > 1 ? g.n[1] : 1); ++jj)
        for (long i = 0; i < g.n[0]; ++i, ++idx)
          out[static_cast<std::size_t>(idx)] =
              in[static_cast<std::size_t>(g.wrap_index({i - cvec[0], jj - cvec[1], k - cvec[2]}))];
  }
  s.m = to_moments(g, fs);
}

void LBMStepper::step(LBMState& s) const {
  collide(s);
  stream(s);
}

FDRunner::FDRunner(const BuiltScheme& b, std::vector<FDScheme> schemes,
                   std::map<std::string, double> bindings)
    : built_(std::make_shared<BuiltScheme>(b)),
      schemes_(std::move(schemes)),
      bindings_(std::move(bindings)) {
  const SchemeSpec& sp = built_->spec;
  if (static_cast<int>(schemes_.size()) != sp.conserved)
    throw UserError("need one derived scheme per conserved moment");
  for (const FDScheme& fd : schemes_) depth_ = std::max(depth_, fd.steps);
  for (const FDScheme& fd : schemes_) {
    std::vector<CompiledStencil> h;
    std::vector<std::map<int, CompiledStencil>> src, xsrc;
    for (int k = 0; k < fd.steps; ++k) {
      h.push_back(CompiledStencil::compile(fd.homogeneous[static_cast<std::size_t>(k)], bindings_));
      std::map<int, CompiledStencil> sk, xk;
      for (const auto& [i, p] : fd.sources[static_cast<std::size_t>(k)])
        sk.emplace(i, CompiledStencil::compile(p, bindings_));
      for (const auto& [j, p] : fd.cross[static_cast<std::size_t>(k)])
        xk.emplace(j, CompiledStencil::compile(p, bindings_));
      src.push_back(std::move(sk));
      xsrc.push_back(std::move(xk));
    }
    h_.push_back(std::move(h));
    src_.push_back(std::move(src));
    xsrc_.push_back(std::move(xsrc));
  }
  for (int i = sp.conserved; i < sp.q; ++i)
    equilibria_.push_back(NumericExpr::compile(*sp.equilibrium(i), sp.conserved, bindings_));
  conserved_hist_.resize(static_cast<std::size_t>(sp.conserved));
}

void FDRunner::push_time_level(std::vector<Field> conserved) {
  const SchemeSpec& sp = built_->spec;
  const long cells = grid_.cells();
  std::vector<double> mc(static_cast<std::size_t>(sp.conserved));
  for (int i = sp.conserved; i < sp.q; ++i) {
    Field eq(static_cast<std::size_t>(cells));
    for (long c = 0; c < cells; ++c) {
      for (int j = 0; j < sp.conserved; ++j)
        mc[static_cast<std::size_t>(j)] = conserved[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
      eq[static_cast<std::size_t>(c)] = equilibria_[static_cast<std::size_t>(i - sp.conserved)](mc.data());
    }
    auto& dq = eq_hist_[i];
    dq.push_front(std::move(eq));
    while (static_cast<int>(dq.size()) > depth_) dq.pop_back();
  }
  for (int j = 0; j < sp.conserved; ++j) {
    auto& dq = conserved_hist_[static_cast<std::size_t>(j)];
    dq.push_front(std::move(conserved[static_cast<std::size_t>(j)]));
    while (static_cast<int>(dq.size()) > depth_) dq.pop_back();
  }
}

void FDRunner::bootstrap(const LBMStepper& stepper, LBMState& state) {
  grid_ = state.grid;
  const SchemeSpec& sp = built_->spec;
  auto capture = [&]() {
    std::vector<Field> conserved;
    for (int j = 0; j < sp.conserved; ++j) conserved.push_back(state.m[static_cast<std::size_t>(j)]);
    push_time_level(std::move(conserved));
  };
  capture();
  for (int t = 1; t < depth_; ++t) {
    stepper.step(state);
    capture();
  }
}

void FDRunner::step() {
  const SchemeSpec& sp = built_->spec;
  const long cells = grid_.cells();
  std::vector<Field> next;
  for (int ell = 0; ell < sp.conserved; ++ell) {
    const FDScheme& fd = schemes_[static_cast<std::size_t>(ell)];
    Field out(static_cast<std::size_t>(cells), 0.0);
    for (int k = 0; k < fd.steps; ++k) {
      h_[static_cast<std::size_t>(ell)][static_cast<std::size_t>(k)].apply_add(
          grid_, conserved_hist_[static_cast<std::size_t>(ell)][static_cast<std::size_t>(k)], out);
      for (const auto& [i, st] : src_[static_cast<std::size_t>(ell)][static_cast<std::size_t>(k)])
        st.apply_add(grid_, eq_hist_.at(i)[static_cast<std::size_t>(k)], out);
      for (const auto& [j, st] : xsrc_[static_cast<std::size_t>(ell)][static_cast<std::size_t>(k)])
        st.apply_add(grid_, conserved_hist_[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)], out);
    }
    next.push_back(std::move(out));
  }
  push_time_level(std::move(next));
}

double l2_error(const Field& a, const Field& b, double dx) {
  if (a.size() != b.size()) throw UserError("field length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(dx * sum);
}

double compare_trajectories(const BuiltScheme& b, const std::vector<FDScheme>& fds, int steps,
                            const Grid& grid, const std::map<std::string, double>& bindings,
                            const std::vector<Field>& initial_conserved) {
  LBMStepper stepper(b, bindings);
  LBMState lbm = stepper.init_equilibrium(grid, initial_conserved);
  FDRunner runner(b, fds, bindings);
  runner.bootstrap(stepper, lbm);

  double worst = 0.0;
  for (int t = 0; t < steps; ++t) {
    stepper.step(lbm);
    runner.step();
    for (int j = 0; j < b.spec.conserved; ++j) {
      const Field& ref = lbm.m[static_cast<std::size_t>(j)];
      const Field& fd = runner.conserved(j);
      double scale = 0.0;
      for (double v : ref) scale = std::max(scale, std::abs(v));
      if (scale == 0.0) scale = 1.0;
      for (std::size_t c = 0; c < ref.size(); ++c)
        worst = std::max(worst, std::abs(ref[c] - fd[c]) / scale);
    }
  }
  return worst;
}

double initial_datum(char datum, double x) {
  double ax = std::abs(x);
  switch (datum) {
    case 'a':
      return ax <= 0.5 ? 1.0 : 0.0;
    case 'b':
      return ax <= 0.5 ? 1.0 - 2.0 * ax : 0.0;
    case 'c': {
      double c = std::cos(std::numbers::pi * x);
      return ax <= 0.5 ? c * c : 0.0;
    }
    case 'd': {
      double r = 2.0 * ax;
      return r < 1.0 ? std::exp(-1.0 / (1.0 - r * r)) : 0.0;
    }
    default:
      throw UserError("unknown initial datum; use a, b, c or d");
  }
}

ConvergenceTable convergence_study(const ConvergenceConfig& cfg) {
  SchemeSpec spec = catalog_scheme("d1q3");
  BuiltScheme built = build(spec);
  std::map<std::string, double> bind{
      {"lambda", cfg.lambda}, {"s", cfg.s}, {"p", 1.0}, {"C", cfg.C}, {"D", cfg.D}};

  ConvergenceTable table;
  for (int level = cfg.level_min; level <= cfg.level_max; ++level) {
    double dx = std::ldexp(1.0, -level);
    long nx = std::lround(2.0 / dx);
    long steps = std::lround(cfg.T / dx * cfg.lambda);
    Grid grid = Grid::line(static_cast<int>(nx), dx);
    Field u0(static_cast<std::size_t>(nx));
    for (long i = 0; i < nx; ++i) u0[static_cast<std::size_t>(i)] = initial_datum(cfg.datum, -1.0 + i * dx);

    LBMStepper stepper(built, bind);
    LBMState state = stepper.init_equilibrium(grid, {u0});
    auto l2_norm = [dx](const Field& f) {
      double sum = 0.0;
      for (double v : f) sum += v * v;
      return std::sqrt(dx * sum);
    };
    double initial_norm = l2_norm(u0);

    ConvergenceRow row;
    row.dx = dx;
    for (long t = 0; t < steps; ++t) {
      stepper.step(state);
      double norm = l2_norm(state.m[0]);
      if (!(norm < cfg.divergence_factor * std::max(initial_norm, 1e-300)) || !std::isfinite(norm)) {
        row.diverged = true;
        table.diverged = true;
        break;
      }
    }
    double shift = cfg.lambda * cfg.C * cfg.T;
    Field exact(static_cast<std::size_t>(nx));
    for (long i = 0; i < nx; ++i) {
      double x = -1.0 + i * dx - shift;
      while (x < -1.0) x += 2.0;
      while (x >= 1.0) x -= 2.0;
      exact[static_cast<std::size_t>(i)] = initial_datum(cfg.datum, x);
    }
    row.error = row.diverged ? std::numeric_limits<double>::infinity()
                             : l2_error(state.m[0], exact, dx);
    if (!table.rows.empty() && !row.diverged && !table.rows.back().diverged)
      row.order = std::log2(table.rows.back().error / row.error);
    table.rows.push_back(row);
  }

  // Least-squares slope of log(error) against log(dx) over the clean rows.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const auto& r : table.rows) {
    if (r.diverged || !(r.error > 0) || !std::isfinite(r.error)) continue;
    double lx = std::log(r.dx), ly = std::log(r.error);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m >= 2) table.ls_order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return table;
}

void write_field(std::ostream& out, const Grid& g, const Field& f) {
  out << "lbfd-field " << g.dim;
  for (int a = 0; a < g.dim; ++a) out << " " << g.n[static_cast<std::size_t>(a)];
  out << " " << g.dx << "\n";
  out.write(reinterpret_cast<const char*>(f.data()),
            static_cast<std::streamsize>(f.size() * sizeof(double)));
}

}  // namespace lbfd
