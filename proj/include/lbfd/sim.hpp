#ifndef LBFD_SIM_HPP
#define LBFD_SIM_HPP

#include <array>
#include <deque>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "lbfd/reduce.hpp"
#include "lbfd/scheme.hpp"

namespace lbfd {

struct Grid {
  int dim = 1;
  std::array<int, 3> n{1, 1, 1};
  double dx = 1.0;

  static Grid line(int nx, double dx);
  static Grid plane(int nx, int ny, double dx);
  long cells() const;
  long wrap_index(std::array<long, 3> idx) const;
};

using Field = std::vector<double>;

struct LBMState {
  Grid grid;
  std::vector<Field> m;  // q moment fields
};

// Expression compiled against fixed parameter bindings; evaluates per cell
// from the conserved moment values.
class NumericExpr {
 public:
  static NumericExpr compile(const Expr& e, int conserved,
                             const std::map<std::string, double>& bindings);
  double operator()(const double* m) const { return eval_node(root_, m); }

 private:
  struct Node {
    int kind;  // 0 const, 1 moment, 2 add, 3 sub, 4 mul, 5 div, 6 pow, 7 neg
    double c = 0.0;
    int moment = 0;
    int a = -1, b = -1;
    int exponent = 0;
  };
  std::vector<Node> nodes_;
  int root_ = -1;
  double eval_node(int id, const double* m) const;
  int compile_node(const Expr& e, int conserved, const std::map<std::string, double>& bindings);
};

// Stencil with numerically bound weights: out[x] += w * f[x - z dx].
struct CompiledStencil {
  struct Term {
    std::array<int, 3> offset;
    double weight;
  };
  std::vector<Term> terms;

  static CompiledStencil compile(const OperatorPoly& p,
                                 const std::map<std::string, double>& bindings);
  void apply_add(const Grid& g, const Field& in, Field& out) const;
};

// One collide-and-stream update of the moments, with the moment matrix and
// its exact inverse bound numerically.
class LBMStepper {
 public:
  LBMStepper(const BuiltScheme& b, std::map<std::string, double> bindings);

  const BuiltScheme& scheme() const { return *built_; }
  int q() const { return spec().q; }
  const SchemeSpec& spec() const;

  LBMState init_equilibrium(const Grid& g, const std::vector<Field>& conserved) const;
  Field equilibrium_field(int moment, const LBMState& s) const;  // moment >= N

  void collide(LBMState& s) const;
  void stream(LBMState& s) const;
  void step(LBMState& s) const;

  std::vector<Field> to_distributions(const LBMState& s) const;
  std::vector<Field> to_moments(const Grid& g, const std::vector<Field>& f) const;

 private:
  std::shared_ptr<const BuiltScheme> built_;
  std::map<std::string, double> bindings_;
  std::vector<double> m_num_, minv_num_;  // q*q row-major
  std::vector<double> rates_;
  std::vector<NumericExpr> equilibria_;  // index 0 .. q-N-1 for moments N..q-1
};

// Multi-step update of the conserved moments driven by derived schemes.
// Histories hold the last K conserved fields and equilibrium evaluations.
class FDRunner {
 public:
  FDRunner(const BuiltScheme& b, std::vector<FDScheme> schemes,
           std::map<std::string, double> bindings);

  int depth() const { return depth_; }  // max step count over the schemes
  // Runs depth()-1 warm-up steps of the one-step scheme on a copy of the
  // initial state to fill the histories; `state` is advanced alongside.
  void bootstrap(const LBMStepper& stepper, LBMState& state);
  void step();
  const Field& conserved(int ell) const { return conserved_hist_[static_cast<std::size_t>(ell)].front(); }

 private:
  std::shared_ptr<const BuiltScheme> built_;
  std::vector<FDScheme> schemes_;
  std::map<std::string, double> bindings_;
  Grid grid_;
  int depth_ = 0;
  std::vector<std::vector<CompiledStencil>> h_;                  // per scheme, per lag
  std::vector<std::vector<std::map<int, CompiledStencil>>> src_; // per scheme, lag, moment
  std::vector<std::vector<std::map<int, CompiledStencil>>> xsrc_;
  std::vector<NumericExpr> equilibria_;
  std::vector<std::deque<Field>> conserved_hist_;  // [ell][lag]
  std::map<int, std::deque<Field>> eq_hist_;       // [moment][lag]
  void push_time_level(std::vector<Field> conserved);
};

double l2_error(const Field& a, const Field& b, double dx);

// Max over steps of the relative l-inf deviation between the conserved
// trajectories of the one-step scheme and its multi-step reduction, both
// started from the same initialization.
double compare_trajectories(const BuiltScheme& b, const std::vector<FDScheme>& fds, int steps,
                            const Grid& grid, const std::map<std::string, double>& bindings,
                            const std::vector<Field>& initial_conserved);

struct ConvergenceRow {
  double dx = 0.0;
  double error = 0.0;
  double order = 0.0;  // log2(e_2h / e_h), 0 for the first row
  bool diverged = false;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  double ls_order = 0.0;  // least-squares slope of log e vs log dx
  bool diverged = false;
};

struct ConvergenceConfig {
  char datum = 'd';       // a, b, c, d
  double s = 1.0;
  double D = 0.4;
  double C = 0.5;
  double lambda = 1.0;
  double T = 0.5;
  int level_min = 6;      // dx = 2^-level over [-1, 1]
  int level_max = 11;
  double divergence_factor = 1e6;
};

// Advection test bench: the one-conserved d1q3 scheme with p = 1, linear
// equilibria (lambda C, 2 lambda^2 D) m1, periodic domain [-1, 1].
double initial_datum(char datum, double x);
ConvergenceTable convergence_study(const ConvergenceConfig& cfg);

// Flat binary field dump: one text header line "lbfd-field dim n... dx",
// then row-major little-endian doubles.
void write_field(std::ostream& out, const Grid& g, const Field& f);

}  // namespace lbfd

#endif
