#include "lbfd/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "lbfd/error.hpp"
#include "lbfd/reduce.hpp"
#include "lbfd/sim.hpp"
#include "lbfd/spectral.hpp"

namespace lbfd {

namespace {

bool parse_int_strict(const std::string& s, long& out) {
  if (s.empty()) return false;
  std::size_t pos = 0;
  try {
    out = std::stol(s, &pos);
  } catch (...) {
    return false;
  }
  return pos == s.size();
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

SchemeSpec parse_scheme_file(const std::string& text, const std::string& name) {
  SchemeSpec spec;
  spec.name = name;
  std::vector<std::string> param_names;
  std::vector<std::vector<std::string>> matrix_rows;
  std::vector<std::string> rate_tokens;
  std::vector<std::pair<int, std::pair<int, std::string>>> equil_lines;  // line, (idx, expr)
  bool have_d = false, have_q = false, have_n = false;

  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string stripped = line;
    if (auto hash = stripped.find('#'); hash != std::string::npos) stripped.resize(hash);
    auto tokens = split_ws(stripped);
    if (tokens.empty()) continue;
    if (tokens[0].front() == '[') {
      if (tokens.size() != 1 || tokens[0].back() != ']')
        throw ParseError("malformed section header", lineno, 1);
      section = tokens[0].substr(1, tokens[0].size() - 2);
      if (section != "dimensions" && section != "parameters" && section != "velocities" &&
          section != "moment_matrix" && section != "relaxation" && section != "equilibria")
        throw ParseError("unknown section [" + section + "]", lineno, 1);
      continue;
    }
    if (section == "dimensions") {
      if (tokens.size() != 2) throw ParseError("expected 'key value'", lineno, 1);
      long v = 0;
      if (!parse_int_strict(tokens[1], v)) throw ParseError("expected an integer", lineno, 1);
      if (tokens[0] == "d") {
        spec.dim = static_cast<int>(v);
        have_d = true;
      } else if (tokens[0] == "q") {
        spec.q = static_cast<int>(v);
        have_q = true;
      } else if (tokens[0] == "conserved") {
        spec.conserved = static_cast<int>(v);
        have_n = true;
      } else {
        throw ParseError("unknown dimensions key '" + tokens[0] + "'", lineno, 1);
      }
    } else if (section == "parameters") {
      if (tokens.size() != 1) throw ParseError("one parameter name per line", lineno, 1);
      param_names.push_back(tokens[0]);
    } else if (section == "velocities") {
      if (!have_d) throw ParseError("velocities before [dimensions]", lineno, 1);
      if (static_cast<int>(tokens.size()) != spec.dim)
        throw ParseError("velocity needs " + std::to_string(spec.dim) + " components", lineno, 1);
      Shift c{0, 0, 0};
      for (int a = 0; a < spec.dim; ++a) {
        long v = 0;
        if (!parse_int_strict(tokens[static_cast<std::size_t>(a)], v))
          throw ParseError("velocity components must be integers", lineno, 1);
        c[static_cast<std::size_t>(a)] = static_cast<int>(v);
      }
      spec.velocities.push_back(c);
    } else if (section == "moment_matrix") {
      matrix_rows.push_back(tokens);
    } else if (section == "relaxation") {
      for (const auto& t : tokens) rate_tokens.push_back(t);
    } else if (section == "equilibria") {
      if (tokens.size() < 2 || tokens[0].size() < 2 || tokens[0][0] != 'm')
        throw ParseError("expected 'm<k> <expression>'", lineno, 1);
      long idx = 0;
      if (!parse_int_strict(tokens[0].substr(1), idx))
        throw ParseError("expected 'm<k> <expression>'", lineno, 1);
      std::string expr;
      for (std::size_t i = 1; i < tokens.size(); ++i) expr += tokens[i];
      equil_lines.push_back({lineno, {static_cast<int>(idx), expr}});
    } else {
      throw ParseError("content before any section", lineno, 1);
    }
  }

  if (!have_d || !have_q || !have_n)
    throw UserError("missing d, q or conserved in [dimensions]");
  spec.params = make_param_set(param_names);
  if (static_cast<int>(spec.velocities.size()) != spec.q)
    throw UserError("velocity count " + std::to_string(spec.velocities.size()) +
                    " does not match q = " + std::to_string(spec.q));
  if (static_cast<int>(matrix_rows.size()) != spec.q)
    throw UserError("moment matrix needs q rows");
  for (const auto& row : matrix_rows) {
    if (static_cast<int>(row.size()) != spec.q) throw UserError("moment matrix row needs q entries");
    for (const auto& t : row) spec.moment_matrix.push_back(eval_coeff(*parse_expression(t), spec.params));
  }
  if (static_cast<int>(rate_tokens.size()) != spec.q)
    throw UserError("relaxation needs q entries");
  for (const auto& t : rate_tokens) spec.rates.push_back(eval_coeff(*parse_expression(t), spec.params));
  for (const auto& [lineno2, kv] : equil_lines) {
    if (kv.first < 1 || kv.first > spec.q)
      throw ParseError("equilibrium index m" + std::to_string(kv.first) + " out of range", lineno2, 1);
    spec.equilibria[kv.first - 1] = parse_expression(kv.second, lineno2);
  }
  spec.validate();
  return spec;
}

SchemeSpec load_scheme_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UserError("cannot open scheme file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string name = std::filesystem::path(path).stem().string();
  return parse_scheme_file(buf.str(), name);
}

SchemeSpec resolve_scheme(const std::string& ref, int link_w) {
  if (ref == "link" && link_w >= 1) return make_link_scheme(link_w);
  if (catalog_has(ref)) return catalog_scheme(ref);
  if (std::filesystem::exists(ref)) return load_scheme_file(ref);
  if (const char* dir = std::getenv("LBFD_SCHEME_PATH")) {
    std::filesystem::path p = std::filesystem::path(dir) / (ref + ".scheme");
    if (std::filesystem::exists(p)) return load_scheme_file(p.string());
  }
  throw UserError("unknown scheme '" + ref + "' (not a catalog name, file, or $LBFD_SCHEME_PATH entry)");
}

namespace {

struct CommonOpts {
  std::string scheme;
  std::string path = "charpoly";
  bool no_trim = false;
  int link_w = 1;
  std::vector<std::string> binds;
  std::string out;
  bool no_timestamp = false;
  int xi_points = 257;
};

std::map<std::string, double> parse_bindings(const std::vector<std::string>& binds) {
  std::map<std::string, double> out;
  for (const auto& b : binds) {
    auto eq = b.find('=');
    if (eq == std::string::npos || eq == 0)
      throw UserError("bad --bind '" + b + "', expected name=value");
    std::string name = b.substr(0, eq);
    std::string val = b.substr(eq + 1);
    try {
      std::size_t pos = 0;
      double v = std::stod(val, &pos);
      if (pos != val.size()) throw std::invalid_argument(val);
      out[name] = v;
    } catch (...) {
      throw UserError("bad numeric value in --bind '" + b + "'");
    }
  }
  return out;
}

void write_output(const std::string& path, const std::string& content, bool no_timestamp,
                  std::ostream& fallback) {
  std::string head;
  if (!no_timestamp) {
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", std::gmtime(&now));
    head = std::string("# generated ") + buf + "Z\n";
  }
  if (path.empty()) {
    fallback << head << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UserError("cannot write " + path);
  f << head << content;
}

ReduceOptions reduce_options(const CommonOpts& c) {
  ReduceOptions opt;
  if (c.path == "charpoly")
    opt.path = ReducePath::Charpoly;
  else if (c.path == "minimal")
    opt.path = ReducePath::Minimal;
  else if (c.path == "mpafr")
    opt.path = ReducePath::Mpafr;
  else
    throw UserError("unknown --path '" + c.path + "' (charpoly, minimal or mpafr)");
  opt.trim = !c.no_trim;
  return opt;
}

std::vector<FDScheme> derive_schemes(const BuiltScheme& built, const ReduceOptions& opt) {
  if (opt.path == ReducePath::Mpafr) return {reduce_mpafr(built)};
  return reduce_multi(built, opt);
}

int cmd_derive(const CommonOpts& c, const std::string& serialize_path, std::ostream& out,
               std::ostream& err) {
  BuiltScheme built = build(resolve_scheme(c.scheme, c.link_w));
  for (const auto& w : built.warnings) err << "warning: " << w << "\n";
  std::vector<FDScheme> fds = derive_schemes(built, reduce_options(c));
  std::string text, machine;
  for (const auto& fd : fds) {
    text += render(fd);
    machine += serialize(fd);
  }
  write_output(c.out, text, true, out);
  if (!serialize_path.empty()) write_output(serialize_path, machine, true, out);
  return 0;
}

int cmd_check(const CommonOpts& c, std::ostream& out, std::ostream& err) {
  SchemeSpec spec = resolve_scheme(c.scheme, c.link_w);
  BuiltScheme built = build(spec);
  for (const auto& w : built.warnings) err << "warning: " << w << "\n";
  out << "ok: scheme builds, A + B = T exactly\n";

  OpMatrix m(spec.q, spec.q, spec.dim, spec.params);
  for (int i = 0; i < spec.q; ++i)
    for (int j = 0; j < spec.q; ++j)
      m.at(i, j) = OperatorPoly::constant(spec.m_entry(i, j), spec.dim);
  if (!(m * field_invert(m) == OpMatrix::identity(spec.q, spec.dim, spec.params)))
    throw InternalError("M inverse check failed");
  out << "ok: moment matrix inverts exactly\n";

  TrimInfo trim = detect_trim(built);
  out << "ok: " << trim.Q << " non-conserved moment(s) with rate != 1\n";

  for (int ell = 0; ell < spec.conserved; ++ell) {
    auto [a_ell, diamond] = decompose_conserved(built, ell);
    if (!(a_ell + diamond == built.A)) throw InternalError("conserved decomposition failed");
  }
  out << "ok: conserved decompositions are exact\n";

  std::vector<FDScheme> fds = reduce_multi(built, ReduceOptions{});
  for (const auto& fd : fds)
    out << "ok: m" << fd.ell + 1 << " reduces to a " << fd.steps
        << "-step scheme (annihilation verified)\n";
  return 0;
}

int cmd_stability(const CommonOpts& c, std::ostream& out, std::ostream& err) {
  BuiltScheme built = build(resolve_scheme(c.scheme, c.link_w));
  for (const auto& w : built.warnings) err << "warning: " << w << "\n";
  auto bind = parse_bindings(c.binds);
  RingPoly chi = closed_loop_charpoly(built, linear_equilibrium_vector(built.spec));
  SpectralOptions opt;
  opt.xi_points = c.xi_points;
  StabilityReport rep = sample_and_test(chi, built.spec.dim, bind, 1.0, opt);
  std::ostringstream csv;
  csv << "stable,worst_modulus,offending_xi,multiple_root\n";
  csv << (rep.stable ? 1 : 0) << "," << rep.worst_modulus << ",";
  if (!rep.offending_xi.empty()) {
    for (std::size_t a = 0; a < rep.offending_xi.size(); ++a) {
      if (a) csv << ";";
      csv << rep.offending_xi[a];
    }
  }
  csv << "," << (rep.multiple_on_circle ? 1 : 0) << "\n";
  write_output(c.out, csv.str(), c.no_timestamp, out);
  err << (rep.stable ? "stable" : "UNSTABLE") << ", worst root modulus " << rep.worst_modulus
      << "\n";
  return 0;
}

struct Range {
  std::string name;
  double lo = 0, hi = 0;
};

Range parse_range(const std::string& text) {
  // name=lo:hi
  auto eq = text.find('=');
  auto colon = text.find(':', eq == std::string::npos ? 0 : eq);
  if (eq == std::string::npos || colon == std::string::npos)
    throw UserError("bad range '" + text + "', expected name=lo:hi");
  Range r;
  r.name = text.substr(0, eq);
  r.lo = std::stod(text.substr(eq + 1, colon - eq - 1));
  r.hi = std::stod(text.substr(colon + 1));
  return r;
}

int cmd_scan(const CommonOpts& c, const std::string& vary1, const std::string& vary2,
             const std::string& grid, std::ostream& out, std::ostream& err) {
  BuiltScheme built = build(resolve_scheme(c.scheme, c.link_w));
  for (const auto& w : built.warnings) err << "warning: " << w << "\n";
  auto bind = parse_bindings(c.binds);
  Range r1 = parse_range(vary1), r2 = parse_range(vary2);
  int n1 = 40, n2 = 40;
  if (!grid.empty()) {
    auto x = grid.find('x');
    if (x == std::string::npos)
      throw UserError("bad --grid '" + grid + "', expected N1xN2");
    n1 = std::stoi(grid.substr(0, x));
    n2 = std::stoi(grid.substr(x + 1));
  }
  SpectralOptions opt;
  opt.xi_points = c.xi_points;
  ScanResult scan =
      region_scan(built, r1.name, r1.lo, r1.hi, n1, r2.name, r2.lo, r2.hi, n2, bind, opt);
  write_output(c.out, scan_csv(scan), c.no_timestamp, out);
  return 0;
}

Field smooth_random_field(const Grid& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  double a1 = uni(rng), b1 = uni(rng), a2 = uni(rng), b2 = uni(rng), a3 = uni(rng), c0 = uni(rng);
  Field f(static_cast<std::size_t>(g.cells()));
  const double tau = 2.0 * std::numbers::pi;
  long idx = 0;
  for (long k = 0; k < (g.dim > 2 ? g.n[2] : 1); ++k) {
    for (long j = 0; j < (g.dim > 1 ? g.n[1] : 1); ++j) {
      for (long i = 0; i < g.n[0]; ++i, ++idx) {
        double u = static_cast<double>(i) / g.n[0];
        double v = g.dim > 1 ? static_cast<double>(j) / g.n[1] : 0.0;
        f[static_cast<std::size_t>(idx)] = c0 + a1 * std::sin(tau * u) + b1 * std::cos(tau * u) +
                                           a2 * std::sin(2 * tau * u + b2) +
                                           a3 * std::sin(tau * (u + v)) +
                                           (g.dim > 1 ? b2 * std::cos(tau * v) : 0.0);
      }
    }
  }
  return f;
}

Grid parse_grid(const std::string& text, double dx) {
  if (text.empty()) return Grid::line(64, dx);
  auto x = text.find('x');
  if (x == std::string::npos) return Grid::line(std::stoi(text), dx);
  return Grid::plane(std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1)), dx);
}

int cmd_simulate(const CommonOpts& c, const std::string& grid_text, int steps, unsigned seed,
                 const std::string& dump_prefix, std::ostream& out, std::ostream& err) {
  BuiltScheme built = build(resolve_scheme(c.scheme, c.link_w));
  for (const auto& w : built.warnings) err << "warning: " << w << "\n";
  auto bind = parse_bindings(c.binds);
  Grid grid = parse_grid(grid_text, 1.0);
  if (grid.dim != built.spec.dim) throw UserError("grid dimension does not match the scheme");

  std::vector<Field> initial;
  for (int j = 0; j < built.spec.conserved; ++j)
    initial.push_back(smooth_random_field(grid, seed + static_cast<unsigned>(j)));

  std::vector<FDScheme> fds = derive_schemes(built, reduce_options(c));

  LBMStepper stepper(built, bind);
  LBMState lbm = stepper.init_equilibrium(grid, initial);
  FDRunner runner(built, fds, bind);
  runner.bootstrap(stepper, lbm);

  std::ostringstream csv;
  csv << "step,linf_rel_deviation\n";
  double worst = 0.0;
  char buf[64];
  for (int t = 1; t <= steps; ++t) {
    stepper.step(lbm);
    runner.step();
    double dev = 0.0;
    for (int j = 0; j < built.spec.conserved; ++j) {
      const Field& ref = lbm.m[static_cast<std::size_t>(j)];
      const Field& fd = runner.conserved(j);
      double scale = 0.0;
      for (double v : ref) scale = std::max(scale, std::abs(v));
      if (scale == 0.0) scale = 1.0;
      for (std::size_t i = 0; i < ref.size(); ++i)
        dev = std::max(dev, std::abs(ref[i] - fd[i]) / scale);
      if (!std::isfinite(dev))
        throw DivergenceError("trajectory diverged at step " + std::to_string(t));
    }
    worst = std::max(worst, dev);
    std::snprintf(buf, sizeof buf, "%d,%.12e\n", t, dev);
    csv << buf;
  }
  write_output(c.out, csv.str(), c.no_timestamp, out);
  err << "max relative deviation over " << steps << " steps: " << worst << "\n";
  if (!dump_prefix.empty()) {
    for (int j = 0; j < built.spec.conserved; ++j) {
      std::ofstream f(dump_prefix + "_m" + std::to_string(j + 1) + ".bin", std::ios::binary);
      write_field(f, grid, lbm.m[static_cast<std::size_t>(j)]);
    }
  }
  return 0;
}

std::string convergence_csv(const ConvergenceTable& table) {
  std::ostringstream csv;
  csv << "dx,error,order\n";
  char buf[96];
  for (const auto& r : table.rows) {
    if (r.diverged)
      std::snprintf(buf, sizeof buf, "%.10g,diverged,\n", r.dx);
    else
      std::snprintf(buf, sizeof buf, "%.10g,%.12e,%.4f\n", r.dx, r.error, r.order);
    csv << buf;
  }
  return csv.str();
}

int cmd_converge(const CommonOpts& c, const std::string& preset, std::string datum,
                 const std::string& levels, const std::string& out_dir, std::ostream& out,
                 std::ostream& err) {
  auto bind = parse_bindings(c.binds);
  ConvergenceConfig cfg;
  if (!levels.empty()) {
    auto colon = levels.find(':');
    if (colon == std::string::npos) throw UserError("bad --levels, expected min:max");
    cfg.level_min = std::stoi(levels.substr(0, colon));
    cfg.level_max = std::stoi(levels.substr(colon + 1));
  }
  if (bind.count("C")) cfg.C = bind["C"];
  if (bind.count("lambda")) cfg.lambda = bind["lambda"];

  std::vector<std::pair<char, std::pair<double, double>>> runs;  // datum, (s, D)
  if (preset == "fig3") {
    for (char d : {'a', 'b', 'c', 'd'}) runs.push_back({d, {1.5, 0.4}});
  } else if (preset == "fig4") {
    for (char d : {'a', 'b', 'c', 'd'}) runs.push_back({d, {1.0, -0.625}});
  } else if (preset.empty()) {
    if (datum.empty() || !bind.count("s") || !bind.count("D"))
      throw UserError("converge needs --preset or --datum with --bind s= and --bind D=");
    runs.push_back({datum[0], {bind["s"], bind["D"]}});
  } else {
    throw UserError("unknown preset '" + preset + "' (fig3 or fig4)");
  }

  bool any_diverged = false;
  for (auto [d, sd] : runs) {
    cfg.datum = d;
    cfg.s = sd.first;
    cfg.D = sd.second;
    ConvergenceTable table = convergence_study(cfg);
    any_diverged = any_diverged || table.diverged;
    std::string csv = convergence_csv(table);
    std::string path = c.out;
    if (!out_dir.empty()) {
      char name[128];
      std::snprintf(name, sizeof name, "converge_%c_s%g_D%g.csv", d, cfg.s, cfg.D);
      path = (std::filesystem::path(out_dir) / name).string();
    }
    write_output(path, csv, c.no_timestamp, out);
    char line[160];
    std::snprintf(line, sizeof line, "datum %c  s=%g D=%g  ls order %.3f%s\n", d, cfg.s, cfg.D,
                  table.ls_order, table.diverged ? "  [diverged]" : "");
    err << line;
  }
  if (any_diverged) throw DivergenceError("at least one convergence run diverged");
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"finite-difference formulations of lattice Boltzmann schemes"};
  app.require_subcommand(1);

  CommonOpts c;
  std::string serialize_path, vary1, vary2, grid, preset, datum, levels, out_dir, dump_prefix;
  int steps = 100;
  unsigned seed = 1;

  auto add_common = [&](CLI::App* sub, bool needs_scheme) {
    if (needs_scheme) sub->add_option("--scheme", c.scheme, "catalog name or scheme file")->required();
    sub->add_option("--path", c.path, "reduction path: charpoly, minimal or mpafr");
    sub->add_flag("--no-trim", c.no_trim, "keep unit-rate moments in the reduction");
    sub->add_option("--W", c.link_w, "link-scheme pair count for --scheme link");
    sub->add_option("--bind", c.binds, "numeric parameter binding name=value")->take_all();
    sub->add_option("--out", c.out, "output file (default stdout)");
    sub->add_flag("--no-timestamp", c.no_timestamp, "omit the timestamp comment from outputs");
    sub->add_option("--xi-points", c.xi_points, "wave-number samples per dimension");
  };

  CLI::App* derive = app.add_subcommand("derive", "emit the corresponding finite-difference scheme");
  add_common(derive, true);
  derive->add_option("--serialize", serialize_path, "also write the machine-readable stencils");

  CLI::App* check = app.add_subcommand("check", "run the symbolic invariants on a scheme");
  add_common(check, true);

  CLI::App* stability = app.add_subcommand("stability", "von Neumann verdict at fixed bindings");
  add_common(stability, true);

  CLI::App* scan = app.add_subcommand("scan", "stability verdict over a 2-parameter grid");
  add_common(scan, true);
  scan->add_option("--vary1", vary1, "outer sweep, name=lo:hi")->required();
  scan->add_option("--vary2", vary2, "inner sweep, name=lo:hi")->required();
  scan->add_option("--grid", grid, "cells as N1xN2 (default 40x40)");

  CLI::App* simulate = app.add_subcommand("simulate", "step the scheme and its reduction together");
  add_common(simulate, true);
  simulate->add_option("--grid", grid, "grid size N or NxM (default 64)");
  simulate->add_option("--steps", steps, "number of time steps");
  simulate->add_option("--seed", seed, "seed for the random smooth initial data");
  simulate->add_option("--dump", dump_prefix, "write final conserved fields as binary dumps");

  CLI::App* converge = app.add_subcommand("converge", "grid-refinement study on the advection bench");
  add_common(converge, false);
  converge->add_option("--preset", preset, "fig3 or fig4");
  converge->add_option("--datum", datum, "initial datum a, b, c or d");
  converge->add_option("--levels", levels, "refinement levels min:max (default 6:11)");
  converge->add_option("--out-dir", out_dir, "directory for per-run CSV files");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (derive->parsed()) return cmd_derive(c, serialize_path, out, err);
    if (check->parsed()) return cmd_check(c, out, err);
    if (stability->parsed()) return cmd_stability(c, out, err);
    if (scan->parsed()) return cmd_scan(c, vary1, vary2, grid, out, err);
    if (simulate->parsed()) return cmd_simulate(c, grid, steps, seed, dump_prefix, out, err);
    if (converge->parsed()) return cmd_converge(c, preset, datum, levels, out_dir, out, err);
  } catch (const DivergenceError& e) {
    err << "divergence: " << e.what() << "\n";
    return 3;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const UserError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace lbfd
