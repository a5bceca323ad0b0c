#include <cstdio>
#include <exception>
#include <filesystem>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gsts/analysis.hpp"
#include "gsts/bench.hpp"
#include "gsts/errors.hpp"
#include "gsts/kernels.hpp"
#include "gsts/matrix_market.hpp"
#include "gsts/problem.hpp"
#include "gsts/report.hpp"
#include "gsts/solve.hpp"
#include "gsts/splitting.hpp"

namespace {

using namespace gsts;

struct ProblemArgs {
  std::size_t l = 25;
  double nu = 1.0;
  std::string load_dir;
  bool random_rhs = false;
  std::uint64_t seed = 1;
};

void add_problem_options(CLI::App* cmd, ProblemArgs& a, bool with_rhs) {
  cmd->add_option("--l", a.l, "grid parameter of the generated cavity problem")
      ->check(CLI::Range(std::size_t{2}, std::size_t{4096}));
  cmd->add_option("--nu", a.nu, "viscosity of the generated problem")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--load", a.load_dir,
                  "directory with M.mtx, E.mtx, f.vec, manifest.txt "
                  "(overrides --l/--nu)");
  if (with_rhs) {
    cmd->add_flag("--random-rhs", a.random_rhs,
                  "derive the right-hand side from a seeded random solution "
                  "instead of the ramp 1..p+q");
    cmd->add_option("--seed", a.seed, "seed for --random-rhs");
  }
}

// Deterministic uniform [-1, 1) stream, identical on every platform.
Vector seeded_solution(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  Vector u(n);
  for (std::size_t i = 0; i < n; ++i)
    u[i] = static_cast<double>(gen() >> 11) * 0x1p-53 * 2.0 - 1.0;
  return u;
}

SaddleSystem build_problem(const ProblemArgs& a, double& nu_out,
                           Manifest* manifest_out = nullptr) {
  if (!a.load_dir.empty()) {
    Manifest m;
    SaddleSystem sys = load_problem(a.load_dir, &m);
    nu_out = m.nu;
    if (manifest_out) *manifest_out = m;
    return sys;
  }
  SaddleSystem sys = assemble_mac_stokes({a.l, a.nu});
  const Vector u_star = a.random_rhs
                            ? seeded_solution(sys.n(), a.seed)
                            : [&] {
                                Vector u(sys.n());
                                for (std::size_t i = 0; i < u.size(); ++i)
                                  u[i] = static_cast<double>(i + 1);
                                return u;
                              }();
  rhs_from_solution(sys, u_star);
  nu_out = a.nu;
  if (manifest_out) *manifest_out = {a.l, a.nu, sys.p(), sys.q()};
  return sys;
}

std::string status_of(const IterationReport& rep) {
  if (rep.converged) return "converged";
  if (rep.diverged) return "diverged";
  if (rep.breakdown) return "breakdown";
  return "maxit";
}

void print_row(const ReportRow& row) {
  std::printf("%-22s IT %-6zu RES %.4e  %s", row.method.c_str(),
              row.iterations, row.res, row.status.c_str());
  if (row.cpu_seconds) std::printf("  CPU %.4f s", *row.cpu_seconds);
  std::printf("\n");
}

void emit_row(const ReportRow& row, const std::string& csv_path,
              const std::string& md_path) {
  if (!csv_path.empty())
    append_report_line(csv_path, csv_header(), csv_line(row));
  if (!md_path.empty())
    append_report_line(md_path, markdown_header(), markdown_line(row));
}

// ---- run ------------------------------------------------------------

struct RunArgs {
  ProblemArgs problem;
  std::string method;
  std::optional<double> omega1, omega2, tau, nu_g, alpha;
  std::size_t restart = 0;
  double tol = 1e-6;
  std::size_t maxit = 10000;
  std::string out_csv, out_md;
  bool timing = false;
};

// Splits "gmres+precond(tag)" into its tag; empty when not of that form.
std::string precond_tag_of(const std::string& method) {
  const std::string prefix = "gmres+precond(";
  if (method.size() > prefix.size() + 1 && method.rfind(prefix, 0) == 0 &&
      method.back() == ')')
    return method.substr(prefix.size(),
                         method.size() - prefix.size() - 1);
  return "";
}

// Builds the stationary configuration from explicit flags.
bench::StationaryConfig config_from_flags(bench::Method m, const RunArgs& r) {
  if (!r.tau) throw InvalidArgument("--tau is required for this method");
  const bool gsor =
      m == bench::Method::gsor_i || m == bench::Method::gsor_ii;
  bench::StationaryConfig c;
  if (gsor) {
    if (!r.nu_g)
      throw InvalidArgument("--nu-g is required for the gsor methods");
    if (r.omega2 && *r.omega2 != 0.0)
      throw InvalidArgument("the gsor methods fix omega2 = 0");
    c = bench::stationary_config(m, *r.tau, *r.nu_g);
  } else {
    if (!r.omega2)
      throw InvalidArgument("--omega2 is required for the gsts methods");
    c = bench::stationary_config(m, *r.omega2, *r.tau);
  }
  if (r.omega1) c.params.omega1 = *r.omega1;
  c.params.validate();
  return c;
}

int cmd_run(const RunArgs& r) {
  double nu = 0.0;
  const SaddleSystem sys = build_problem(r.problem, nu);
  SolverConfig cfg;
  cfg.tolerance = r.tol;
  cfg.max_iterations = r.maxit;
  cfg.restart = r.restart;

  ReportRow row;
  IterationReport rep;

  if (const auto m = bench::parse_method(r.method)) {
    const bench::StationaryConfig c = config_from_flags(*m, r);
    rep = gsts_solve(sys, build_b(sys, c.choice), c.params, cfg);
    row.method = r.method;
    const bool gsor =
        *m == bench::Method::gsor_i || *m == bench::Method::gsor_ii;
    row.col_omega = gsor ? c.params.omega1 : c.params.omega2;
    row.col_tau = gsor ? *r.nu_g : c.params.tau;
  } else if (r.method == "gmres") {
    rep = gmres_solve(saddle_operator(sys), stacked_rhs(sys), {}, cfg);
    row.method = r.method;
    if (r.restart > 0) row.restart = r.restart;
  } else if (const std::string tag = precond_tag_of(r.method); !tag.empty()) {
    const auto p = bench::parse_precond(tag);
    if (!p) throw InvalidArgument("unknown preconditioner tag: " + tag);
    LinearOp pre;
    if (p == bench::Precond::hss) {
      double alpha = r.alpha ? *r.alpha : bench::pick_hss_alpha(sys, cfg);
      pre = bench::make_preconditioner(sys, *p, nu, alpha);
      row.alpha = alpha;
    } else if (r.tau &&
               (p == bench::Precond::cp_i || p == bench::Precond::cp_ii)) {
      throw InvalidArgument("the constraint preconditioners take no "
                            "parameters");
    } else if (r.tau) {
      // explicit splitting parameters instead of the reference row
      const auto sm = bench::parse_method(tag);
      const bench::StationaryConfig c = config_from_flags(*sm, r);
      auto b = std::make_shared<BOperator>(build_b(sys, c.choice));
      auto gp = std::make_shared<GstsPreconditioner>(
          sys, *b, c.params.omega1, c.params.omega2);
      const double tau = c.params.tau;
      pre = [b, gp, tau](const Vector& v) {
        Vector z = gp->apply(v);
        kernels::scal(z.size(), tau, z.data());
        return z;
      };
      const bool gsor =
          *sm == bench::Method::gsor_i || *sm == bench::Method::gsor_ii;
      row.col_omega = gsor ? c.params.omega1 : c.params.omega2;
      row.col_tau = gsor ? *r.nu_g : c.params.tau;
    } else {
      pre = bench::make_preconditioner(sys, *p, nu, 0.0);
    }
    rep = gmres_solve(saddle_operator(sys), stacked_rhs(sys), pre, cfg);
    row.method = r.method;
    if (r.restart > 0) row.restart = r.restart;
  } else if (r.method == "qmr") {
    std::fprintf(stderr,
                 "method tag 'qmr' is reserved but not implemented\n");
    return 2;
  } else {
    throw InvalidArgument("unknown method tag: " + r.method);
  }

  row.iterations = rep.iterations;
  row.res = rep.final_residual;
  row.status = status_of(rep);
  if (r.timing) row.cpu_seconds = rep.wall_seconds;
  print_row(row);
  emit_row(row, r.out_csv, r.out_md);
  return rep.converged ? 0 : 1;
}

// ---- sweep ----------------------------------------------------------

struct SweepArgs {
  ProblemArgs problem;
  std::string method;
  std::vector<double> x_grid, tau_grid;
  std::string x_lin, tau_lin;
  double tol = 1e-6;
  std::size_t maxit = 2000;
  std::string out_csv;
};

std::vector<double> linspace_spec(const std::string& spec) {
  // "min:max:count"
  double lo = 0.0, hi = 0.0;
  long count = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%ld", &lo, &hi, &count) != 3 ||
      count < 1)
    throw InvalidArgument("bad linspace spec (want min:max:count): " + spec);
  std::vector<double> v(static_cast<std::size_t>(count));
  if (count == 1) {
    v[0] = lo;
    return v;
  }
  for (long i = 0; i < count; ++i)
    v[static_cast<std::size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  return v;
}

int cmd_sweep(const SweepArgs& s) {
  const auto m = bench::parse_method(s.method);
  if (!m)
    throw InvalidArgument("sweep needs a stationary method tag, got: " +
                          s.method);
  double nu = 0.0;
  const SaddleSystem sys = build_problem(s.problem, nu);

  SweepSpec grid;
  grid.x = !s.x_lin.empty() ? linspace_spec(s.x_lin) : s.x_grid;
  grid.tau = !s.tau_lin.empty() ? linspace_spec(s.tau_lin) : s.tau_grid;
  if (grid.x.empty() || grid.tau.empty())
    throw InvalidArgument(
        "sweep needs a nonempty grid (--x-grid/--x-lin and "
        "--tau-grid/--tau-lin)");

  BChoice choice;
  switch (*m) {
    case bench::Method::gsts_i: choice.kind = BKind::schur_exact; break;
    case bench::Method::gsts_ii: choice.kind = BKind::shifted_diag; break;
    case bench::Method::gsts_iii: choice.kind = BKind::shifted_tridiag; break;
    case bench::Method::gsor_i: choice.kind = BKind::gsor_diag; break;
    case bench::Method::gsor_ii: choice.kind = BKind::gsor_tridiag; break;
  }
  const bool gsor =
      *m == bench::Method::gsor_i || *m == bench::Method::gsor_ii;

  SolverConfig cfg;
  cfg.tolerance = s.tol;
  cfg.max_iterations = s.maxit;
  const SweepResult res = parameter_sweep(sys, choice, grid, cfg);

  for (const SweepEntry& e : res.table) {
    ReportRow row;
    row.method = s.method;
    row.col_omega = gsor ? e.params.omega1 : e.params.omega2;
    row.col_tau = gsor ? e.x : e.params.tau;
    row.iterations = e.iterations;
    row.res = e.final_residual;
    row.status = e.converged ? "converged" : (e.diverged ? "diverged" : "maxit");
    if (!s.out_csv.empty())
      append_report_line(s.out_csv, csv_header(), csv_line(row));
  }
  const SweepEntry& b = res.table[res.best];
  if (gsor)
    std::printf("best: omega1 = tau = %.10g, nu_g = %.10g, IT %zu, RES %.4e\n",
                b.params.tau, b.x, b.iterations, b.final_residual);
  else
    std::printf("best: omega2 = %.10g, omega1 = tau = %.10g, IT %zu, RES %.4e\n",
                b.x, b.params.tau, b.iterations, b.final_residual);
  return 0;
}

// ---- analyze --------------------------------------------------------

struct AnalyzeArgs {
  ProblemArgs problem;
  std::string method;
  std::optional<double> omega1; // defaults to tau
  double omega2 = 1.0, tau = 1.0;
  std::optional<double> nu_g;
};

int cmd_analyze(const AnalyzeArgs& a) {
  const auto m = bench::parse_method(a.method);
  if (!m)
    throw InvalidArgument("analyze needs a stationary method tag, got: " +
                          a.method);
  double nu = 0.0;
  const SaddleSystem sys = build_problem(a.problem, nu);
  if (sys.n() > 500)
    throw InvalidArgument(
        "analyze materializes the iteration matrix densely; choose l <= 12");

  const bool gsor =
      *m == bench::Method::gsor_i || *m == bench::Method::gsor_ii;
  bench::StationaryConfig c;
  if (gsor) {
    if (!a.nu_g)
      throw InvalidArgument("--nu-g is required for the gsor methods");
    c = bench::stationary_config(*m, a.tau, *a.nu_g);
  } else {
    c = bench::stationary_config(*m, a.omega2, a.tau);
    if (a.omega1) c.params.omega1 = *a.omega1;
  }
  c.params.validate();

  const BOperator b = build_b(sys, c.choice);
  const DenseMatrix g = iteration_matrix(sys, b, c.params);
  const SpectralReport rep = check_semiconvergence(g, b.singular(), &sys);
  const RayleighRanges ranges = rayleigh_ranges(sys, b);
  const ParameterBound bound = sufficient_bound(ranges, c.params);

  std::size_t at_one = 0;
  for (const auto& ev : rep.eigenvalues)
    if (std::abs(ev - std::complex<double>(1.0, 0.0)) <= 1e-8) ++at_one;

  std::printf("iteration matrix      %zu x %zu\n", g.rows, g.cols);
  std::printf("gamma(G)              %.12g\n", rep.gamma);
  std::printf("spectral radius       %.12g\n", rep.spectral_radius);
  std::printf("eigenvalues at 1      %zu\n", at_one);
  std::printf("index-1               %s\n", rep.index_one ? "yes" : "no");
  if (rep.singular_regime)
    std::printf("null-space match      %s (max principal angle %.3e rad)\n",
                rep.nullspace_ok ? "yes" : "no", rep.max_principal_angle);
  else
    std::printf("null-space match      not applicable (B nonsingular)\n");
  if (rep.rank_gap_warning)
    std::printf("warning: a rank decision sat on a singular-value gap "
                "below 1e-6\n");
  std::printf("alpha range           [%.12g, %.12g]\n", ranges.alpha_min,
              ranges.alpha_max);
  std::printf("beta range            [%.12g, %.12g]   via %s\n",
              ranges.beta_min, ranges.beta_max,
              ranges.beta_convention.c_str());
  if (ranges.beta_alternate)
    std::printf("beta (inverse route)  [%.12g, %.12g]\n",
                ranges.beta_alternate->first, ranges.beta_alternate->second);
  std::printf("omega_tilde           %.12g\n", bound.omega_tilde);
  if (bound.tau_upper)
    std::printf("tau interval          (0, %.12g)   corner-paired over the "
                "ranges\n",
                *bound.tau_upper);
  else
    std::printf("tau interval          empty\n");
  std::printf("tau supplied          %.12g -> sufficient condition %s\n",
              c.params.tau, bound.sufficient ? "met" : "not met");
  std::printf("semi-convergent       %s (gamma < 1, index-1%s)\n",
              rep.gamma < 1.0 && rep.index_one &&
                      (!rep.singular_regime || rep.nullspace_ok)
                  ? "yes"
                  : "no",
              rep.singular_regime ? ", null spaces match" : "");
  return 0;
}

// ---- generate -------------------------------------------------------

struct GenerateArgs {
  ProblemArgs problem;
  std::string out_dir = ".";
};

int cmd_generate(const GenerateArgs& g) {
  if (!g.problem.load_dir.empty())
    throw InvalidArgument("generate does not accept --load");
  double nu = 0.0;
  Manifest manifest;
  const SaddleSystem sys = build_problem(g.problem, nu, &manifest);
  std::filesystem::create_directories(g.out_dir);
  save_problem(sys, manifest, g.out_dir);
  std::printf("wrote M.mtx, E.mtx, f.vec, manifest.txt to %s (p=%zu, q=%zu)\n",
              g.out_dir.c_str(), sys.p(), sys.q());
  return 0;
}

// ---- reproduce-tables -----------------------------------------------

struct ReproduceArgs {
  std::size_t l = 25;
  double tol = 1e-6;
  std::size_t maxit = 2000;
  std::string out_dir;
  bool timing = false;
};

int cmd_reproduce(const ReproduceArgs& ra) {
  static const double nus[] = {1.0, 0.01, 0.0001};
  bool all_converged = true;

  std::string csv_stationary, md_stationary, csv_precond, md_precond;
  if (!ra.out_dir.empty()) {
    std::filesystem::create_directories(ra.out_dir);
    const auto dir = std::filesystem::path(ra.out_dir);
    csv_stationary = (dir / "stationary.csv").string();
    md_stationary = (dir / "stationary.md").string();
    csv_precond = (dir / "preconditioned.csv").string();
    md_precond = (dir / "preconditioned.md").string();
    for (const auto& f :
         {csv_stationary, md_stationary, csv_precond, md_precond})
      std::filesystem::remove(f);
  }

  for (double nu : nus) {
    ProblemArgs pa;
    pa.l = ra.l;
    pa.nu = nu;
    double nu_out = 0.0;
    const SaddleSystem sys = build_problem(pa, nu_out);
    std::printf("== l = %zu, nu = %g ==\n", ra.l, nu);

    // stationary rows; a row missing its band is retried with the two
    // parameter columns swapped (alternate table reading) before being
    // reported as failed
    for (const auto& ref : bench::stationary_refs()) {
      if (ref.nu != nu) continue;
      SolverConfig cfg;
      cfg.tolerance = ra.tol;
      cfg.max_iterations = ra.maxit;
      const bench::Band band = bench::stationary_band(ref.method, ref.nu);
      const auto in_band = [&](const IterationReport& r) {
        return r.converged && r.iterations >= band.lo &&
               r.iterations <= band.hi;
      };

      const bench::StationaryConfig c =
          bench::stationary_config(ref.method, ref.col1, ref.col2);
      IterationReport rep = gsts_solve(sys, build_b(sys, c.choice), c.params, cfg);
      double col1 = ref.col1, col2 = ref.col2;
      bool swapped = false;
      if (!in_band(rep)) {
        const bench::StationaryConfig cs =
            bench::stationary_config(ref.method, ref.col2, ref.col1);
        IterationReport alt =
            gsts_solve(sys, build_b(sys, cs.choice), cs.params, cfg);
        if (in_band(alt) ||
            (alt.converged && !rep.converged)) {
          rep = std::move(alt);
          col1 = ref.col2;
          col2 = ref.col1;
          swapped = true;
        }
      }
      all_converged = all_converged && rep.converged;

      ReportRow row;
      row.method = bench::method_name(ref.method);
      row.col_omega = col1;
      row.col_tau = col2;
      row.iterations = rep.iterations;
      row.res = rep.final_residual;
      row.status = status_of(rep);
      if (swapped) row.status += "/swap";
      if (!in_band(rep)) row.status += "/off-band";
      if (ra.timing) row.cpu_seconds = rep.wall_seconds;
      const long diff = static_cast<long>(rep.iterations) -
                        static_cast<long>(ref.it);
      std::printf("  %-10s IT %-5zu ref %-5zu (%+ld)  RES %.4e  %s\n",
                  row.method.c_str(), rep.iterations, ref.it, diff,
                  rep.final_residual, row.status.c_str());
      emit_row(row, csv_stationary, md_stationary);
    }

    // plain gmres row
    {
      SolverConfig cfg;
      cfg.tolerance = ra.tol;
      cfg.max_iterations = ra.maxit;
      const IterationReport rep =
          gmres_solve(saddle_operator(sys), stacked_rhs(sys), {}, cfg);
      all_converged = all_converged && rep.converged;
      const bench::GmresRef* ref = nullptr;
      for (const auto& g : bench::gmres_refs())
        if (g.nu == nu) ref = &g;
      ReportRow row;
      row.method = "gmres";
      row.iterations = rep.iterations;
      row.res = rep.final_residual;
      row.status = status_of(rep);
      if (ra.timing) row.cpu_seconds = rep.wall_seconds;
      const long diff = ref ? static_cast<long>(rep.iterations) -
                                  static_cast<long>(ref->it)
                            : 0;
      std::printf("  %-10s IT %-5zu ref %-5zu (%+ld)  RES %.4e  %s\n",
                  "gmres", rep.iterations, ref ? ref->it : 0, diff,
                  rep.final_residual, row.status.c_str());
      emit_row(row, csv_stationary, md_stationary);
    }

    // preconditioned gmres(10) cells
    SolverConfig pcfg;
    pcfg.tolerance = ra.tol;
    pcfg.max_iterations = ra.maxit;
    pcfg.restart = 10;
    const double hss_alpha = bench::pick_hss_alpha(sys, pcfg);
    for (const auto& ref : bench::precond_refs()) {
      if (ref.nu != nu) continue;
      const LinearOp pre =
          bench::make_preconditioner(sys, ref.precond, nu, hss_alpha);
      const IterationReport rep =
          gmres_solve(saddle_operator(sys), stacked_rhs(sys), pre, pcfg);
      all_converged = all_converged && rep.converged;

      ReportRow row;
      row.method = "gmres+precond(" + bench::precond_name(ref.precond) + ")";
      row.restart = 10;
      if (ref.precond == bench::Precond::hss) row.alpha = hss_alpha;
      row.iterations = rep.iterations;
      row.res = rep.final_residual;
      row.status = status_of(rep);
      if (ra.timing) row.cpu_seconds = rep.wall_seconds;
      const long diff = static_cast<long>(rep.iterations) -
                        static_cast<long>(ref.it);
      std::printf("  %-26s IT %-5zu ref %-5zu (%+ld)  RES %.4e  %s\n",
                  row.method.c_str(), rep.iterations, ref.it, diff,
                  rep.final_residual, row.status.c_str());
      emit_row(row, csv_precond, md_precond);
    }
  }
  std::printf("%s\n", all_converged ? "all runs converged"
                                    : "some runs did not converge");
  return all_converged ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"GSTS saddle-point solvers and cavity benchmark driver"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* cgen = app.add_subcommand("generate",
                                  "write a cavity problem as Matrix Market "
                                  "files plus manifest");
  add_problem_options(cgen, gen.problem, true);
  cgen->add_option("--out", gen.out_dir, "output directory")->required();

  RunArgs run;
  auto* crun = app.add_subcommand("run", "run one solver experiment");
  add_problem_options(crun, run.problem, true);
  crun->add_option("--method", run.method,
                   "gsts-i|gsts-ii|gsts-iii|gsor-i|gsor-ii|gmres|"
                   "gmres+precond(tag)|qmr")
      ->required();
  auto add_param_options = [](CLI::App* cmd, auto& args) {
    cmd->add_option("--omega1", args.omega1, "omega1 (defaults to tau)");
    cmd->add_option("--omega2", args.omega2, "omega2 (gsts methods)");
    cmd->add_option("--tau", args.tau, "step parameter tau");
    cmd->add_option("--nu-g", args.nu_g, "nu_g (gsor methods)");
  };
  add_param_options(crun, run);
  crun->add_option("--alpha", run.alpha, "HSS shift (default: swept)");
  crun->add_option("--restart", run.restart, "GMRES restart (0 = none)");
  crun->add_option("--tol", run.tol, "stopping tolerance")
      ->check(CLI::PositiveNumber);
  crun->add_option("--maxit", run.maxit, "iteration cap");
  crun->add_option("--out", run.out_csv, "CSV report path (appended)");
  crun->add_option("--md", run.out_md, "markdown report path (appended)");
  crun->add_flag("--timing", run.timing,
                 "fill the CPU column (off keeps output byte-reproducible)");

  SweepArgs sweep;
  auto* csweep = app.add_subcommand(
      "sweep", "grid search over (omega2, tau) or (nu_g, tau)");
  add_problem_options(csweep, sweep.problem, true);
  csweep->add_option("--method", sweep.method, "stationary method tag")
      ->required();
  csweep->add_option("--x-grid", sweep.x_grid,
                     "x values (omega2 for gsts, nu_g for gsor)")
      ->delimiter(',');
  csweep->add_option("--x-lin", sweep.x_lin, "x linspace min:max:count");
  csweep->add_option("--tau-grid", sweep.tau_grid, "tau values")
      ->delimiter(',');
  csweep->add_option("--tau-lin", sweep.tau_lin, "tau linspace min:max:count");
  csweep->add_option("--tol", sweep.tol, "stopping tolerance")
      ->check(CLI::PositiveNumber);
  csweep->add_option("--maxit", sweep.maxit, "iteration cap per point");
  csweep->add_option("--out", sweep.out_csv, "CSV for the full grid");

  AnalyzeArgs an;
  auto* can = app.add_subcommand(
      "analyze", "spectral semi-convergence report (dense; l <= 12)");
  add_problem_options(can, an.problem, false);
  can->add_option("--method", an.method, "stationary method tag")->required();
  can->add_option("--omega1", an.omega1, "omega1");
  can->add_option("--omega2", an.omega2, "omega2");
  can->add_option("--tau", an.tau, "tau");
  can->add_option("--nu-g", an.nu_g, "nu_g (gsor methods)");

  ReproduceArgs repro;
  auto* crepro = app.add_subcommand(
      "reproduce-tables",
      "run the full cavity benchmark and diff against the reference counts");
  crepro->add_option("--l", repro.l, "grid parameter")
      ->check(CLI::Range(std::size_t{2}, std::size_t{4096}));
  crepro->add_option("--tol", repro.tol, "stopping tolerance")
      ->check(CLI::PositiveNumber);
  crepro->add_option("--maxit", repro.maxit, "iteration cap");
  crepro->add_option("--out", repro.out_dir, "directory for CSV/markdown");
  crepro->add_flag("--timing", repro.timing, "fill the CPU column");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cgen->parsed()) return cmd_generate(gen);
    if (crun->parsed()) return cmd_run(run);
    if (csweep->parsed()) return cmd_sweep(sweep);
    if (can->parsed()) return cmd_analyze(an);
    if (crepro->parsed()) return cmd_reproduce(repro);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
