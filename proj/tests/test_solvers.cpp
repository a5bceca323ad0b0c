#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gsts/cholesky.hpp"
#include "gsts/errors.hpp"
#include "gsts/problem.hpp"
#include "gsts/report.hpp"
#include "gsts/solve.hpp"
#include "gsts/splitting.hpp"

#include "helpers.hpp"

using namespace gsts;
using namespace gsts::testing;

namespace {

// Runs k steps of the dense matrix-form recurrence
//   u <- u - tau * B(w1,w2)^o (A u - f)
// with the preconditioner action materialized column by column.
Vector dense_recurrence(const SaddleSystem& sys, const BOperator& b,
                        const GstsParams& prm, std::size_t steps) {
  const std::size_t n = sys.n();
  const GstsPreconditioner pre(sys, b, prm.omega1, prm.omega2);
  const DenseMatrix x =
      op_to_dense(n, [&](const Vector& r) { return pre.apply(r); });
  const DenseMatrix a = to_dense(assemble_full(sys));
  const Vector f = stacked_rhs(sys);

  Vector u(n, 0.0);
  for (std::size_t k = 0; k < steps; ++k) {
    Vector r = matvec(a, u);
    for (std::size_t i = 0; i < n; ++i) r[i] -= f[i];
    const Vector z = matvec(x, r);
    for (std::size_t i = 0; i < n; ++i) u[i] -= prm.tau * z[i];
  }
  return u;
}

SolverConfig fixed_steps(std::size_t k) {
  SolverConfig cfg;
  cfg.tolerance = 1e-300; // unreachable: run exactly k steps
  cfg.max_iterations = k;
  return cfg;
}

} // namespace

TEST_CASE("relative residual against a hand-computed value") {
  SaddleSystem sys;
  sys.m = from_triplets(2, 2, {{0, 0, 2.0}, {1, 1, 4.0}});
  sys.e = from_triplets(2, 1, {{0, 0, 1.0}, {1, 0, -1.0}});
  sys.f1 = {1.0, 2.0};
  sys.f2 = {3.0};
  const Vector u1 = {1.0, 0.5};
  const Vector u2 = {-1.0};

  // r1 = f1 - M u1 - E u2 = (0, 1), r2 = f2 + E^T u1 = (3.5)
  const double num = std::sqrt(0.0 + 1.0 + 3.5 * 3.5);
  const double den = std::sqrt(1.0 + 4.0 + 9.0);
  CHECK(relative_residual(sys, u1, u2) == doctest::Approx(num / den).epsilon(1e-15));

  const Vector stacked = {1.0, 0.5, -1.0};
  CHECK(relative_residual(sys, stacked) ==
        doctest::Approx(num / den).epsilon(1e-15));

  // zero right-hand side falls back to the absolute norm;
  // r1 = -M u1 - E u2 = (-1, -3), r2 = E^T u1 = 0.5
  sys.f1 = {0.0, 0.0};
  sys.f2 = {0.0};
  const double abs_res = relative_residual(sys, u1, u2);
  CHECK(abs_res == doctest::Approx(std::sqrt(1.0 + 9.0 + 0.25)));
}

TEST_CASE("zero right-hand side converges in zero iterations") {
  SaddleSystem sys = assemble_mac_stokes({3, 1.0});
  sys.f1.assign(sys.p(), 0.0);
  sys.f2.assign(sys.q(), 0.0);
  const BOperator b = build_b(sys, {BKind::shifted_diag});
  const IterationReport rep = gsts_solve(sys, b, {1.0, 1.0, 0.9});
  CHECK(rep.converged);
  CHECK(rep.iterations == 0);
  CHECK(rep.final_residual == 0.0);
  CHECK(rep.residual_history.size() == 1);
}

TEST_CASE("exact solutions are fixed points") {
  std::mt19937 rng(201);
  SaddleSystem sys = assemble_mac_stokes({3, 0.01});
  const Vector u_star = random_vector(sys.n(), rng);
  rhs_from_solution(sys, u_star);

  const BOperator b = build_b(sys, {BKind::shifted_diag});
  SolverConfig cfg;
  cfg.initial_guess = u_star;

  // already converged on entry
  const IterationReport rep = gsts_solve(sys, b, {0.9, 1.1, 0.8}, cfg);
  CHECK(rep.converged);
  CHECK(rep.iterations == 0);
  CHECK(max_abs_diff(rep.solution, u_star) == 0.0);

  // one forced step stays put
  SolverConfig one = fixed_steps(1);
  one.initial_guess = u_star;
  const IterationReport step = gsts_solve(sys, b, {0.9, 1.1, 0.8}, one);
  CHECK(step.iterations == 1);
  double scale = 0.0;
  for (double v : u_star) scale = std::max(scale, std::abs(v));
  CHECK(max_abs_diff(step.solution, u_star) <= 1e-11 * scale);
}

TEST_CASE("stepwise iterates match the dense matrix-form recurrence") {
  std::mt19937 rng(202);
  for (std::size_t l : {std::size_t(2), std::size_t(3)}) {
    SaddleSystem sys = assemble_mac_stokes({l, 0.01});
    rhs_from_solution(sys, random_vector(sys.n(), rng));

    // definite and pseudoinverse regimes
    for (BKind kind : {BKind::shifted_diag, BKind::schur_exact}) {
      CAPTURE(l);
      CAPTURE(b_kind_name(kind));
      const BOperator b = build_b(sys, {kind});
      const GstsParams prm{0.8, 1.2, 0.9};
      const IterationReport rep = gsts_solve(sys, b, prm, fixed_steps(10));
      REQUIRE(rep.iterations == 10);
      const Vector want = dense_recurrence(sys, b, prm, 10);
      double scale = 0.0;
      for (double v : want) scale = std::max(scale, std::abs(v));
      CHECK(max_abs_diff(rep.solution, want) <= 1e-11 * std::max(1.0, scale));
    }
  }
}

TEST_CASE("gsor split is reproduced by an independent recurrence") {
  std::mt19937 rng(203);
  SaddleSystem sys = assemble_mac_stokes({3, 0.01});
  rhs_from_solution(sys, random_vector(sys.n(), rng));
  const std::size_t p = sys.p(), q = sys.q();

  const double w = 0.9, nu_g = 0.7;
  BChoice choice{BKind::gsor_diag, w / nu_g, {}};
  const BOperator b = build_b(sys, choice);

  // reference recurrence:
  //   u1 <- (1-w) u1 + w M^{-1} (f1 - E u2)
  //   u2 <- u2 + nu_g Q^{-1} (E^T u1_new + f2),  Q = I + E^T diag(M)^{-1} E
  const SpdFactor m_chol = SpdFactor::compute(sys.m);
  SparseMatrix qmat = normal_product_diag(sys.e, diagonal(sys.m));
  qmat = add(1.0, qmat, 1.0, sparse_identity(q));
  const DenseCholesky q_chol = DenseCholesky::compute(to_dense(qmat));

  Vector u1(p, 0.0), u2(q, 0.0);
  for (std::size_t step = 1; step <= 15; ++step) {
    Vector r = matvec(sys.e, u2);
    for (std::size_t i = 0; i < p; ++i) r[i] = sys.f1[i] - r[i];
    const Vector mr = m_chol.solve(r);
    for (std::size_t i = 0; i < p; ++i) u1[i] = (1.0 - w) * u1[i] + w * mr[i];

    Vector t = matvec_transpose(sys.e, u1);
    for (std::size_t i = 0; i < q; ++i) t[i] += sys.f2[i];
    const Vector qt = q_chol.solve(t);
    for (std::size_t i = 0; i < q; ++i) u2[i] += nu_g * qt[i];

    const IterationReport rep =
        gsts_solve(sys, b, {w, 0.0, w}, fixed_steps(step));
    REQUIRE(rep.iterations == step);
    Vector ref(p + q);
    std::copy(u1.begin(), u1.end(), ref.begin());
    std::copy(u2.begin(), u2.end(), ref.begin() + p);
    CHECK(max_abs_diff(rep.solution, ref) <= 1e-12 * double(step));
  }
}

TEST_CASE("converged runs satisfy the residual contract") {
  std::mt19937 rng(204);
  SaddleSystem sys = assemble_mac_stokes({4, 1.0});
  rhs_from_solution(sys, random_vector(sys.n(), rng));

  const BOperator b = build_b(sys, {BKind::schur_exact});
  const IterationReport rep = gsts_solve(sys, b, {1.0, 1.0, 1.0});
  REQUIRE(rep.converged);
  CHECK(rep.iterations > 0);
  CHECK(rep.final_residual < 1e-6);
  CHECK(rep.residual_history.size() == rep.iterations + 1);
  CHECK(rep.residual_history.back() == rep.final_residual);
  // the reported solution really solves the system
  CHECK(relative_residual(sys, rep.solution) ==
        doctest::Approx(rep.final_residual).epsilon(1e-12));

  // hitting the iteration cap leaves converged unset
  const IterationReport capped = gsts_solve(sys, b, {1.0, 1.0, 1.0}, fixed_steps(2));
  CHECK(!capped.converged);
  CHECK(capped.iterations == 2);
}

TEST_CASE("divergence is detected and flagged") {
  SaddleSystem sys = assemble_mac_stokes({3, 1.0});
  std::mt19937 rng(205);
  rhs_from_solution(sys, random_vector(sys.n(), rng));
  const BOperator b = build_b(sys, {BKind::schur_exact});

  // tau = 5 puts the iteration far outside the convergence interval
  const IterationReport rep = gsts_solve(sys, b, {1.0, 1.0, 5.0});
  CHECK(rep.diverged);
  CHECK(!rep.converged);
  CHECK(!rep.note.empty());
  CHECK(rep.iterations < 10000);
}

TEST_CASE("solver input validation") {
  std::mt19937 rng(206);
  const SaddleSystem sys = random_saddle(8, 5, 3, rng);
  const BOperator b = build_b(sys, {BKind::shifted_diag});

  SolverConfig bad_tol;
  bad_tol.tolerance = 0.0;
  CHECK_THROWS_AS(gsts_solve(sys, b, {1.0, 1.0, 1.0}, bad_tol), InvalidArgument);

  SolverConfig bad_guess;
  bad_guess.initial_guess = Vector(3, 0.0);
  CHECK_THROWS_AS(gsts_solve(sys, b, {1.0, 1.0, 1.0}, bad_guess), InvalidArgument);

  const SaddleSystem other = random_saddle(8, 4, 2, rng);
  const BOperator wrong = build_b(other, {BKind::shifted_diag});
  CHECK_THROWS_AS(gsts_solve(sys, wrong, {1.0, 1.0, 1.0}), InvalidArgument);

  GstsParams bad{0.0, 0.0, 1.0};
  CHECK_THROWS_AS(gsts_solve(sys, b, bad), InvalidArgument);
}

TEST_CASE("gmres solves identity and small dense systems") {
  std::mt19937 rng(207);
  const std::size_t n = 12;

  LinearOp identity = [](const Vector& x) { return x; };
  const Vector f = random_vector(n, rng);
  const IterationReport rep = gmres_solve(identity, f, nullptr);
  CHECK(rep.converged);
  CHECK(rep.iterations == 1);
  CHECK(max_abs_diff(rep.solution, f) <= 1e-12);

  // full termination within n steps on a general system
  const DenseMatrix a = random_spd_dense(n, rng);
  LinearOp op = [&](const Vector& x) { return matvec(a, x); };
  SolverConfig cfg;
  cfg.tolerance = 1e-12;
  const Vector f2 = random_vector(n, rng);
  const IterationReport dense_rep = gmres_solve(op, f2, nullptr, cfg);
  CHECK(dense_rep.converged);
  CHECK(dense_rep.iterations <= n);
  const Vector want = matvec(gauss_jordan_inverse(a), f2);
  CHECK(max_abs_diff(dense_rep.solution, want) <= 1e-8);

  // an exact-inverse preconditioner collapses the iteration
  const DenseMatrix ai = gauss_jordan_inverse(a);
  LinearOp pre = [&](const Vector& x) { return matvec(ai, x); };
  const IterationReport pre_rep = gmres_solve(op, f2, pre, cfg);
  CHECK(pre_rep.converged);
  CHECK(pre_rep.iterations <= 2);
}

TEST_CASE("gmres restart cycles reach the same solution") {
  std::mt19937 rng(208);
  SaddleSystem sys = assemble_mac_stokes({3, 1.0});
  rhs_from_solution(sys, random_vector(sys.n(), rng));
  const Vector f = stacked_rhs(sys);
  LinearOp a = saddle_operator(sys);

  SolverConfig plain;
  plain.tolerance = 1e-8;
  const IterationReport full = gmres_solve(a, f, nullptr, plain);
  REQUIRE(full.converged);

  SolverConfig restarted = plain;
  restarted.restart = 5;
  const IterationReport cyc = gmres_solve(a, f, nullptr, restarted);
  REQUIRE(cyc.converged);
  CHECK(cyc.iterations >= full.iterations);
  CHECK(relative_residual(sys, cyc.solution) <= 1e-8);
}

TEST_CASE("gmres reports breakdown on inconsistent singular systems") {
  // A = diag(1, 1, 0), f = e3: no solution, the Krylov space saturates
  LinearOp a = [](const Vector& x) {
    Vector y = x;
    y[2] = 0.0;
    return y;
  };
  const Vector f = {0.0, 0.0, 1.0};
  const IterationReport rep = gmres_solve(a, f, nullptr);
  CHECK(!rep.converged);
  CHECK(rep.breakdown);

  // zero right-hand side: immediate exit
  const Vector zero(3, 0.0);
  const IterationReport z = gmres_solve(a, zero, nullptr);
  CHECK(z.converged);
  CHECK(z.iterations == 0);
}

TEST_CASE("parameter sweep picks the grid minimizer") {
  std::mt19937 rng(209);
  SaddleSystem sys = assemble_mac_stokes({3, 0.01});
  rhs_from_solution(sys, random_vector(sys.n(), rng));

  SweepSpec grid;
  grid.x = {0.6, 1.0, 1.4};   // omega2
  grid.tau = {0.5, 0.9, 1.2}; // omega1 = tau
  SolverConfig cfg;
  cfg.max_iterations = 400;

  BChoice choice{BKind::shifted_diag};
  const SweepResult sweep = parameter_sweep(sys, choice, grid, cfg);
  REQUIRE(sweep.table.size() == 9);
  REQUIRE(sweep.best < sweep.table.size());

  // order: x outer, tau inner
  for (std::size_t ix = 0; ix < 3; ++ix)
    for (std::size_t it = 0; it < 3; ++it) {
      const SweepEntry& e = sweep.table[ix * 3 + it];
      CHECK(e.x == grid.x[ix]);
      CHECK(e.params.tau == grid.tau[it]);
      CHECK(e.params.omega1 == grid.tau[it]);
      CHECK(e.params.omega2 == grid.x[ix]);
    }

  // every entry re-runs to the recorded result; best is the minimizer
  const SweepEntry& best = sweep.table[sweep.best];
  REQUIRE(best.converged);
  for (const SweepEntry& e : sweep.table) {
    const IterationReport rerun =
        gsts_solve(sys, build_b(sys, choice), e.params, cfg);
    CHECK(rerun.converged == e.converged);
    CHECK(rerun.iterations == e.iterations);
    if (e.converged) {
      CHECK(e.iterations >= best.iterations);
      if (e.iterations == best.iterations) {
        // ties break by residual, then smaller tau, then smaller x
        const bool is_best = &e == &best;
        if (!is_best) {
          const bool later =
              std::make_tuple(e.final_residual, e.params.tau, e.x) >=
              std::make_tuple(best.final_residual, best.params.tau, best.x);
          CHECK(later);
        }
      }
    }
  }

  // gsor kinds rebuild B per grid point with scale tau / x
  SweepSpec gsor_grid;
  gsor_grid.x = {0.5, 0.8}; // nu_g
  gsor_grid.tau = {0.7};
  BChoice gsor{BKind::gsor_diag};
  const SweepResult gs = parameter_sweep(sys, gsor, gsor_grid, cfg);
  REQUIRE(gs.table.size() == 2);
  for (const SweepEntry& e : gs.table) {
    CHECK(e.params.omega2 == 0.0);
    BChoice rebuilt{BKind::gsor_diag, e.params.tau / e.x, {}};
    const IterationReport rerun =
        gsts_solve(sys, build_b(sys, rebuilt), e.params, cfg);
    CHECK(rerun.iterations == e.iterations);
  }

  // nothing converges in one step: the sweep refuses to pick a winner
  SolverConfig strangled;
  strangled.max_iterations = 1;
  CHECK_THROWS_AS(parameter_sweep(sys, choice, grid, strangled), NonConvergence);
}

TEST_CASE("csv rows round trip exactly") {
  ReportRow row;
  row.method = "gsts-ii, tuned"; // comma forces quoting
  row.col_omega = 0.98;
  row.col_tau = 1.0 / 3.0;
  row.alpha = std::nullopt;
  row.restart = 10;
  row.iterations = 42;
  row.cpu_seconds = std::nullopt;
  row.res = 7.3e-7;
  row.status = "converged";

  const std::string line = csv_line(row);
  CHECK(line.find("\"gsts-ii, tuned\"") != std::string::npos);
  CHECK(line.substr(line.size() - 2) == "\r\n");

  const ReportRow back = parse_csv_line(line);
  CHECK(back.method == row.method);
  CHECK(back.col_omega == row.col_omega);
  CHECK(back.col_tau == row.col_tau);
  CHECK(!back.alpha.has_value());
  CHECK(back.restart == row.restart);
  CHECK(back.iterations == row.iterations);
  CHECK(!back.cpu_seconds.has_value());
  CHECK(back.res == row.res);
  CHECK(back.status == row.status);

  const std::string header = csv_header();
  CHECK(header.substr(header.size() - 2) == "\r\n");

  // markdown columns: method, omega, tau, IT, CPU, RES
  const std::string md = markdown_line(row);
  CHECK(md.find("| gsts-ii, tuned |") != std::string::npos);
  CHECK(md.find("| 42 |") != std::string::npos);
}
