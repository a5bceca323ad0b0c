#include "gsts/solve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "gsts/errors.hpp"
#include "gsts/kernels.hpp"

namespace gsts {

namespace {

constexpr double kDivergence = 1e12;

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

Vector starting_point(const SolverConfig& cfg, std::size_t n,
                      const char* who) {
  if (!cfg.initial_guess) return Vector(n, 0.0);
  if (cfg.initial_guess->size() != n)
    throw InvalidArgument(std::string(who) + ": initial guess has wrong size");
  return *cfg.initial_guess;
}

} // namespace

double relative_residual(const SaddleSystem& sys, const Vector& u1,
                         const Vector& u2) {
  const std::size_t p = sys.p(), q = sys.q();
  if (u1.size() != p || u2.size() != q)
    throw InvalidArgument("relative_residual: size mismatch");
  Vector r1 = matvec(sys.m, u1);
  const Vector eu2 = matvec(sys.e, u2);
  for (std::size_t i = 0; i < p; ++i) r1[i] = sys.f1[i] - r1[i] - eu2[i];
  Vector r2 = matvec_transpose(sys.e, u1);
  for (std::size_t i = 0; i < q; ++i) r2[i] = sys.f2[i] + r2[i];
  const double num = std::sqrt(kernels::dot(p, r1.data(), r1.data()) +
                               kernels::dot(q, r2.data(), r2.data()));
  const double den = std::sqrt(kernels::dot(p, sys.f1.data(), sys.f1.data()) +
                               kernels::dot(q, sys.f2.data(), sys.f2.data()));
  if (den == 0.0) return num; // absolute fallback for a zero right-hand side
  return num / den;
}

double relative_residual(const SaddleSystem& sys, const Vector& u) {
  if (u.size() != sys.n())
    throw InvalidArgument("relative_residual: size mismatch");
  const Vector u1(u.begin(), u.begin() + sys.p());
  const Vector u2(u.begin() + sys.p(), u.end());
  return relative_residual(sys, u1, u2);
}

IterationReport gsts_solve(const SaddleSystem& sys, const BOperator& b,
                           const GstsParams& params, const SolverConfig& cfg) {
  params.validate();
  if (!(cfg.tolerance > 0.0))
    throw InvalidArgument("gsts_solve: tolerance must be positive");
  if (b.size() != sys.q())
    throw InvalidArgument("gsts_solve: B size does not match the system");
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t p = sys.p(), q = sys.q();
  const double w1 = params.omega1, w2 = params.omega2, tau = params.tau;

  const SpdFactor m_chol = SpdFactor::compute(sys.m);

  const Vector u0 = starting_point(cfg, p + q, "gsts_solve");
  Vector u1(u0.begin(), u0.begin() + p);
  Vector u2(u0.begin() + p, u0.end());

  IterationReport rep;
  double res = relative_residual(sys, u1, u2);
  rep.residual_history.push_back(res);

  while (res >= cfg.tolerance && rep.iterations < cfg.max_iterations) {
    // u2 update
    Vector g = matvec(sys.e, u2);
    for (std::size_t i = 0; i < p; ++i) g[i] = sys.f1[i] - g[i];
    const Vector w = m_chol.solve(g);
    Vector t = matvec_transpose(sys.e, w);
    kernels::scal(q, w1, t.data());
    if (w1 != 1.0) {
      const Vector etu1 = matvec_transpose(sys.e, u1);
      kernels::axpy(q, 1.0 - w1, etu1.data(), t.data());
    }
    kernels::axpy(q, 1.0, sys.f2.data(), t.data());
    Vector u2_new = u2;
    const Vector bt = b.apply_inverse(t);
    kernels::axpy(q, tau, bt.data(), u2_new.data());

    // u1 update
    Vector c(q);
    for (std::size_t i = 0; i < q; ++i)
      c[i] = (w2 - tau) * u2[i] - w2 * u2_new[i];
    Vector s = matvec(sys.e, c);
    kernels::axpy(p, tau, sys.f1.data(), s.data());
    const Vector ms = m_chol.solve(s);
    kernels::scal(p, 1.0 - tau, u1.data());
    kernels::axpy(p, 1.0, ms.data(), u1.data());
    u2 = std::move(u2_new);

    ++rep.iterations;
    res = relative_residual(sys, u1, u2);
    rep.residual_history.push_back(res);
    if (!(res <= kDivergence)) { // catches NaN as well
      rep.diverged = true;
      rep.note = "residual exceeded the divergence threshold";
      break;
    }
  }

  rep.converged = res < cfg.tolerance;
  rep.final_residual = res;
  rep.solution.resize(p + q);
  std::copy(u1.begin(), u1.end(), rep.solution.begin());
  std::copy(u2.begin(), u2.end(), rep.solution.begin() + p);
  rep.wall_seconds = elapsed_since(t0);
  return rep;
}

LinearOp saddle_operator(const SaddleSystem& sys) {
  SparseMatrix a = assemble_full(sys);
  return [a = std::move(a)](const Vector& x) { return matvec(a, x); };
}

namespace {

// One GMRES cycle of at most m steps.  x is updated in place; returns the
// true relative residual after the cycle and advances the iteration count
// and history.  done/breakdown are set when the cycle ends the solve.
struct CycleState {
  bool done = false;
  bool breakdown = false;
};

CycleState gmres_cycle(const LinearOp& a, const LinearOp& precond,
                       const Vector& f, double fnorm, std::size_t m,
                       double tol, std::size_t max_total, Vector& x,
                       IterationReport& rep) {
  const std::size_t n = f.size();
  CycleState st;

  auto apply_op = [&](const Vector& v) {
    Vector av = a(v);
    return precond ? precond(av) : av;
  };
  auto true_res = [&](const Vector& cand) {
    const Vector ac = a(cand);
    Vector r = f;
    kernels::axpy(n, -1.0, ac.data(), r.data());
    const double num = kernels::nrm2(n, r.data());
    return fnorm == 0.0 ? num : num / fnorm;
  };

  // preconditioned initial residual of this cycle
  Vector r0 = a(x);
  for (std::size_t i = 0; i < n; ++i) r0[i] = f[i] - r0[i];
  if (precond) r0 = precond(r0);
  const double beta = kernels::nrm2(n, r0.data());
  if (beta == 0.0) { // exact solution of the preconditioned system
    rep.converged = true_res(x) < tol;
    st.done = true;
    st.breakdown = !rep.converged; // singular preconditioner annihilated r
    return st;
  }

  std::vector<Vector> v; // Arnoldi basis
  v.reserve(m + 1);
  Vector first = r0;
  kernels::scal(n, 1.0 / beta, first.data());
  v.push_back(std::move(first));

  // Hessenberg columns after Givens, rotations, residual of the small LS
  std::vector<Vector> hcols;
  std::vector<double> cs, sn, g;
  g.push_back(beta);

  auto form_candidate = [&](std::size_t k) {
    // back substitution on the k x k triangle
    Vector y(k);
    for (std::size_t ii = k; ii-- > 0;) {
      double s = g[ii];
      for (std::size_t jj = ii + 1; jj < k; ++jj) s -= hcols[jj][ii] * y[jj];
      // a zero pivot marks a flat least-squares direction; contribute nothing
      y[ii] = hcols[ii][ii] != 0.0 ? s / hcols[ii][ii] : 0.0;
    }
    Vector cand = x;
    for (std::size_t jj = 0; jj < k; ++jj)
      kernels::axpy(n, y[jj], v[jj].data(), cand.data());
    return cand;
  };

  for (std::size_t j = 0; j < m && rep.iterations < max_total; ++j) {
    Vector w = apply_op(v[j]);
    const double wnorm0 = kernels::nrm2(n, w.data());
    Vector h(j + 2, 0.0);
    for (std::size_t i = 0; i <= j; ++i) {
      const double hij = kernels::dot(n, v[i].data(), w.data());
      h[i] = hij;
      kernels::axpy(n, -hij, v[i].data(), w.data());
    }
    double wnorm = kernels::nrm2(n, w.data());
    if (wnorm < 0.7071 * wnorm0) { // reorthogonalize once
      for (std::size_t i = 0; i <= j; ++i) {
        const double c = kernels::dot(n, v[i].data(), w.data());
        h[i] += c;
        kernels::axpy(n, -c, v[i].data(), w.data());
      }
      wnorm = kernels::nrm2(n, w.data());
    }
    h[j + 1] = wnorm;
    const bool happy = wnorm <= 1e-14 * std::max(1.0, wnorm0);

    // apply previous rotations, then the new one
    for (std::size_t i = 0; i < j; ++i) {
      const double t = cs[i] * h[i] + sn[i] * h[i + 1];
      h[i + 1] = -sn[i] * h[i] + cs[i] * h[i + 1];
      h[i] = t;
    }
    const double denom = std::hypot(h[j], h[j + 1]);
    double c = 1.0, s = 0.0;
    if (denom > 0.0) {
      c = h[j] / denom;
      s = h[j + 1] / denom;
    }
    cs.push_back(c);
    sn.push_back(s);
    h[j] = denom;
    h[j + 1] = 0.0;
    const double gj = g[j];
    g[j] = c * gj;
    g.push_back(-s * gj);
    hcols.push_back(std::move(h));

    ++rep.iterations;
    const Vector cand = form_candidate(j + 1);
    const double res = true_res(cand);
    rep.residual_history.push_back(res);

    if (res < tol) {
      x = cand;
      rep.converged = true;
      st.done = true;
      return st;
    }
    if (!(res <= kDivergence)) {
      x = cand;
      rep.diverged = true;
      rep.note = "residual exceeded the divergence threshold";
      st.done = true;
      return st;
    }
    if (happy) {
      // invariant Krylov subspace reached without meeting the tolerance
      x = cand;
      st.breakdown = true;
      st.done = true;
      return st;
    }
    if (j + 1 < m && rep.iterations < max_total) {
      kernels::scal(n, 1.0 / wnorm, w.data());
      v.push_back(std::move(w));
    } else {
      x = cand; // cycle or budget exhausted; keep the updated iterate
    }
  }
  return st;
}

} // namespace

IterationReport gmres_solve(const LinearOp& a, const Vector& f,
                            const LinearOp& precond, const SolverConfig& cfg) {
  if (!a) throw InvalidArgument("gmres_solve: operator is empty");
  if (!(cfg.tolerance > 0.0))
    throw InvalidArgument("gmres_solve: tolerance must be positive");
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = f.size();
  Vector x = starting_point(cfg, n, "gmres_solve");

  IterationReport rep;
  const double fnorm = kernels::nrm2(n, f.data());
  {
    const Vector ax = a(x);
    Vector r = f;
    kernels::axpy(n, -1.0, ax.data(), r.data());
    const double num = kernels::nrm2(n, r.data());
    rep.residual_history.push_back(fnorm == 0.0 ? num : num / fnorm);
  }
  double res = rep.residual_history.back();

  const std::size_t m =
      cfg.restart == 0 ? cfg.max_iterations : cfg.restart;
  while (res >= cfg.tolerance && rep.iterations < cfg.max_iterations) {
    const CycleState st = gmres_cycle(a, precond, f, fnorm, m, cfg.tolerance,
                                      cfg.max_iterations, x, rep);
    res = rep.residual_history.back();
    if (st.breakdown) {
      rep.breakdown = true;
      rep.note = "Arnoldi breakdown before reaching the tolerance";
      break;
    }
    if (st.done) break;
  }

  rep.converged = res < cfg.tolerance;
  rep.final_residual = res;
  rep.solution = std::move(x);
  rep.wall_seconds = elapsed_since(t0);
  return rep;
}

SweepResult parameter_sweep(const SaddleSystem& sys, const BChoice& choice,
                            const SweepSpec& grid, const SolverConfig& cfg) {
  if (grid.x.empty() || grid.tau.empty())
    throw InvalidArgument("parameter_sweep: empty grid");
  const bool gsor = choice.kind == BKind::gsor_diag ||
                    choice.kind == BKind::gsor_tridiag;

  std::optional<BOperator> fixed_b;
  if (!gsor) fixed_b = build_b(sys, choice);

  SweepResult out;
  out.table.reserve(grid.x.size() * grid.tau.size());
  bool have_best = false;
  for (double x : grid.x) {
    for (double tau : grid.tau) {
      SweepEntry e;
      e.x = x;
      e.params.tau = tau;
      e.params.omega1 = tau; // the sweep plane fixes omega1 = tau
      e.params.omega2 = gsor ? 0.0 : x;
      IterationReport rep;
      if (gsor) {
        BChoice c = choice;
        c.scale = tau / x; // x is nu_g here
        rep = gsts_solve(sys, build_b(sys, c), e.params, cfg);
      } else {
        rep = gsts_solve(sys, *fixed_b, e.params, cfg);
      }
      e.iterations = rep.iterations;
      e.converged = rep.converged;
      e.diverged = rep.diverged;
      e.final_residual = rep.final_residual;
      out.table.push_back(e);

      if (e.converged) {
        if (!have_best) {
          out.best = out.table.size() - 1;
          have_best = true;
        } else {
          const SweepEntry& b = out.table[out.best];
          const bool better =
              e.iterations != b.iterations ? e.iterations < b.iterations
              : e.final_residual != b.final_residual
                  ? e.final_residual < b.final_residual
              : e.params.tau != b.params.tau ? e.params.tau < b.params.tau
                                             : e.x < b.x;
          if (better) out.best = out.table.size() - 1;
        }
      }
    }
  }
  if (!have_best) {
    std::ostringstream msg;
    msg << "parameter_sweep: no grid point converged (x in [" << grid.x.front()
        << ", " << grid.x.back() << "], tau in [" << grid.tau.front() << ", "
        << grid.tau.back() << "], " << out.table.size() << " points)";
    throw NonConvergence(msg.str());
  }
  return out;
}

} // namespace gsts
