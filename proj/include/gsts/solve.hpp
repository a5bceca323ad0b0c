#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gsts/problem.hpp"
#include "gsts/splitting.hpp"

namespace gsts {

// Knobs shared by the stationary iteration and GMRES.
struct SolverConfig {
  double tolerance = 1e-6;          // on the combined relative residual
  std::size_t max_iterations = 10000;
  std::size_t restart = 0;          // GMRES cycle length; 0 = unrestarted
  std::optional<Vector> initial_guess; // length n; zero vector when absent
};

struct IterationReport {
  std::size_t iterations = 0;
  bool converged = false;
  bool diverged = false;
  bool breakdown = false; // GMRES: Arnoldi breakdown before the tolerance
  double final_residual = 0.0;
  std::vector<double> residual_history; // length iterations + 1
  double wall_seconds = 0.0;
  Vector solution; // stacked (u1; u2) for saddle systems
  std::string note;
};

// Combined relative residual
//   sqrt((|f1 - M u1 - E u2|^2 + |f2 + E^T u1|^2) / (|f1|^2 + |f2|^2)).
// A zero right-hand side would divide by zero; the function then falls
// back to the absolute numerator norm (documented fallback).
double relative_residual(const SaddleSystem& sys, const Vector& u1,
                         const Vector& u2);
double relative_residual(const SaddleSystem& sys, const Vector& u); // stacked

// The stationary iteration.  Each step costs two solves with M and one
// application of B^{-1} (or B^{+} in the singular regime):
//   u2 <- u2 + tau * Bo[w1 E^T M^{-1}(f1 - E u2) + (1 - w1) E^T u1 + f2]
//   u1 <- (1 - tau) u1 + M^{-1}[E((w2 - tau) u2_old - w2 u2_new) + tau f1]
// Stops once the relative residual drops below cfg.tolerance; flags
// divergence when it exceeds 1e12.
IterationReport gsts_solve(const SaddleSystem& sys, const BOperator& b,
                           const GstsParams& params,
                           const SolverConfig& cfg = {});

using LinearOp = std::function<Vector(const Vector&)>;

// Matvec with the full block matrix [[M, E], [-E^T, 0]].
LinearOp saddle_operator(const SaddleSystem& sys);

// Restarted GMRES (modified Gram-Schmidt Arnoldi, Givens least squares)
// with optional left preconditioning.  Reported residuals are always true
// relative residuals |f - A x| / |f| of the unpreconditioned system, so
// preconditioned and plain runs are comparable.  An empty precond means
// none.  iterations counts inner steps across restarts.
IterationReport gmres_solve(const LinearOp& a, const Vector& f,
                            const LinearOp& precond,
                            const SolverConfig& cfg = {});

// Parameter sweep over (x, tau) with omega1 = tau fixed.  The x axis is
// omega2 for the GSTS kinds and nu_g for the GSOR kinds (whose omega2 is
// identically zero and whose B carries the factor tau/nu_g, so B is
// rebuilt per grid point).
struct SweepSpec {
  std::vector<double> x;
  std::vector<double> tau;
};

struct SweepEntry {
  double x = 0.0;
  GstsParams params;
  std::size_t iterations = 0;
  bool converged = false;
  bool diverged = false;
  double final_residual = 0.0;
};

struct SweepResult {
  std::vector<SweepEntry> table; // x outer, tau inner; deterministic order
  std::size_t best = 0;          // index into table
};

// Runs gsts_solve per grid point and selects the minimizer of the
// iteration count; ties break by smaller final residual, then smaller tau,
// then smaller x.  Throws NonConvergence when no grid point converges.
SweepResult parameter_sweep(const SaddleSystem& sys, const BChoice& choice,
                            const SweepSpec& grid,
                            const SolverConfig& cfg = {});

} // namespace gsts
