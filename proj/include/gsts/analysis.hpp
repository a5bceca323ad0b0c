#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gsts/dense.hpp"
#include "gsts/problem.hpp"
#include "gsts/splitting.hpp"

namespace gsts {

// Spectral verdict on an iteration matrix G.  Semi-convergence needs
// gamma < 1, index_one, and (singular-B regime) the null-space condition.
struct SpectralReport {
  double gamma = 0.0;            // largest |lambda| away from lambda = 1
  double spectral_radius = 0.0;
  bool index_one = false;        // rank(I - G) == rank((I - G)^2)
  bool singular_regime = false;
  bool nullspace_ok = true;      // null(B(w1,w2)^+ A) == null(A)
  double max_principal_angle = 0.0; // radians, between those null spaces
  bool rank_gap_warning = false; // sigma gap at a rank cut fell below 1e-6
  std::vector<std::complex<double>> eigenvalues;
};

// Extreme Rayleigh quotients of the reduced quantities entering the
// sufficient parameter conditions.  alpha comes from Sigma_r (U1^T M^{-1}
// U1) Sigma_r; beta from V1^T B V1 (which in the Schur-complement regime
// equals Sigma_r (U1^T P^{-1} U1) Sigma_r).  beta_alternate carries the
// other reduction convention (V1^T B^{-1} V1)^{-1}, recorded for
// comparison; it needs B nonsingular.
struct RayleighRanges {
  double alpha_min = 0.0, alpha_max = 0.0;
  double beta_min = 0.0, beta_max = 0.0;
  std::optional<std::pair<double, double>> beta_alternate;
  std::string beta_convention;
};

// Sufficient-condition verdict for one parameter triple.  The tau interval
// is (0, tau_upper); sufficient means tau lies strictly inside the
// interval intersected over the four corner pairings of the ranges.
struct ParameterBound {
  double omega_tilde = 0.0;
  double alpha_min = 0.0, alpha_max = 0.0;
  double beta_min = 0.0, beta_max = 0.0;
  std::optional<double> tau_upper;
  bool sufficient = false;
};

// G = I - tau * B(w1,w2)^o * A materialized column by column through the
// preconditioner (o is inverse or pseudoinverse per regime).  Guarded to
// p + q <= 500.
DenseMatrix iteration_matrix(const SaddleSystem& sys, const BOperator& b,
                             const GstsParams& params);
DenseMatrix iteration_matrix(const SaddleSystem& sys, const BChoice& choice,
                             const GstsParams& params);

// gamma, spectral radius, index-1 test, and (singular regime, which needs
// the system) the null-space comparison via principal angles < 1e-6 rad.
SpectralReport check_semiconvergence(const DenseMatrix& g,
                                     bool singular_regime,
                                     const SaddleSystem* sys = nullptr);

RayleighRanges rayleigh_ranges(const SaddleSystem& sys, const BOperator& b);
RayleighRanges rayleigh_ranges(const SaddleSystem& sys, const BChoice& choice);

// Upper end of the sufficient tau interval (0, upper) for one (alpha,
// beta) pair, or nullopt when omega_tilde >= (alpha + beta) / alpha.
std::optional<double> tau_upper(double alpha, double beta, double omega1,
                                double omega2);

// Conservative corner-paired interval over alpha_range x beta_range plus
// the verdict for params.tau.
ParameterBound sufficient_bound(const RayleighRanges& r,
                                const GstsParams& params);

// Unitary reduction to the nonsingular problem: M_hat = U^T M U and
// E_r = (Sigma_r; 0) from the SVD E = U Sigma V^T, right-hand side rotated
// accordingly and truncated to the first r pressure components.  The
// reduced iteration matrix carries every eigenvalue of G except q - r
// ones pinned at 1.
struct ReducedSystem {
  SaddleSystem sys; // p + r unknowns, full-column-rank E_r
  DenseMatrix u;    // p x p
  DenseMatrix v;    // q x q
  Vector sigma;     // singular values of E, descending
  std::size_t rank = 0;
};
ReducedSystem reduced_system(const SaddleSystem& sys);

// Largest principal angle (radians) between the column spans of two
// orthonormal bases with the same column count.
double max_principal_angle(const DenseMatrix& q1, const DenseMatrix& q2);

} // namespace gsts
