#pragma once

#include <cstddef>

#include "gsts/sparse.hpp"

namespace gsts {

// Singular saddle-point system
//
//   [ M   E ] [u1]   [f1]
//   [-E^T 0 ] [u2] = [f2]
//
// with M symmetric positive definite (p x p) and E (p x q, q <= p) allowed
// to be rank deficient.  The right-hand side must keep the system
// consistent; rhs_from_solution constructs one by prescribing the solution.
struct SaddleSystem {
  SparseMatrix m;
  SparseMatrix e;
  Vector f1;
  Vector f2;

  std::size_t p() const { return m.rows; }
  std::size_t q() const { return e.cols; }
  std::size_t n() const { return p() + q(); }

  // Structural checks: dimensions, symmetry of M, finite values.
  void validate() const;
};

// Lid-driven cavity on the unit square, uniform l x l mesh, h = 1/l.
struct StokesConfig {
  std::size_t l = 25;
  double nu = 1.0;
};

// Marker-and-cell discretization of the Stokes equations.
//
// Unknown layout: u-velocities on interior vertical edges ((l-1) x l,
// row-major by grid row), then v-velocities on interior horizontal edges
// (l x (l-1)), then cell pressures (l x l, row-major).  M = nu * blockdiag
// of the two 5-point velocity Laplacians with Dirichlet data eliminated
// (tangential walls enter through ghost-cell reflection); E is the discrete
// pressure gradient with entries +-1/h, so E^T is the negative divergence
// and E * ones(q) = 0.  The returned f1 carries the lid contribution
// nu * 2/h^2 on the top row of u unknowns; f2 = 0.
SaddleSystem assemble_mac_stokes(const StokesConfig& cfg);

// Overwrites (f1, f2) with the consistent right-hand side A * u_star for a
// prescribed solution u_star of length p + q.
void rhs_from_solution(SaddleSystem& sys, const Vector& u_star);

// (f1; f2) as one vector of length p + q.
Vector stacked_rhs(const SaddleSystem& sys);

// Hermitian / skew-Hermitian parts of the saddle matrix:
// H = blockdiag(M, 0), S = [[0, E], [-E^T, 0]], A = H + S.
struct HermitianSplit {
  SparseMatrix h;
  SparseMatrix s;
};
HermitianSplit split_hermitian(const SaddleSystem& sys);

// Full (p+q) x (p+q) saddle matrix in CSR form.
SparseMatrix assemble_full(const SaddleSystem& sys);

// Strict lower / upper triangular factors of the skew part:
// K_L = [[0,0],[-E^T,0]], K_U = [[0,E],[0,0]], K_L + K_U = S.
SparseMatrix k_lower(const SaddleSystem& sys);
SparseMatrix k_upper(const SaddleSystem& sys);

} // namespace gsts
