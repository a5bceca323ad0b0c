#pragma once

#include <complex>
#include <vector>

#include "gsts/dense.hpp"

namespace gsts {

// Eigenvalues of a real square matrix: balancing, Householder reduction to
// Hessenberg form, Francis double-shift QR.  Sorted by descending real part,
// then descending imaginary part.  Throws NonConvergence if a QR iteration
// stalls.
std::vector<std::complex<double>> eigvals(const DenseMatrix& a);

double spectral_radius(const DenseMatrix& a);

// Largest |lambda| over eigenvalues with |lambda - 1| > one_tol; zero when
// every eigenvalue sits in the unit ball around 1.  This is the quantity
// governing convergence of a semi-convergent stationary iteration.
double pseudo_spectral_radius(const DenseMatrix& a, double one_tol = 1e-8);
double pseudo_spectral_radius(const std::vector<std::complex<double>>& eigs,
                              double one_tol = 1e-8);

} // namespace gsts
