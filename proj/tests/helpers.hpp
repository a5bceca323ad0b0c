#pragma once

// Shared fixtures for the test binaries: deterministic random systems with
// a prescribed rank profile plus small dense conveniences.

#include <cstddef>
#include <functional>
#include <random>

#include "gsts/dense.hpp"
#include "gsts/problem.hpp"
#include "gsts/sparse.hpp"
#include "gsts/svd.hpp"

namespace gsts::testing {

inline DenseMatrix random_dense(std::size_t rows, std::size_t cols,
                                std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  DenseMatrix a(rows, cols);
  for (double& v : a.data) v = dist(rng);
  return a;
}

inline Vector random_vector(std::size_t n, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

// R^T R + n I: SPD with a comfortable condition number.
inline DenseMatrix random_spd_dense(std::size_t n, std::mt19937& rng) {
  const DenseMatrix r = random_dense(n, n, rng);
  DenseMatrix a = matmul(transpose(r), r);
  for (std::size_t i = 0; i < n; ++i) a(i, i) += double(n);
  return a;
}

// Orthonormalizes the columns of a in place (modified Gram-Schmidt).
inline void orthonormalize_columns(DenseMatrix& a) {
  for (std::size_t j = 0; j < a.cols; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < a.rows; ++i) s += a(i, k) * a(i, j);
      for (std::size_t i = 0; i < a.rows; ++i) a(i, j) -= s * a(i, k);
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < a.rows; ++i) nrm += a(i, j) * a(i, j);
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < a.rows; ++i) a(i, j) /= nrm;
  }
}

// p x q matrix of exact rank r with singular values in [1, 2].
inline DenseMatrix random_rank_deficient(std::size_t p, std::size_t q,
                                         std::size_t r, std::mt19937& rng) {
  DenseMatrix u = random_dense(p, r, rng);
  DenseMatrix v = random_dense(q, r, rng);
  orthonormalize_columns(u);
  orthonormalize_columns(v);
  std::uniform_real_distribution<double> sig(1.0, 2.0);
  DenseMatrix e(p, q);
  for (std::size_t k = 0; k < r; ++k) {
    const double s = sig(rng);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < q; ++j) e(i, j) += s * u(i, k) * v(j, k);
  }
  return e;
}

// Random saddle system with rank(E) = r and a consistent right-hand side
// generated from a prescribed solution.
inline SaddleSystem random_saddle(std::size_t p, std::size_t q, std::size_t r,
                                  std::mt19937& rng) {
  SaddleSystem sys;
  sys.m = from_dense(random_spd_dense(p, rng));
  sys.e = from_dense(random_rank_deficient(p, q, r, rng));
  sys.f1.assign(p, 0.0);
  sys.f2.assign(q, 0.0);
  rhs_from_solution(sys, random_vector(p + q, rng));
  sys.validate();
  return sys;
}

// Materializes a linear operator by applying it to the unit vectors.
inline DenseMatrix op_to_dense(std::size_t n,
                               const std::function<Vector(const Vector&)>& f) {
  DenseMatrix a(n, 0);
  a.cols = n;
  a.data.assign(n * n, 0.0);
  Vector e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    const Vector col = f(e);
    for (std::size_t i = 0; i < n; ++i) a(i, j) = col[i];
    e[j] = 0.0;
  }
  return a;
}

inline double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  return max_abs(add_scaled(a, -1.0, b));
}

inline DenseMatrix dense_pinv(const DenseMatrix& a) {
  return pinv_materialize(pseudo_inverse(a));
}

inline double max_abs_diff(const Vector& a, const Vector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

} // namespace gsts::testing
