#pragma once

#include <cstddef>
#include <vector>

#include "gsts/dense.hpp"

namespace gsts {

// Compressed sparse row matrix.
//
// Invariants (checked by validate()): row_ptr has rows+1 monotone entries,
// column indices are strictly increasing within each row, and all stored
// values are finite.
struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> row_ptr;  // size rows+1
  std::vector<std::size_t> col_idx;
  std::vector<double> val;

  SparseMatrix() : row_ptr(1, 0) {}
  SparseMatrix(std::size_t r, std::size_t c)
      : rows(r), cols(c), row_ptr(r + 1, 0) {}

  std::size_t nnz() const { return val.size(); }
  void validate() const;  // throws InvalidArgument on violation
};

struct Triplet {
  std::size_t row, col;
  double value;
};

// Builds CSR from unordered triplets; duplicate entries are summed.
SparseMatrix from_triplets(std::size_t rows, std::size_t cols,
                           std::vector<Triplet> entries);

SparseMatrix sparse_identity(std::size_t n);
SparseMatrix sparse_transpose(const SparseMatrix& a);
SparseMatrix from_dense(const DenseMatrix& a, double drop_tol = 0.0);
DenseMatrix to_dense(const SparseMatrix& a);

Vector matvec(const SparseMatrix& a, const Vector& x);
// y = A^T x without forming the transpose.
Vector matvec_transpose(const SparseMatrix& a, const Vector& x);

double entry(const SparseMatrix& a, std::size_t i, std::size_t j);
Vector diagonal(const SparseMatrix& a);
// Tridiagonal part of a as a sparse matrix (keeps |i-j| <= 1).
SparseMatrix tridiagonal_part(const SparseMatrix& a);

bool is_symmetric(const SparseMatrix& a, double tol);

// c = alpha*a + beta*b
SparseMatrix add(double alpha, const SparseMatrix& a, double beta,
                 const SparseMatrix& b);

// E^T * diag(d)^{-1} * E for sparse E (p x q) and positive diagonal d.
// The result is q x q and symmetric.
SparseMatrix normal_product_diag(const SparseMatrix& e, const Vector& d);

double frobenius_norm(const SparseMatrix& a);

} // namespace gsts
