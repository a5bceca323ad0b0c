#include "gsts/sparse.hpp"

#include <algorithm>
#include <cmath>

#include "gsts/errors.hpp"
#include "gsts/kernels.hpp"

namespace gsts {

void SparseMatrix::validate() const {
  if (row_ptr.size() != rows + 1)
    throw InvalidArgument("sparse: row_ptr size must be rows+1");
  if (row_ptr.front() != 0 || row_ptr.back() != val.size() ||
      col_idx.size() != val.size())
    throw InvalidArgument("sparse: inconsistent index arrays");
  for (std::size_t i = 0; i < rows; ++i) {
    if (row_ptr[i] > row_ptr[i + 1])
      throw InvalidArgument("sparse: row_ptr not monotone");
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      if (col_idx[k] >= cols)
        throw InvalidArgument("sparse: column index out of range");
      if (k > row_ptr[i] && col_idx[k] <= col_idx[k - 1])
        throw InvalidArgument(
            "sparse: column indices not strictly increasing within a row");
      if (!std::isfinite(val[k]))
        throw InvalidArgument("sparse: non-finite value");
    }
  }
}

SparseMatrix from_triplets(std::size_t rows, std::size_t cols,
                           std::vector<Triplet> entries) {
  for (const Triplet& t : entries)
    if (t.row >= rows || t.col >= cols)
      throw InvalidArgument("from_triplets: index out of range");
  std::sort(entries.begin(), entries.end(),
            [](const Triplet& a, const Triplet& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });
  SparseMatrix m(rows, cols);
  m.col_idx.reserve(entries.size());
  m.val.reserve(entries.size());
  std::size_t r = 0;
  for (std::size_t k = 0; k < entries.size();) {
    std::size_t j = k + 1;
    double s = entries[k].value;
    while (j < entries.size() && entries[j].row == entries[k].row &&
           entries[j].col == entries[k].col) {
      s += entries[j].value;
      ++j;
    }
    while (r < entries[k].row) m.row_ptr[++r] = m.val.size();
    m.col_idx.push_back(entries[k].col);
    m.val.push_back(s);
    k = j;
  }
  while (r < rows) m.row_ptr[++r] = m.val.size();
  return m;
}

SparseMatrix sparse_identity(std::size_t n) {
  SparseMatrix m(n, n);
  m.col_idx.resize(n);
  m.val.assign(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    m.col_idx[i] = i;
    m.row_ptr[i + 1] = i + 1;
  }
  return m;
}

SparseMatrix sparse_transpose(const SparseMatrix& a) {
  SparseMatrix t(a.cols, a.rows);
  t.col_idx.resize(a.nnz());
  t.val.resize(a.nnz());
  std::vector<std::size_t> count(a.cols, 0);
  for (std::size_t c : a.col_idx) ++count[c];
  for (std::size_t j = 0; j < a.cols; ++j)
    t.row_ptr[j + 1] = t.row_ptr[j] + count[j];
  std::vector<std::size_t> next(t.row_ptr.begin(), t.row_ptr.end() - 1);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      const std::size_t pos = next[a.col_idx[k]]++;
      t.col_idx[pos] = i;
      t.val[pos] = a.val[k];
    }
  return t;
}

SparseMatrix from_dense(const DenseMatrix& a, double drop_tol) {
  SparseMatrix m(a.rows, a.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j)
      if (std::abs(a(i, j)) > drop_tol) {
        m.col_idx.push_back(j);
        m.val.push_back(a(i, j));
      }
    m.row_ptr[i + 1] = m.val.size();
  }
  return m;
}

DenseMatrix to_dense(const SparseMatrix& a) {
  DenseMatrix d(a.rows, a.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
      d(i, a.col_idx[k]) = a.val[k];
  return d;
}

Vector matvec(const SparseMatrix& a, const Vector& x) {
  if (x.size() != a.cols) throw InvalidArgument("sparse matvec: size mismatch");
  Vector y(a.rows);
  kernels::csr_matvec(a.rows, a.row_ptr.data(), a.col_idx.data(), a.val.data(),
                      x.data(), y.data());
  return y;
}

Vector matvec_transpose(const SparseMatrix& a, const Vector& x) {
  if (x.size() != a.rows)
    throw InvalidArgument("sparse matvec_transpose: size mismatch");
  Vector y(a.cols, 0.0);
  for (std::size_t i = 0; i < a.rows; ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
      y[a.col_idx[k]] += a.val[k] * xi;
  }
  return y;
}

double entry(const SparseMatrix& a, std::size_t i, std::size_t j) {
  const std::size_t* b = a.col_idx.data() + a.row_ptr[i];
  const std::size_t* e = a.col_idx.data() + a.row_ptr[i + 1];
  const std::size_t* it = std::lower_bound(b, e, j);
  if (it != e && *it == j) return a.val[a.row_ptr[i] + (it - b)];
  return 0.0;
}

Vector diagonal(const SparseMatrix& a) {
  Vector d(std::min(a.rows, a.cols), 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = entry(a, i, i);
  return d;
}

SparseMatrix tridiagonal_part(const SparseMatrix& a) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      const std::size_t j = a.col_idx[k];
      if ((i <= j + 1) && (j <= i + 1)) t.push_back({i, j, a.val[k]});
    }
  return from_triplets(a.rows, a.cols, std::move(t));
}

bool is_symmetric(const SparseMatrix& a, double tol) {
  if (a.rows != a.cols) return false;
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      const std::size_t j = a.col_idx[k];
      if (std::abs(a.val[k] - entry(a, j, i)) > tol) return false;
    }
  return true;
}

SparseMatrix add(double alpha, const SparseMatrix& a, double beta,
                 const SparseMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw InvalidArgument("sparse add: shape mismatch");
  std::vector<Triplet> t;
  t.reserve(a.nnz() + b.nnz());
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
      t.push_back({i, a.col_idx[k], alpha * a.val[k]});
  for (std::size_t i = 0; i < b.rows; ++i)
    for (std::size_t k = b.row_ptr[i]; k < b.row_ptr[i + 1]; ++k)
      t.push_back({i, b.col_idx[k], beta * b.val[k]});
  return from_triplets(a.rows, a.cols, std::move(t));
}

SparseMatrix normal_product_diag(const SparseMatrix& e, const Vector& d) {
  if (d.size() != e.rows)
    throw InvalidArgument("normal_product_diag: diagonal size mismatch");
  for (double v : d)
    if (!(v > 0.0))
      throw InvalidArgument("normal_product_diag: diagonal must be positive");
  const SparseMatrix et = sparse_transpose(e);
  const std::size_t q = e.cols;
  // Row-merge SpGEMM with a dense accumulator; rows of the result are the
  // sparse combinations sum_k et(i,k)/d[k] * e(k,:).
  std::vector<double> acc(q, 0.0);
  std::vector<char> mark(q, 0);
  std::vector<std::size_t> touched;
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < q; ++i) {
    touched.clear();
    for (std::size_t k = et.row_ptr[i]; k < et.row_ptr[i + 1]; ++k) {
      const std::size_t r = et.col_idx[k];
      const double w = et.val[k] / d[r];
      for (std::size_t m = e.row_ptr[r]; m < e.row_ptr[r + 1]; ++m) {
        const std::size_t j = e.col_idx[m];
        if (!mark[j]) {
          mark[j] = 1;
          touched.push_back(j);
        }
        acc[j] += w * e.val[m];
      }
    }
    for (std::size_t j : touched) {
      if (acc[j] != 0.0) t.push_back({i, j, acc[j]});
      acc[j] = 0.0;
      mark[j] = 0;
    }
  }
  return from_triplets(q, q, std::move(t));
}

double frobenius_norm(const SparseMatrix& a) {
  return kernels::nrm2(a.val.size(), a.val.data());
}

} // namespace gsts
