#include "gsts/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gsts/errors.hpp"
#include "gsts/kernels.hpp"

namespace gsts {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Completes k mutually orthonormal rows of `basis` (an n x m row store) to a
// full orthonormal set using doubly reorthogonalized Gram-Schmidt against
// the coordinate directions.
void complete_orthonormal_rows(DenseMatrix& basis, std::size_t k) {
  const std::size_t m = basis.cols;
  const std::size_t want = basis.rows;
  Vector cand(m);
  std::size_t filled = k;
  for (double accept : {0.3, 1e-3}) {
    for (std::size_t e = 0; e < m && filled < want; ++e) {
      std::fill(cand.begin(), cand.end(), 0.0);
      cand[e] = 1.0;
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t i = 0; i < filled; ++i) {
          const double c = kernels::dot(m, basis.row(i), cand.data());
          kernels::axpy(m, -c, basis.row(i), cand.data());
        }
      const double nrm = kernels::nrm2(m, cand.data());
      if (nrm < accept) continue;
      kernels::scal(m, 1.0 / nrm, cand.data());
      std::copy(cand.begin(), cand.end(), basis.row(filled));
      ++filled;
    }
    if (filled == want) break;
  }
  if (filled != want)
    throw NonConvergence("svd: failed to complete orthonormal basis");
}

// Householder tridiagonalization with accumulation (tred2 lineage).
void tred2(DenseMatrix& z, Vector& d, Vector& e) {
  const std::size_t n = z.rows;
  for (std::size_t j = 0; j < n; ++j) d[j] = z(n - 1, j);

  for (std::size_t i = n - 1; i > 0; --i) {
    double scale = 0.0, h = 0.0;
    for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = z(i - 1, j);
        z(i, j) = 0.0;
        z(j, i) = 0.0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = (f > 0.0) ? -std::sqrt(h) : std::sqrt(h);
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        z(j, i) = f;
        g = e[j] + z(j, j) * f;
        for (std::size_t k = j + 1; k < i; ++k) {
          g += z(k, j) * d[k];
          e[k] += z(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (std::size_t k = j; k < i; ++k) z(k, j) -= f * e[k] + g * d[k];
        d[j] = z(i - 1, j);
        z(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    z(n - 1, i) = z(i, i);
    z(i, i) = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      for (std::size_t k = 0; k <= i; ++k) d[k] = z(k, i + 1) / h;
      for (std::size_t j = 0; j <= i; ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k <= i; ++k) g += z(k, i + 1) * z(k, j);
        for (std::size_t k = 0; k <= i; ++k) z(k, j) -= g * d[k];
      }
    }
    for (std::size_t k = 0; k <= i; ++k) z(k, i + 1) = 0.0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = z(n - 1, j);
    z(n - 1, j) = 0.0;
  }
  z(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

// Implicit-shift QL on the tridiagonal (tql2 lineage); rotates the columns
// of z along.  Throws NonConvergence when an eigenvalue needs more than 50
// QL steps.
void tql2(DenseMatrix& z, Vector& d, Vector& e) {
  const std::size_t n = z.rows;
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  double f = 0.0, tst1 = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n && std::abs(e[m]) > kEps * tst1) ++m;
    if (m > l) {
      int iter = 0;
      do {
        if (++iter > 50)
          throw NonConvergence("symmetric_eigen: QL iteration stalled");
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0.0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = std::hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          for (std::size_t k = 0; k < n; ++k) {
            h = z(k, ii + 1);
            z(k, ii + 1) = s * z(k, ii) + c * h;
            z(k, ii) = c * z(k, ii) - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > kEps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }

  // ascending order, vectors along
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::size_t k = i;
    double p = d[i];
    for (std::size_t j = i + 1; j < n; ++j)
      if (d[j] < p) {
        k = j;
        p = d[j];
      }
    if (k != i) {
      d[k] = d[i];
      d[i] = p;
      for (std::size_t r = 0; r < n; ++r) std::swap(z(r, i), z(r, k));
    }
  }
}

bool nearly_symmetric(const DenseMatrix& a) {
  if (a.rows != a.cols) return false;
  const double scale = std::max(1.0, max_abs(a));
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = i + 1; j < a.cols; ++j)
      if (std::abs(a(i, j) - a(j, i)) > 1e-12 * scale) return false;
  return true;
}

// Builds an SvdFactor from a symmetric eigendecomposition: sigma = |lambda|
// descending, the sign folded into u.
SvdFactor svd_from_symmetric(const DenseMatrix& a) {
  SymmetricEigen eig = symmetric_eigen(a);
  const std::size_t n = a.rows;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return std::abs(eig.lambda[i]) > std::abs(eig.lambda[j]);
  });
  SvdFactor f;
  f.u = DenseMatrix(n, n);
  f.v = DenseMatrix(n, n);
  f.sigma.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    const double lam = eig.lambda[src];
    f.sigma[k] = std::abs(lam);
    const double sgn = (lam < 0.0) ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      f.v(i, k) = eig.q(i, src);
      f.u(i, k) = sgn * eig.q(i, src);
    }
  }
  return f;
}

} // namespace

double SvdFactor::default_rank_tol() const {
  const double smax = sigma.empty() ? 0.0 : sigma.front();
  return static_cast<double>(std::max(u.rows, v.rows)) * kEps * smax;
}

std::size_t SvdFactor::rank(double tol) const {
  std::size_t r = 0;
  while (r < sigma.size() && sigma[r] > tol) ++r;
  return r;
}

SvdFactor svd(const DenseMatrix& a) {
  if (a.rows == 0 || a.cols == 0)
    throw InvalidArgument("svd: empty matrix");
  if (a.rows < a.cols) {
    SvdFactor f = svd(transpose(a));
    std::swap(f.u, f.v);
    return f;
  }
  const std::size_t m = a.rows, n = a.cols;

  SvdFactor f;
  f.sigma.assign(n, 0.0);
  if (max_abs(a) == 0.0) {
    f.u = DenseMatrix::identity(m);
    f.v = DenseMatrix::identity(n);
    return f;
  }

  // Work on rows of a^T so that column rotations are contiguous.
  DenseMatrix wt = transpose(a);
  DenseMatrix vt = DenseMatrix::identity(n);

  const double thresh = 1e-15;
  bool converged = false;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    std::size_t rotations = 0;
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        double* wi = wt.row(i);
        double* wj = wt.row(j);
        const double aa = kernels::dot(m, wi, wi);
        const double bb = kernels::dot(m, wj, wj);
        const double cc = kernels::dot(m, wi, wj);
        if (std::abs(cc) <= thresh * std::sqrt(aa * bb)) continue;
        const double zeta = (bb - aa) / (2.0 * cc);
        const double t =
            ((zeta >= 0.0) ? 1.0 : -1.0) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = cs * t;
        kernels::rot(m, wi, wj, cs, -sn);
        kernels::rot(n, vt.row(i), vt.row(j), cs, -sn);
        ++rotations;
      }
    converged = (rotations == 0);
  }
  if (!converged)
    throw NonConvergence("svd: Jacobi sweeps exhausted without convergence");

  Vector norms(n);
  for (std::size_t i = 0; i < n; ++i) norms[i] = kernels::nrm2(m, wt.row(i));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return norms[i] > norms[j]; });

  // u rows (column store), first the normalized nonzero directions.
  DenseMatrix ut(m, m);
  f.v = DenseMatrix(n, n);
  std::size_t nonzero = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    f.sigma[k] = norms[src];
    for (std::size_t i = 0; i < n; ++i) f.v(i, k) = vt(src, i);
    if (norms[src] > 0.0 && k == nonzero) {
      std::copy(wt.row(src), wt.row(src) + m, ut.row(k));
      kernels::scal(m, 1.0 / norms[src], ut.row(k));
      ++nonzero;
    }
  }
  complete_orthonormal_rows(ut, nonzero);
  f.u = transpose(ut);
  return f;
}

SymmetricEigen symmetric_eigen(const DenseMatrix& a) {
  if (a.rows != a.cols)
    throw InvalidArgument("symmetric_eigen: matrix not square");
  const std::size_t n = a.rows;
  SymmetricEigen out;
  out.q = a;
  out.lambda.assign(n, 0.0);
  if (n == 1) {
    out.q(0, 0) = 1.0;
    out.lambda[0] = a(0, 0);
    return out;
  }
  Vector e(n, 0.0);
  tred2(out.q, out.lambda, e);
  tql2(out.q, out.lambda, e);
  return out;
}

Vector PseudoInverseFactor::null_basis_column(std::size_t k) const {
  if (rank + k >= factor.v.cols)
    throw InvalidArgument("null_basis_column: index beyond null dimension");
  return column(factor.v, rank + k);
}

PseudoInverseFactor pseudo_inverse(SvdFactor f, double tol) {
  PseudoInverseFactor p;
  p.factor = std::move(f);
  p.tol = tol;
  p.rank = p.factor.rank(tol);
  return p;
}

PseudoInverseFactor pseudo_inverse(const DenseMatrix& a) {
  SvdFactor f = nearly_symmetric(a) ? svd_from_symmetric(a) : svd(a);
  const double tol = f.default_rank_tol();
  return pseudo_inverse(std::move(f), tol);
}

Vector pinv_apply(const PseudoInverseFactor& f, const Vector& b) {
  const std::size_t m = f.factor.u.rows;
  const std::size_t n = f.factor.v.rows;
  if (b.size() != m) throw InvalidArgument("pinv_apply: size mismatch");
  Vector x(n, 0.0);
  for (std::size_t k = 0; k < f.rank; ++k) {
    // u and v columns are strided; accumulate through scalar dots.
    double t = 0.0;
    for (std::size_t i = 0; i < m; ++i) t += f.factor.u(i, k) * b[i];
    t /= f.factor.sigma[k];
    for (std::size_t i = 0; i < n; ++i) x[i] += t * f.factor.v(i, k);
  }
  return x;
}

DenseMatrix pinv_materialize(const PseudoInverseFactor& f) {
  const std::size_t m = f.factor.u.rows;
  const std::size_t n = f.factor.v.rows;
  DenseMatrix p(n, m);
  for (std::size_t k = 0; k < f.rank; ++k) {
    const double inv = 1.0 / f.factor.sigma[k];
    for (std::size_t i = 0; i < n; ++i) {
      const double w = f.factor.v(i, k) * inv;
      for (std::size_t j = 0; j < m; ++j) p(i, j) += w * f.factor.u(j, k);
    }
  }
  return p;
}

std::size_t rank_of(const DenseMatrix& a) {
  const SvdFactor f = svd(a);
  return f.rank(f.default_rank_tol());
}

std::size_t rank_of(const DenseMatrix& a, double tol) {
  return svd(a).rank(tol);
}

} // namespace gsts
