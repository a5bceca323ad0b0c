#include "gsts/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gsts/errors.hpp"

namespace gsts {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

inline double sign_of(double a, double b) { return b >= 0.0 ? std::abs(a) : -std::abs(a); }

// Iterative 2-norm balancing (EISPACK balanc).  Similarity transform, so the
// spectrum is unchanged; improves the accuracy of the QR iteration on badly
// scaled blocks.
void balance(DenseMatrix& a) {
  const std::size_t n = a.rows;
  const double radix = 2.0, sqrdx = radix * radix;
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) {
          c += std::abs(a(j, i));
          r += std::abs(a(i, j));
        }
      if (c != 0.0 && r != 0.0) {
        double g = r / radix, f = 1.0;
        const double s = c + r;
        while (c < g) {
          f *= radix;
          c *= sqrdx;
        }
        g = r * radix;
        while (c > g) {
          f /= radix;
          c /= sqrdx;
        }
        if ((c + r) / f < 0.95 * s) {
          done = false;
          g = 1.0 / f;
          for (std::size_t j = 0; j < n; ++j) a(i, j) *= g;
          for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
        }
      }
    }
  }
}

// Householder reduction to upper Hessenberg form (no accumulation).
void hessenberg(DenseMatrix& a) {
  const std::size_t n = a.rows;
  if (n < 3) return;
  Vector v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double norm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) norm += a(i, k) * a(i, k);
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    const double alpha = (a(k + 1, k) >= 0.0) ? -norm : norm;
    double vtv = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i] = a(i, k);
      if (i == k + 1) v[i] -= alpha;
      vtv += v[i] * v[i];
    }
    if (vtv == 0.0) continue;
    const double beta = 2.0 / vtv;
    // left update: rows k+1.., all columns from k
    for (std::size_t j = k; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) s += v[i] * a(i, j);
      s *= beta;
      for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= s * v[i];
    }
    // right update: all rows, columns k+1..
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * v[j];
      s *= beta;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= s * v[j];
    }
    a(k + 1, k) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
}

// Francis double-shift QR on an upper Hessenberg matrix (EISPACK hqr
// lineage, eigenvalues only).
std::vector<std::complex<double>> hqr(DenseMatrix& h) {
  const int n = static_cast<int>(h.rows);
  std::vector<std::complex<double>> eig(n);

  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(h(i, j));
  if (anorm == 0.0) return eig;

  int nn = n - 1;
  double t = 0.0;
  while (nn >= 0) {
    int its = 0;
    int l;
    do {
      for (l = nn; l >= 1; --l) {
        double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(h(l, l - 1)) <= kEps * s) {
          h(l, l - 1) = 0.0;
          break;
        }
      }
      double x = h(nn, nn);
      if (l == nn) {
        eig[nn--] = {x + t, 0.0};
      } else {
        double y = h(nn - 1, nn - 1);
        double w = h(nn, nn - 1) * h(nn - 1, nn);
        if (l == nn - 1) {
          double p = 0.5 * (y - x);
          double q = p * p + w;
          double z = std::sqrt(std::abs(q));
          x += t;
          if (q >= 0.0) {
            z = p + sign_of(z, p);
            eig[nn - 1] = eig[nn] = {x + z, 0.0};
            if (z != 0.0) eig[nn] = {x - w / z, 0.0};
          } else {
            eig[nn - 1] = {x + p, z};
            eig[nn] = {x + p, -z};
          }
          nn -= 2;
        } else {
          if (its == 100)
            throw NonConvergence("eigvals: QR iteration exceeded 100 steps");
          if (its > 0 && its % 10 == 0) {
            // exceptional shift; repeating it every 10 sweeps breaks the
            // cycles the classic 10/20-only schedule can fall into
            t += x;
            for (int i = 0; i <= nn; ++i) h(i, i) -= x;
            double s = std::abs(h(nn, nn - 1)) + std::abs(h(nn - 1, nn - 2));
            y = x = 0.75 * s;
            w = -0.4375 * s * s;
          }
          ++its;
          int m;
          double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
          for (m = nn - 2; m >= l; --m) {
            z = h(m, m);
            double rr = x - z;
            double ss = y - z;
            p = (rr * ss - w) / h(m + 1, m) + h(m, m + 1);
            q = h(m + 1, m + 1) - z - rr - ss;
            r = h(m + 2, m + 1);
            double scale = std::abs(p) + std::abs(q) + std::abs(r);
            p /= scale;
            q /= scale;
            r /= scale;
            if (m == l) break;
            const double u = std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r));
            const double v = std::abs(p) * (std::abs(h(m - 1, m - 1)) +
                                            std::abs(z) + std::abs(h(m + 1, m + 1)));
            if (u <= kEps * v) break;
          }
          for (int i = m + 2; i <= nn; ++i) {
            h(i, i - 2) = 0.0;
            if (i != m + 2) h(i, i - 3) = 0.0;
          }
          for (int k = m; k <= nn - 1; ++k) {
            if (k != m) {
              p = h(k, k - 1);
              q = h(k + 1, k - 1);
              r = (k != nn - 1) ? h(k + 2, k - 1) : 0.0;
              x = std::abs(p) + std::abs(q) + std::abs(r);
              if (x != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
            if (s == 0.0) continue;
            if (k == m) {
              if (l != m) h(k, k - 1) = -h(k, k - 1);
            } else {
              h(k, k - 1) = -s * x;
            }
            p += s;
            x = p / s;
            double yy = q / s;
            z = r / s;
            q /= p;
            r /= p;
            for (int j = k; j <= nn; ++j) {
              double pp = h(k, j) + q * h(k + 1, j);
              if (k != nn - 1) {
                pp += r * h(k + 2, j);
                h(k + 2, j) -= pp * z;
              }
              h(k + 1, j) -= pp * yy;
              h(k, j) -= pp * x;
            }
            const int mmin = (nn < k + 3) ? nn : k + 3;
            for (int i = l; i <= mmin; ++i) {
              double pp = x * h(i, k) + yy * h(i, k + 1);
              if (k != nn - 1) {
                pp += z * h(i, k + 2);
                h(i, k + 2) -= pp * r;
              }
              h(i, k + 1) -= pp * q;
              h(i, k) -= pp;
            }
          }
        }
      }
    } while (l < nn - 1);
  }
  return eig;
}

} // namespace

std::vector<std::complex<double>> eigvals(const DenseMatrix& a) {
  if (a.rows != a.cols) throw InvalidArgument("eigvals: matrix not square");
  if (a.rows == 0) return {};
  DenseMatrix h = a;
  balance(h);
  hessenberg(h);
  std::vector<std::complex<double>> eig = hqr(h);
  std::sort(eig.begin(), eig.end(),
            [](const std::complex<double>& x, const std::complex<double>& y) {
              if (x.real() != y.real()) return x.real() > y.real();
              return x.imag() > y.imag();
            });
  return eig;
}

double spectral_radius(const DenseMatrix& a) {
  double r = 0.0;
  for (const auto& z : eigvals(a)) r = std::max(r, std::abs(z));
  return r;
}

double pseudo_spectral_radius(const std::vector<std::complex<double>>& eigs,
                              double one_tol) {
  double r = 0.0;
  for (const auto& z : eigs)
    if (std::abs(z - std::complex<double>(1.0, 0.0)) > one_tol)
      r = std::max(r, std::abs(z));
  return r;
}

double pseudo_spectral_radius(const DenseMatrix& a, double one_tol) {
  return pseudo_spectral_radius(eigvals(a), one_tol);
}

} // namespace gsts
