#include "gsts/problem.hpp"

#include <algorithm>
#include <cmath>

#include "gsts/errors.hpp"
#include "gsts/kernels.hpp"

namespace gsts {

void SaddleSystem::validate() const {
  m.validate();
  e.validate();
  if (m.rows != m.cols) throw InvalidArgument("saddle system: M not square");
  if (e.rows != m.rows)
    throw InvalidArgument("saddle system: E row count must match M");
  if (e.cols > e.rows)
    throw InvalidArgument("saddle system: q must not exceed p");
  if (f1.size() != p() || f2.size() != q())
    throw InvalidArgument("saddle system: right-hand side sizes disagree");
  if (!is_symmetric(m, 1e-12 * (1.0 + frobenius_norm(m))))
    throw InvalidArgument("saddle system: M is not symmetric");
  for (double v : f1)
    if (!std::isfinite(v)) throw InvalidArgument("saddle system: f1 not finite");
  for (double v : f2)
    if (!std::isfinite(v)) throw InvalidArgument("saddle system: f2 not finite");
}

namespace {

struct MacIndexer {
  std::size_t l;
  // u at vertical edge (i, j): i in 1..l-1 (x position), j in 0..l-1 (row)
  std::size_t u(std::size_t i, std::size_t j) const {
    return j * (l - 1) + (i - 1);
  }
  // v at horizontal edge (i, j): i in 0..l-1, j in 1..l-1
  std::size_t v(std::size_t i, std::size_t j) const {
    return l * (l - 1) + (j - 1) * l + i;
  }
  // pressure at cell (i, j)
  std::size_t pr(std::size_t i, std::size_t j) const { return j * l + i; }
};

} // namespace

SaddleSystem assemble_mac_stokes(const StokesConfig& cfg) {
  const std::size_t l = cfg.l;
  if (l < 2) throw InvalidArgument("assemble_mac_stokes: need l >= 2");
  if (!(cfg.nu > 0.0))
    throw InvalidArgument("assemble_mac_stokes: viscosity must be positive");
  const double h = 1.0 / static_cast<double>(l);
  const double ih2 = 1.0 / (h * h);
  const double nu = cfg.nu;
  const MacIndexer ix{l};

  const std::size_t p = 2 * l * (l - 1);
  const std::size_t q = l * l;

  std::vector<Triplet> tm;
  std::vector<Triplet> te;
  SaddleSystem sys;
  sys.f1.assign(p, 0.0);
  sys.f2.assign(q, 0.0);

  // u momentum rows: -nu*Lap(u) + dp/dx at (i*h, (j+1/2)*h)
  for (std::size_t j = 0; j < l; ++j)
    for (std::size_t i = 1; i < l; ++i) {
      const std::size_t row = ix.u(i, j);
      // x direction: neighbors at i-1, i+1; walls x=0 and x=1 hold u = 0.
      // y direction: ghost reflection across the tangential walls y=0, y=1
      // turns the 2 into a 3 on the rows next to them.
      double diag = 2.0 + ((j == 0 || j == l - 1) ? 3.0 : 2.0);
      if (i > 1) tm.push_back({row, ix.u(i - 1, j), -nu * ih2});
      if (i < l - 1) tm.push_back({row, ix.u(i + 1, j), -nu * ih2});
      if (j > 0) tm.push_back({row, ix.u(i, j - 1), -nu * ih2});
      if (j < l - 1) tm.push_back({row, ix.u(i, j + 1), -nu * ih2});
      tm.push_back({row, row, nu * diag * ih2});
      if (j == l - 1) sys.f1[row] += nu * 2.0 * ih2; // moving lid, u = 1
      // pressure gradient (p(i,j) - p(i-1,j))/h
      te.push_back({row, ix.pr(i, j), 1.0 / h});
      te.push_back({row, ix.pr(i - 1, j), -1.0 / h});
    }

  // v momentum rows: -nu*Lap(v) + dp/dy at ((i+1/2)*h, j*h)
  for (std::size_t j = 1; j < l; ++j)
    for (std::size_t i = 0; i < l; ++i) {
      const std::size_t row = ix.v(i, j);
      double diag = (i == 0 || i == l - 1) ? 3.0 : 2.0; // ghost walls x=0, x=1
      diag += 2.0;                                      // y part
      if (i > 0) tm.push_back({row, ix.v(i - 1, j), -nu * ih2});
      if (i < l - 1) tm.push_back({row, ix.v(i + 1, j), -nu * ih2});
      if (j > 1) tm.push_back({row, ix.v(i, j - 1), -nu * ih2});
      if (j < l - 1) tm.push_back({row, ix.v(i, j + 1), -nu * ih2});
      tm.push_back({row, row, nu * diag * ih2});
      te.push_back({row, ix.pr(i, j), 1.0 / h});
      te.push_back({row, ix.pr(i, j - 1), -1.0 / h});
    }

  sys.m = from_triplets(p, p, std::move(tm));
  sys.e = from_triplets(p, q, std::move(te));
  sys.validate();
  return sys;
}

void rhs_from_solution(SaddleSystem& sys, const Vector& u_star) {
  if (u_star.size() != sys.n())
    throw InvalidArgument("rhs_from_solution: u_star must have p+q entries");
  const Vector u1(u_star.begin(), u_star.begin() + sys.p());
  const Vector u2(u_star.begin() + sys.p(), u_star.end());
  sys.f1 = matvec(sys.m, u1);
  const Vector eu2 = matvec(sys.e, u2);
  kernels::axpy(sys.p(), 1.0, eu2.data(), sys.f1.data());
  const Vector etu1 = matvec_transpose(sys.e, u1);
  sys.f2.assign(sys.q(), 0.0);
  kernels::axpy(sys.q(), -1.0, etu1.data(), sys.f2.data());
}

Vector stacked_rhs(const SaddleSystem& sys) {
  Vector f(sys.n());
  std::copy(sys.f1.begin(), sys.f1.end(), f.begin());
  std::copy(sys.f2.begin(), sys.f2.end(), f.begin() + sys.p());
  return f;
}

HermitianSplit split_hermitian(const SaddleSystem& sys) {
  const std::size_t p = sys.p(), n = sys.n();
  HermitianSplit out;
  std::vector<Triplet> th;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t k = sys.m.row_ptr[i]; k < sys.m.row_ptr[i + 1]; ++k)
      th.push_back({i, sys.m.col_idx[k], sys.m.val[k]});
  out.h = from_triplets(n, n, std::move(th));
  out.s = add(1.0, k_lower(sys), 1.0, k_upper(sys));
  return out;
}

SparseMatrix assemble_full(const SaddleSystem& sys) {
  const std::size_t p = sys.p(), n = sys.n();
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t k = sys.m.row_ptr[i]; k < sys.m.row_ptr[i + 1]; ++k)
      t.push_back({i, sys.m.col_idx[k], sys.m.val[k]});
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t k = sys.e.row_ptr[i]; k < sys.e.row_ptr[i + 1]; ++k) {
      t.push_back({i, p + sys.e.col_idx[k], sys.e.val[k]});
      t.push_back({p + sys.e.col_idx[k], i, -sys.e.val[k]});
    }
  return from_triplets(n, n, std::move(t));
}

SparseMatrix k_lower(const SaddleSystem& sys) {
  const std::size_t p = sys.p(), n = sys.n();
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t k = sys.e.row_ptr[i]; k < sys.e.row_ptr[i + 1]; ++k)
      t.push_back({p + sys.e.col_idx[k], i, -sys.e.val[k]});
  return from_triplets(n, n, std::move(t));
}

SparseMatrix k_upper(const SaddleSystem& sys) {
  const std::size_t p = sys.p(), n = sys.n();
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t k = sys.e.row_ptr[i]; k < sys.e.row_ptr[i + 1]; ++k)
      t.push_back({i, p + sys.e.col_idx[k], sys.e.val[k]});
  return from_triplets(n, n, std::move(t));
}

} // namespace gsts
