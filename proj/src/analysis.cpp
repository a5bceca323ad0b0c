#include "gsts/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "gsts/cholesky.hpp"
#include "gsts/eig.hpp"
#include "gsts/errors.hpp"
#include "gsts/kernels.hpp"
#include "gsts/solve.hpp"
#include "gsts/svd.hpp"

namespace gsts {

namespace {

constexpr std::size_t kDenseCap = 500;
constexpr double kAngleTol = 1e-6;   // radians
constexpr double kGapWarn = 1e-6;    // relative sigma gap at a rank cut

// Numerical rank plus a warning flag when the relative singular-value gap
// at the cut is too small to trust the rank decision.
std::size_t rank_with_gap(const SvdFactor& f, bool& warn) {
  const double tol = f.default_rank_tol();
  const std::size_t r = f.rank(tol);
  if (f.sigma.empty() || f.sigma[0] == 0.0) return r;
  const double s0 = f.sigma[0];
  const double kept = r > 0 ? f.sigma[r - 1] : 0.0;
  const double cut = r < f.sigma.size() ? f.sigma[r] : 0.0;
  if (r > 0 && r < f.sigma.size() && (kept - cut) / s0 < kGapWarn) warn = true;
  if (r == 0 && cut / s0 > 0.0 && cut / s0 < kGapWarn) warn = true;
  return r;
}

DenseMatrix null_basis(const SvdFactor& f, std::size_t rank) {
  const std::size_t n = f.v.rows, k = f.v.cols - rank;
  DenseMatrix q(n, k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) q(i, j) = f.v(i, rank + j);
  return q;
}

// Extreme eigenvalues of a small symmetric matrix.
std::pair<double, double> eigen_range(DenseMatrix a) {
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = i + 1; j < a.cols; ++j) {
      const double v = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = v;
      a(j, i) = v;
    }
  const SymmetricEigen se = symmetric_eigen(a);
  return {se.lambda.front(), se.lambda.back()};
}

} // namespace

DenseMatrix iteration_matrix(const SaddleSystem& sys, const BOperator& b,
                             const GstsParams& params) {
  params.validate();
  const std::size_t n = sys.n();
  if (n > kDenseCap)
    throw InvalidArgument("iteration_matrix: p + q exceeds the dense cap");
  const GstsPreconditioner pre(sys, b, params.omega1, params.omega2);
  const DenseMatrix a = to_dense(assemble_full(sys));
  DenseMatrix g(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const Vector z = pre.apply(column(a, j));
    for (std::size_t i = 0; i < n; ++i)
      g(i, j) = (i == j ? 1.0 : 0.0) - params.tau * z[i];
  }
  return g;
}

DenseMatrix iteration_matrix(const SaddleSystem& sys, const BChoice& choice,
                             const GstsParams& params) {
  return iteration_matrix(sys, build_b(sys, choice), params);
}

double max_principal_angle(const DenseMatrix& q1, const DenseMatrix& q2) {
  if (q1.rows != q2.rows || q1.cols != q2.cols)
    throw InvalidArgument("max_principal_angle: shape mismatch");
  if (q1.cols == 0) return 0.0;
  const DenseMatrix c = matmul(transpose(q1), q2);
  const SvdFactor f = svd(c);
  const double cmin = std::clamp(f.sigma.back(), -1.0, 1.0);
  return std::acos(cmin);
}

SpectralReport check_semiconvergence(const DenseMatrix& g,
                                     bool singular_regime,
                                     const SaddleSystem* sys) {
  if (g.rows != g.cols)
    throw InvalidArgument("check_semiconvergence: G must be square");
  if (singular_regime && sys == nullptr)
    throw InvalidArgument(
        "check_semiconvergence: the singular regime needs the system");

  SpectralReport rep;
  rep.singular_regime = singular_regime;
  rep.eigenvalues = eigvals(g);
  rep.gamma = pseudo_spectral_radius(rep.eigenvalues);
  rep.spectral_radius = 0.0;
  for (const auto& ev : rep.eigenvalues)
    rep.spectral_radius = std::max(rep.spectral_radius, std::abs(ev));

  const std::size_t n = g.rows;
  DenseMatrix ig(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      ig(i, j) = (i == j ? 1.0 : 0.0) - g(i, j);
  const SvdFactor fig = svd(ig);
  const SvdFactor fig2 = svd(matmul(ig, ig));
  const std::size_t r1 = rank_with_gap(fig, rep.rank_gap_warning);
  const std::size_t r2 = rank_with_gap(fig2, rep.rank_gap_warning);
  rep.index_one = r1 == r2;

  if (singular_regime) {
    // null(B^+ A) = null(I - G) since G = I - tau B^+ A with tau > 0
    const SvdFactor fa = svd(to_dense(assemble_full(*sys)));
    const std::size_t ra = rank_with_gap(fa, rep.rank_gap_warning);
    if (fa.v.cols - ra != n - r1) {
      rep.nullspace_ok = false;
      rep.max_principal_angle = std::acos(0.0);
    } else {
      rep.max_principal_angle =
          max_principal_angle(null_basis(fig, r1), null_basis(fa, ra));
      rep.nullspace_ok = rep.max_principal_angle < kAngleTol;
    }
  }
  return rep;
}

RayleighRanges rayleigh_ranges(const SaddleSystem& sys, const BOperator& b) {
  const std::size_t p = sys.p(), q = sys.q();
  if (p + q > 2000)
    throw InvalidArgument("rayleigh_ranges: p + q exceeds the dense cap");
  const SvdFactor fe = svd(to_dense(sys.e));
  const std::size_t r = fe.rank();
  if (r == 0) throw InvalidArgument("rayleigh_ranges: E has rank zero");

  // alpha: Sigma_r (U1^T M^{-1} U1) Sigma_r through r fresh M-solves
  const SpdFactor m_chol = SpdFactor::compute(sys.m);
  DenseMatrix x(p, r); // M^{-1} U1
  for (std::size_t j = 0; j < r; ++j) {
    const Vector xj = m_chol.solve(column(fe.u, j));
    for (std::size_t i = 0; i < p; ++i) x(i, j) = xj[i];
  }
  DenseMatrix am(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < p; ++k) s += fe.u(k, i) * x(k, j);
      am(i, j) = fe.sigma[i] * s * fe.sigma[j];
    }

  RayleighRanges out;
  std::tie(out.alpha_min, out.alpha_max) = eigen_range(am);

  // beta: V1^T B V1 on the materialized B (a second, independent route;
  // in the Schur-complement regime this equals the alpha matrix exactly)
  const DenseMatrix& bd = b.dense();
  DenseMatrix v1(q, r);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < r; ++j) v1(i, j) = fe.v(i, j);
  const DenseMatrix bm = matmul(transpose(v1), matmul(bd, v1));
  std::tie(out.beta_min, out.beta_max) = eigen_range(bm);
  out.beta_convention =
      b.singular() ? "V1^T B V1 (= Sigma_r U1^T P^{-1} U1 Sigma_r)"
                   : "V1^T B V1";

  if (!b.singular() && r < q) {
    // the other reduction convention: ((V1^T B^{-1} V1))^{-1}; its extreme
    // eigenvalues are the reciprocals of those of V1^T B^{-1} V1
    DenseMatrix y(q, r);
    for (std::size_t j = 0; j < r; ++j) {
      const Vector yj = b.apply_inverse(column(v1, j));
      for (std::size_t i = 0; i < q; ++i) y(i, j) = yj[i];
    }
    const DenseMatrix c = matmul(transpose(v1), y);
    const auto [cmin, cmax] = eigen_range(c);
    out.beta_alternate = std::make_pair(1.0 / cmax, 1.0 / cmin);
  } else if (!b.singular()) {
    out.beta_alternate = std::make_pair(out.beta_min, out.beta_max);
  }
  return out;
}

RayleighRanges rayleigh_ranges(const SaddleSystem& sys,
                               const BChoice& choice) {
  return rayleigh_ranges(sys, build_b(sys, choice));
}

std::optional<double> tau_upper(double alpha, double beta, double omega1,
                                double omega2) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw InvalidArgument("tau_upper: alpha and beta must be positive");
  const double wt = (omega1 - 1.0) * (omega2 - 1.0);
  if (!(wt < (alpha + beta) / alpha)) return std::nullopt;
  const double s = beta + (1.0 - wt) * alpha;
  const double disc = s * s - 4.0 * alpha * beta;
  if (disc <= 0.0) return s / alpha;
  return (s - std::sqrt(disc)) / alpha;
}

ParameterBound sufficient_bound(const RayleighRanges& r,
                                const GstsParams& params) {
  params.validate();
  ParameterBound out;
  out.omega_tilde = (params.omega1 - 1.0) * (params.omega2 - 1.0);
  out.alpha_min = r.alpha_min;
  out.alpha_max = r.alpha_max;
  out.beta_min = r.beta_min;
  out.beta_max = r.beta_max;

  double upper = 0.0;
  bool nonempty = true;
  bool first = true;
  for (double a : {r.alpha_min, r.alpha_max})
    for (double b : {r.beta_min, r.beta_max}) {
      const auto u = tau_upper(a, b, params.omega1, params.omega2);
      if (!u) {
        nonempty = false;
        break;
      }
      upper = first ? *u : std::min(upper, *u);
      first = false;
    }
  if (nonempty) out.tau_upper = upper;
  out.sufficient = nonempty && params.tau < upper;
  return out;
}

ReducedSystem reduced_system(const SaddleSystem& sys) {
  const std::size_t p = sys.p(), q = sys.q();
  if (p + q > 2000)
    throw InvalidArgument("reduced_system: p + q exceeds the dense cap");
  ReducedSystem out;
  SvdFactor fe = svd(to_dense(sys.e));
  out.rank = fe.rank();
  out.sigma = fe.sigma;
  const std::size_t r = out.rank;

  const DenseMatrix md = to_dense(sys.m);
  DenseMatrix mh = matmul(transpose(fe.u), matmul(md, fe.u));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j) {
      const double v = 0.5 * (mh(i, j) + mh(j, i));
      mh(i, j) = v;
      mh(j, i) = v;
    }

  std::vector<Triplet> er;
  er.reserve(r);
  for (std::size_t i = 0; i < r; ++i) er.push_back({i, i, fe.sigma[i]});

  out.sys.m = from_dense(mh);
  out.sys.e = from_triplets(p, r, er);
  out.sys.f1 = matvec_transpose(fe.u, sys.f1);
  const Vector vtf2 = matvec_transpose(fe.v, sys.f2);
  out.sys.f2.assign(vtf2.begin(), vtf2.begin() + r);
  out.sys.validate();
  out.u = std::move(fe.u);
  out.v = std::move(fe.v);
  return out;
}

} // namespace gsts
