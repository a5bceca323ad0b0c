#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gsts/cholesky.hpp"
#include "gsts/errors.hpp"
#include "gsts/problem.hpp"
#include "gsts/solve.hpp"
#include "gsts/svd.hpp"

#include "helpers.hpp"

using namespace gsts;
using namespace gsts::testing;

TEST_CASE("cavity generator dimensions, rank, and definiteness") {
  for (std::size_t l = 2; l <= 8; ++l) {
    CAPTURE(l);
    const SaddleSystem sys = assemble_mac_stokes({l, 1.0});
    CHECK(sys.p() == 2 * l * (l - 1));
    CHECK(sys.q() == l * l);
    CHECK(is_symmetric(sys.m, 0.0));

    // velocity Laplacian stays SPD at every benchmark viscosity
    for (double nu : {1.0, 0.01, 1e-4}) {
      const SaddleSystem s = assemble_mac_stokes({l, nu});
      CHECK_NOTHROW(SpdFactor::compute(s.m));
    }

    const SvdFactor fe = svd(to_dense(sys.e));
    CHECK(fe.rank() == l * l - 1);

    // the one-dimensional null space is the constant pressure mode
    Vector ones(sys.q(), 1.0);
    const Vector e1 = matvec(sys.e, ones);
    double nrm = 0.0;
    for (double v : e1) nrm += v * v;
    CHECK(std::sqrt(nrm) <= 1e-10 * frobenius_norm(sys.e));
  }
}

TEST_CASE("gradient entries are +-1/h and couple two cells per edge") {
  const std::size_t l = 4;
  const SaddleSystem sys = assemble_mac_stokes({l, 1.0});
  const double h = 1.0 / double(l);

  for (std::size_t i = 0; i < sys.p(); ++i) {
    const std::size_t begin = sys.e.row_ptr[i], end = sys.e.row_ptr[i + 1];
    REQUIRE(end - begin == 2); // each interior edge borders two cells
    double sum = 0.0;
    for (std::size_t k = begin; k < end; ++k) {
      CHECK(std::abs(std::abs(sys.e.val[k]) - 1.0 / h) <= 1e-15);
      sum += sys.e.val[k];
    }
    CHECK(sum == 0.0); // one + and one -
  }
}

TEST_CASE("viscosity scales the velocity block linearly") {
  const SaddleSystem base = assemble_mac_stokes({5, 1.0});
  const SaddleSystem scaled = assemble_mac_stokes({5, 0.01});
  REQUIRE(base.m.val.size() == scaled.m.val.size());
  CHECK(base.m.col_idx == scaled.m.col_idx);
  for (std::size_t k = 0; k < base.m.val.size(); ++k)
    CHECK(scaled.m.val[k] == doctest::Approx(0.01 * base.m.val[k]).epsilon(1e-14));
  // E carries no viscosity
  CHECK(base.e.val == scaled.e.val);
}

TEST_CASE("physical right-hand side carries only the lid row") {
  const std::size_t l = 6;
  const double nu = 0.01;
  const SaddleSystem sys = assemble_mac_stokes({l, nu});
  const double lid = nu * 2.0 * double(l) * double(l); // nu * 2/h^2

  // u unknowns sit first, (l-1) per grid row, top row last
  const std::size_t u_count = (l - 1) * l;
  std::size_t nonzeros = 0;
  for (std::size_t i = 0; i < sys.p(); ++i) {
    if (sys.f1[i] != 0.0) {
      ++nonzeros;
      CHECK(sys.f1[i] == doctest::Approx(lid).epsilon(1e-14));
      CHECK(i >= u_count - (l - 1)); // top grid row of the u block
      CHECK(i < u_count);
    }
  }
  CHECK(nonzeros == l - 1);
  for (double v : sys.f2) CHECK(v == 0.0);

  // consistency: f2 = 0 is orthogonal to the pressure null space trivially;
  // the prescribed-solution path must keep f2 in range(E^T)
  SaddleSystem prescribed = sys;
  std::mt19937 rng(7);
  rhs_from_solution(prescribed, random_vector(sys.n(), rng));
  Vector ones(sys.q(), 1.0);
  double dot = 0.0, nrm = 0.0;
  for (std::size_t i = 0; i < sys.q(); ++i) {
    dot += prescribed.f2[i];
    nrm += prescribed.f2[i] * prescribed.f2[i];
  }
  CHECK(std::abs(dot) <= 1e-10 * (1.0 + std::sqrt(nrm)));
}

TEST_CASE("prescribed solutions produce exact residuals") {
  for (std::size_t l : {std::size_t(2), std::size_t(3), std::size_t(5)}) {
    SaddleSystem sys = assemble_mac_stokes({l, 0.01});
    Vector u_star(sys.n());
    for (std::size_t i = 0; i < u_star.size(); ++i) u_star[i] = double(i + 1);
    rhs_from_solution(sys, u_star);

    const Vector u1(u_star.begin(), u_star.begin() + sys.p());
    const Vector u2(u_star.begin() + sys.p(), u_star.end());
    CHECK(relative_residual(sys, u1, u2) <= 1e-13);
    CHECK(relative_residual(sys, u_star) <= 1e-13);

    const Vector f = stacked_rhs(sys);
    REQUIRE(f.size() == sys.n());
    for (std::size_t i = 0; i < sys.p(); ++i) CHECK(f[i] == sys.f1[i]);
    for (std::size_t i = 0; i < sys.q(); ++i) CHECK(f[sys.p() + i] == sys.f2[i]);
  }
}

TEST_CASE("hermitian and triangular splits add up exactly") {
  std::mt19937 rng(17);
  const SaddleSystem stokes = assemble_mac_stokes({3, 1.0});
  const SaddleSystem rnd = random_saddle(9, 6, 4, rng);

  for (const SaddleSystem* sys : {&stokes, &rnd}) {
    const std::size_t p = sys->p(), n = sys->n();
    const DenseMatrix a = to_dense(assemble_full(*sys));
    const HermitianSplit hs = split_hermitian(*sys);
    const DenseMatrix h = to_dense(hs.h);
    const DenseMatrix s = to_dense(hs.s);

    // A = H + S, H = blockdiag(M, 0), S strictly off-diagonal blocks
    CHECK(max_abs_diff(add_scaled(h, 1.0, s), a) == 0.0);
    const DenseMatrix md = to_dense(sys->m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double want_h = (i < p && j < p) ? md(i, j) : 0.0;
        CHECK(h(i, j) == want_h);
      }
    CHECK(max_abs_diff(s, add_scaled(DenseMatrix(n, n), -1.0, transpose(s))) ==
          0.0); // skew

    // K_L + K_U = S entrywise, strict triangles only
    const DenseMatrix kl = to_dense(k_lower(*sys));
    const DenseMatrix ku = to_dense(k_upper(*sys));
    CHECK(max_abs_diff(add_scaled(kl, 1.0, ku), s) == 0.0);
    const DenseMatrix ed = to_dense(sys->e);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double want_l =
            (i >= p && j < p) ? -ed(j, i - p) : 0.0;
        const double want_u = (i < p && j >= p) ? ed(i, j - p) : 0.0;
        CHECK(kl(i, j) == want_l);
        CHECK(ku(i, j) == want_u);
      }
  }
}

TEST_CASE("generator rejects degenerate input") {
  CHECK_THROWS_AS(assemble_mac_stokes({1, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(assemble_mac_stokes({4, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(assemble_mac_stokes({4, -1.0}), InvalidArgument);

  SaddleSystem sys = assemble_mac_stokes({3, 1.0});
  Vector wrong(sys.n() + 1, 0.0);
  CHECK_THROWS_AS(rhs_from_solution(sys, wrong), InvalidArgument);
}

TEST_CASE("system validation catches inconsistent pieces") {
  SaddleSystem sys = assemble_mac_stokes({3, 1.0});
  sys.f1.pop_back();
  CHECK_THROWS_AS(sys.validate(), InvalidArgument);

  SaddleSystem asym = assemble_mac_stokes({3, 1.0});
  asym.m.val[1] += 0.5; // break symmetry
  CHECK_THROWS_AS(asym.validate(), InvalidArgument);
}
