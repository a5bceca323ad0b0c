#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <random>

#include "gsts/cholesky.hpp"
#include "gsts/dense.hpp"
#include "gsts/eig.hpp"
#include "gsts/errors.hpp"
#include "gsts/kernels.hpp"
#include "gsts/matrix_market.hpp"
#include "gsts/sparse.hpp"
#include "gsts/svd.hpp"

#include "helpers.hpp"

using namespace gsts;
using namespace gsts::testing;
namespace fs = std::filesystem;

namespace {

// Sizes chosen to hit empty input, partial SIMD lanes, and full blocks.
const std::size_t kLengths[] = {0, 1, 2, 3, 5, 7, 8, 9, 15, 16, 17, 31, 32, 33, 100, 257};

struct BackendGuard {
  kernels::Backend saved = kernels::active_backend();
  ~BackendGuard() { kernels::set_backend(saved); }
};

SparseMatrix random_sparse_spd(std::size_t n, std::mt19937& rng) {
  return from_dense(random_spd_dense(n, rng));
}

} // namespace

TEST_CASE("kernel variants agree with the scalar reference") {
  BackendGuard guard;
  std::mt19937 rng(11);

  for (kernels::Backend b : {kernels::Backend::avx2, kernels::Backend::neon}) {
    if (!kernels::backend_supported(b)) continue;
    CAPTURE(kernels::backend_name(b));

    for (std::size_t n : kLengths) {
      const Vector x = random_vector(n, rng);
      const Vector y = random_vector(n, rng);

      kernels::set_backend(kernels::Backend::scalar);
      const double dot_ref = kernels::dot(n, x.data(), y.data());
      const double nrm_ref = kernels::nrm2(n, x.data());
      Vector axpy_ref = y;
      kernels::axpy(n, 0.37, x.data(), axpy_ref.data());
      Vector scal_ref = x;
      kernels::scal(n, -1.91, scal_ref.data());
      Vector rx_ref = x, ry_ref = y;
      kernels::rot(n, rx_ref.data(), ry_ref.data(), 0.8, 0.6);

      kernels::set_backend(b);
      CHECK(kernels::active_backend() == b);
      const double dot_simd = kernels::dot(n, x.data(), y.data());
      const double nrm_simd = kernels::nrm2(n, x.data());
      Vector axpy_simd = y;
      kernels::axpy(n, 0.37, x.data(), axpy_simd.data());
      Vector scal_simd = x;
      kernels::scal(n, -1.91, scal_simd.data());
      Vector rx_simd = x, ry_simd = y;
      kernels::rot(n, rx_simd.data(), ry_simd.data(), 0.8, 0.6);

      // reductions may reassociate; elementwise ops differ by at most the
      // fused-multiply rounding
      CHECK(std::abs(dot_simd - dot_ref) <= 1e-12 * (1.0 + std::abs(dot_ref)));
      CHECK(std::abs(nrm_simd - nrm_ref) <= 1e-12 * (1.0 + nrm_ref));
      CHECK(max_abs_diff(axpy_simd, axpy_ref) <= 1e-14);
      CHECK(max_abs_diff(scal_simd, scal_ref) <= 1e-14);
      CHECK(max_abs_diff(rx_simd, rx_ref) <= 1e-14);
      CHECK(max_abs_diff(ry_simd, ry_ref) <= 1e-14);
    }
  }
}

TEST_CASE("kernel csr_matvec agrees across backends") {
  BackendGuard guard;
  std::mt19937 rng(12);
  const DenseMatrix ad = random_dense(37, 29, rng);
  const SparseMatrix a = from_dense(ad, 0.4); // drop entries for sparsity
  const Vector x = random_vector(29, rng);

  kernels::set_backend(kernels::Backend::scalar);
  Vector y_ref(37, 0.0);
  kernels::csr_matvec(a.rows, a.row_ptr.data(), a.col_idx.data(),
                      a.val.data(), x.data(), y_ref.data());

  for (kernels::Backend b : {kernels::Backend::avx2, kernels::Backend::neon}) {
    if (!kernels::backend_supported(b)) continue;
    kernels::set_backend(b);
    Vector y(37, 0.0);
    kernels::csr_matvec(a.rows, a.row_ptr.data(), a.col_idx.data(),
                        a.val.data(), x.data(), y.data());
    CHECK(max_abs_diff(y, y_ref) <= 1e-12);
  }
}

TEST_CASE("unsupported backends are rejected") {
  BackendGuard guard;
  CHECK(kernels::backend_supported(kernels::Backend::scalar));
  bool any_simd = false;
  for (kernels::Backend b : {kernels::Backend::avx2, kernels::Backend::neon}) {
    if (kernels::backend_supported(b))
      any_simd = true;
    else
      CHECK_THROWS_AS(kernels::set_backend(b), std::invalid_argument);
  }
  // AVX2 and NEON never coexist
  CHECK(!(kernels::backend_supported(kernels::Backend::avx2) &&
          kernels::backend_supported(kernels::Backend::neon)));
  CHECK(kernels::backend_name(kernels::active_backend()) != "");
  (void)any_simd;
}

TEST_CASE("dense products match hand loops") {
  std::mt19937 rng(21);
  const DenseMatrix a = random_dense(7, 5, rng);
  const DenseMatrix b = random_dense(5, 9, rng);

  const DenseMatrix c = matmul(a, b);
  REQUIRE(c.rows == 7);
  REQUIRE(c.cols == 9);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 9; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 5; ++k) s += a(i, k) * b(k, j);
      CHECK(c(i, j) == doctest::Approx(s).epsilon(1e-14));
    }

  const DenseMatrix at = transpose(a);
  CHECK(max_abs_diff(transpose(at), a) == 0.0);

  const Vector x = random_vector(5, rng);
  const Vector y1 = matvec(a, x);
  const Vector y2 = matvec_transpose(at, x);
  CHECK(max_abs_diff(y1, y2) <= 1e-15);

  const DenseMatrix s = add_scaled(a, -2.5, a); // (1 - 2.5) a
  for (std::size_t i = 0; i < s.data.size(); ++i)
    CHECK(s.data[i] == doctest::Approx(-1.5 * a.data[i]).epsilon(1e-15));
  CHECK(max_abs(add_scaled(a, -1.0, a)) == 0.0);

  CHECK(trace(DenseMatrix::identity(6)) == doctest::Approx(6.0));
  const DenseMatrix blk = block(a, 2, 1, 3, 2);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(blk(i, j) == a(2 + i, 1 + j));

  Vector col = column(a, 3);
  DenseMatrix a2 = a;
  set_column(a2, 0, col);
  CHECK(max_abs_diff(column(a2, 0), col) == 0.0);
}

TEST_CASE("gauss_jordan_inverse inverts and rejects singular input") {
  std::mt19937 rng(22);
  const DenseMatrix a = random_spd_dense(10, rng);
  const DenseMatrix ai = gauss_jordan_inverse(a);
  CHECK(max_abs_diff(matmul(a, ai), DenseMatrix::identity(10)) <= 1e-11);

  DenseMatrix sing(3, 3);
  sing(0, 0) = 1.0;
  sing(1, 1) = 1.0; // third row is zero
  CHECK_THROWS_AS(gauss_jordan_inverse(sing), InvalidArgument);
}

TEST_CASE("sparse construction, lookup, and conversions") {
  // duplicates sum, input order is irrelevant
  std::vector<Triplet> t = {{2, 1, 4.0}, {0, 0, 1.0}, {2, 1, -1.5}, {1, 2, 2.0}};
  const SparseMatrix a = from_triplets(3, 3, t);
  a.validate();
  CHECK(entry(a, 2, 1) == doctest::Approx(2.5));
  CHECK(entry(a, 0, 0) == doctest::Approx(1.0));
  CHECK(entry(a, 0, 1) == 0.0);
  CHECK(a.nnz() == 3);

  std::mt19937 rng(31);
  const DenseMatrix d = random_dense(8, 11, rng);
  const SparseMatrix s = from_dense(d, 0.5);
  s.validate();
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 11; ++j) {
      const double v = std::abs(d(i, j)) > 0.5 ? d(i, j) : 0.0;
      CHECK(entry(s, i, j) == v);
    }
  CHECK(max_abs_diff(to_dense(sparse_transpose(s)), transpose(to_dense(s))) == 0.0);

  const Vector x = random_vector(11, rng);
  CHECK(max_abs_diff(matvec(s, x), matvec(to_dense(s), x)) <= 1e-14);
  const Vector y = random_vector(8, rng);
  CHECK(max_abs_diff(matvec_transpose(s, y),
                     matvec_transpose(to_dense(s), y)) <= 1e-14);
}

TEST_CASE("sparse validate flags structural corruption") {
  SparseMatrix bad(2, 2);
  bad.row_ptr = {0, 2, 1}; // non-monotone
  bad.col_idx = {0, 1};
  bad.val = {1.0, 2.0};
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);

  SparseMatrix dup(1, 3);
  dup.row_ptr = {0, 2};
  dup.col_idx = {1, 1}; // not strictly increasing
  dup.val = {1.0, 1.0};
  CHECK_THROWS_AS(dup.validate(), InvalidArgument);

  SparseMatrix nan(1, 1);
  nan.row_ptr = {0, 1};
  nan.col_idx = {0};
  nan.val = {std::nan("")};
  CHECK_THROWS_AS(nan.validate(), InvalidArgument);
}

TEST_CASE("sparse arithmetic helpers match dense results") {
  std::mt19937 rng(32);
  const DenseMatrix ad = random_dense(9, 9, rng);
  const DenseMatrix bd = random_dense(9, 9, rng);
  const SparseMatrix a = from_dense(ad, 0.3);
  const SparseMatrix b = from_dense(bd, 0.6);

  const SparseMatrix c = add(2.0, a, -0.5, b);
  CHECK(max_abs_diff(to_dense(c),
                     add_scaled(add_scaled(DenseMatrix(9, 9), 2.0, to_dense(a)),
                                -0.5, to_dense(b))) <= 1e-15);

  const SparseMatrix tri = tridiagonal_part(a);
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j) {
      const double want = (i <= j + 1 && j <= i + 1) ? entry(a, i, j) : 0.0;
      CHECK(entry(tri, i, j) == want);
    }

  const SparseMatrix spd = random_sparse_spd(7, rng);
  CHECK(is_symmetric(spd, 0.0));
  CHECK(!is_symmetric(a, 1e-12));

  // E^T diag(d)^{-1} E against the dense triple product
  const DenseMatrix ed = random_dense(9, 5, rng);
  const SparseMatrix e = from_dense(ed, 0.4);
  Vector dvec = random_vector(9, rng);
  for (double& v : dvec) v = 1.5 + std::abs(v);
  const SparseMatrix np = normal_product_diag(e, dvec);
  DenseMatrix dinv_e = to_dense(e);
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 5; ++j) dinv_e(i, j) /= dvec[i];
  const DenseMatrix want = matmul(transpose(to_dense(e)), dinv_e);
  CHECK(max_abs_diff(to_dense(np), want) <= 1e-13);
  CHECK(is_symmetric(np, 1e-13));
}

TEST_CASE("svd reconstructs and orders singular values") {
  std::mt19937 rng(41);
  for (auto [m, n] : {std::pair<std::size_t, std::size_t>{50, 50},
                      {30, 50},
                      {50, 30},
                      {7, 7},
                      {1, 4}}) {
    const DenseMatrix a = random_dense(m, n, rng);
    const SvdFactor f = svd(a);
    REQUIRE(f.sigma.size() == std::min(m, n));
    for (std::size_t k = 0; k + 1 < f.sigma.size(); ++k)
      CHECK(f.sigma[k] >= f.sigma[k + 1]);
    CHECK(f.sigma.back() >= 0.0);

    DenseMatrix us(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < f.sigma.size(); ++k)
        us(i, k) = f.u(i, k) * f.sigma[k];
    const DenseMatrix rec = matmul(us, transpose(f.v));
    CHECK(frobenius_norm(add_scaled(rec, -1.0, a)) <=
          1e-10 * frobenius_norm(a));

    CHECK(max_abs_diff(matmul(transpose(f.u), f.u),
                       DenseMatrix::identity(m)) <= 1e-10);
    CHECK(max_abs_diff(matmul(transpose(f.v), f.v),
                       DenseMatrix::identity(n)) <= 1e-10);
  }
}

TEST_CASE("svd rank detection on constructed rank") {
  std::mt19937 rng(42);
  for (std::size_t r : {std::size_t(1), std::size_t(3), std::size_t(6)}) {
    const DenseMatrix a = random_rank_deficient(12, 8, r, rng);
    CHECK(rank_of(a) == r);
  }
  CHECK(rank_of(DenseMatrix(5, 5)) == 0);
}

TEST_CASE("pseudoinverse satisfies the Penrose identities") {
  std::mt19937 rng(43);
  const DenseMatrix a = random_rank_deficient(10, 7, 4, rng);
  const PseudoInverseFactor f = pseudo_inverse(a);
  CHECK(f.rank == 4);
  CHECK(f.null_dim() == 3);

  const DenseMatrix ap = pinv_materialize(f);
  const DenseMatrix axa = matmul(a, matmul(ap, a));
  const DenseMatrix xax = matmul(ap, matmul(a, ap));
  const DenseMatrix ax = matmul(a, ap);
  const DenseMatrix xa = matmul(ap, a);
  CHECK(max_abs_diff(axa, a) <= 1e-10);
  CHECK(max_abs_diff(xax, ap) <= 1e-10);
  CHECK(max_abs_diff(ax, transpose(ax)) <= 1e-10);
  CHECK(max_abs_diff(xa, transpose(xa)) <= 1e-10);

  const Vector b = random_vector(10, rng);
  const Vector x = pinv_apply(f, b);
  CHECK(max_abs_diff(x, matvec(ap, b)) <= 1e-12);
  // minimum-norm solution is orthogonal to the null space
  for (std::size_t k = 0; k < f.null_dim(); ++k) {
    const Vector nk = f.null_basis_column(k);
    double dot = 0.0, an = 0.0;
    const Vector ank = matvec(a, nk);
    for (std::size_t i = 0; i < 7; ++i) dot += x[i] * nk[i];
    for (double v : ank) an += v * v;
    CHECK(std::abs(dot) <= 1e-10);
    CHECK(std::sqrt(an) <= 1e-10 * frobenius_norm(a));
  }
}

TEST_CASE("symmetric eigendecomposition reconstructs") {
  std::mt19937 rng(51);
  DenseMatrix a = random_dense(14, 14, rng);
  for (std::size_t i = 0; i < 14; ++i)
    for (std::size_t j = i + 1; j < 14; ++j) a(j, i) = a(i, j);
  const SymmetricEigen se = symmetric_eigen(a);
  for (std::size_t k = 0; k + 1 < se.lambda.size(); ++k)
    CHECK(se.lambda[k] <= se.lambda[k + 1]);
  CHECK(max_abs_diff(matmul(transpose(se.q), se.q),
                     DenseMatrix::identity(14)) <= 1e-10);
  DenseMatrix ql(14, 14);
  for (std::size_t i = 0; i < 14; ++i)
    for (std::size_t k = 0; k < 14; ++k) ql(i, k) = se.q(i, k) * se.lambda[k];
  CHECK(max_abs_diff(matmul(ql, transpose(se.q)), a) <= 1e-10);
}

TEST_CASE("general eigenvalues on known spectra") {
  // triangular: eigenvalues are the diagonal
  DenseMatrix t(4, 4);
  const double diag[] = {3.0, -1.0, 0.5, 2.0};
  for (std::size_t i = 0; i < 4; ++i) {
    t(i, i) = diag[i];
    for (std::size_t j = i + 1; j < 4; ++j) t(i, j) = 1.0;
  }
  auto ev = eigvals(t);
  REQUIRE(ev.size() == 4);
  // sorted by descending real part
  CHECK(ev[0].real() == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(ev[1].real() == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(ev[2].real() == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(ev[3].real() == doctest::Approx(-1.0).epsilon(1e-10));
  for (const auto& e : ev) CHECK(std::abs(e.imag()) <= 1e-10);

  // rotation generator: +-i
  DenseMatrix r(2, 2);
  r(0, 1) = 1.0;
  r(1, 0) = -1.0;
  auto evr = eigvals(r);
  REQUIRE(evr.size() == 2);
  CHECK(std::abs(evr[0] - std::complex<double>(0.0, 1.0)) <= 1e-12);
  CHECK(std::abs(evr[1] - std::complex<double>(0.0, -1.0)) <= 1e-12);

  // symmetric case agrees with the symmetric solver
  std::mt19937 rng(52);
  DenseMatrix a = random_dense(9, 9, rng);
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = i + 1; j < 9; ++j) a(j, i) = a(i, j);
  auto eva = eigvals(a);
  const SymmetricEigen se = symmetric_eigen(a);
  std::vector<double> re;
  for (const auto& e : eva) {
    CHECK(std::abs(e.imag()) <= 1e-8);
    re.push_back(e.real());
  }
  std::sort(re.begin(), re.end());
  for (std::size_t k = 0; k < 9; ++k)
    CHECK(re[k] == doctest::Approx(se.lambda[k]).epsilon(1e-8));
}

TEST_CASE("pseudo spectral radius excludes the unit eigenvalue") {
  DenseMatrix d(3, 3);
  d(0, 0) = 1.0;
  d(1, 1) = 0.5;
  d(2, 2) = -0.25;
  CHECK(spectral_radius(d) == doctest::Approx(1.0));
  CHECK(pseudo_spectral_radius(d) == doctest::Approx(0.5));

  // never exceeds the spectral radius; equal when nothing is near 1
  std::mt19937 rng(53);
  for (int trial = 0; trial < 5; ++trial) {
    const DenseMatrix a = random_dense(8, 8, rng);
    const auto ev = eigvals(a);
    const double sr = spectral_radius(a);
    const double gamma = pseudo_spectral_radius(ev);
    CHECK(gamma <= sr + 1e-12);
    bool near_one = false;
    for (const auto& e : ev)
      if (std::abs(e - std::complex<double>(1.0, 0.0)) <= 1e-8) near_one = true;
    if (!near_one) CHECK(gamma == doctest::Approx(sr).epsilon(1e-12));
  }
}

TEST_CASE("envelope cholesky is a direct solver") {
  std::mt19937 rng(61);
  const SparseMatrix a = random_sparse_spd(20, rng);
  const SpdFactor f = SpdFactor::compute(a);
  CHECK(f.size() == 20);
  CHECK(f.profile() >= 20);

  const Vector b = random_vector(20, rng);
  const Vector x = f.solve(b);
  const Vector want = matvec(gauss_jordan_inverse(to_dense(a)), b);
  CHECK(max_abs_diff(x, want) <= 1e-9);

  Vector y = b;
  f.solve_in_place(y);
  CHECK(max_abs_diff(y, x) == 0.0);

  // round trip per the solver contract
  const Vector xs = random_vector(20, rng);
  const Vector bs = matvec(a, xs);
  const Vector back = spd_solve(a, bs);
  double scale = 0.0;
  for (double v : xs) scale = std::max(scale, std::abs(v));
  CHECK(max_abs_diff(back, xs) <= 1e-9 * scale);
}

TEST_CASE("cholesky rejects indefinite matrices with the pivot index") {
  DenseMatrix bad = DenseMatrix::identity(4);
  bad(2, 2) = -1.0;
  try {
    SpdFactor::compute(from_dense(bad));
    FAIL("expected NotPositiveDefinite");
  } catch (const NotPositiveDefinite& e) {
    CHECK(e.pivot == 2);
  }
}

TEST_CASE("dense and tridiagonal factorizations solve") {
  std::mt19937 rng(62);
  const DenseMatrix a = random_spd_dense(12, rng);
  const DenseCholesky dc = DenseCholesky::compute(a);
  CHECK(dc.size() == 12);
  const Vector b = random_vector(12, rng);
  CHECK(max_abs_diff(dc.solve(b), matvec(gauss_jordan_inverse(a), b)) <= 1e-10);

  // SPD tridiagonal via triplets
  const std::size_t n = 15;
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < n; ++i) {
    t.push_back({i, i, 3.0});
    if (i + 1 < n) {
      t.push_back({i, i + 1, -1.0});
      t.push_back({i + 1, i, -1.0});
    }
  }
  const SparseMatrix tri = from_triplets(n, n, t);
  const TridiagFactor tf = TridiagFactor::compute(tri);
  CHECK(tf.size() == n);
  const Vector bt = random_vector(n, rng);
  CHECK(max_abs_diff(tf.solve(bt),
                     matvec(gauss_jordan_inverse(to_dense(tri)), bt)) <= 1e-11);
}

TEST_CASE("matrix market and vector files round trip") {
  const fs::path dir = fs::temp_directory_path() / "gsts-ut-io";
  fs::remove_all(dir);
  fs::create_directories(dir);

  std::mt19937 rng(71);
  const SparseMatrix a = from_dense(random_dense(9, 6, rng), 0.3);
  write_matrix_market(a, dir / "a.mtx");
  const SparseMatrix a2 = read_matrix_market(dir / "a.mtx");
  REQUIRE(a2.rows == a.rows);
  REQUIRE(a2.cols == a.cols);
  CHECK(a2.row_ptr == a.row_ptr);
  CHECK(a2.col_idx == a.col_idx);
  CHECK(a2.val == a.val); // 17 digits: value-exact

  const SparseMatrix s = random_sparse_spd(8, rng);
  write_matrix_market(s, dir / "s.mtx", /*symmetric=*/true);
  const SparseMatrix s2 = read_matrix_market(dir / "s.mtx");
  CHECK(max_abs_diff(to_dense(s2), to_dense(s)) == 0.0);

  const Vector v = random_vector(13, rng);
  write_vector(v, dir / "v.vec");
  CHECK(read_vector(dir / "v.vec") == v);

  // repeated writes are byte-identical
  write_matrix_market(a, dir / "a2.mtx");
  std::ifstream f1(dir / "a.mtx", std::ios::binary);
  std::ifstream f2(dir / "a2.mtx", std::ios::binary);
  std::string c1((std::istreambuf_iterator<char>(f1)), {});
  std::string c2((std::istreambuf_iterator<char>(f2)), {});
  CHECK(c1 == c2);

  Manifest m{5, 0.01, 40, 25};
  write_manifest(m, dir / "manifest.txt");
  const Manifest m2 = read_manifest(dir / "manifest.txt");
  CHECK(m2.l == m.l);
  CHECK(m2.nu == m.nu);
  CHECK(m2.p == m.p);
  CHECK(m2.q == m.q);

  fs::remove_all(dir);
}

TEST_CASE("malformed files raise parse errors") {
  const fs::path dir = fs::temp_directory_path() / "gsts-ut-bad";
  fs::remove_all(dir);
  fs::create_directories(dir);

  {
    std::ofstream out(dir / "bad.mtx");
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << "2 2 1\n";
    out << "3 1 5.0\n"; // row index out of range
  }
  CHECK_THROWS_AS(read_matrix_market(dir / "bad.mtx"), ParseError);

  {
    std::ofstream out(dir / "bad.vec");
    out << "1.5\nnot-a-number\n";
  }
  CHECK_THROWS_AS(read_vector(dir / "bad.vec"), ParseError);

  CHECK_THROWS_AS(read_matrix_market(dir / "missing.mtx"), ParseError);

  fs::remove_all(dir);
}

TEST_CASE("problem save and load round trip") {
  const fs::path dir = fs::temp_directory_path() / "gsts-ut-prob";
  fs::remove_all(dir);
  fs::create_directories(dir);

  SaddleSystem sys = assemble_mac_stokes({3, 0.01});
  Manifest m{3, 0.01, sys.p(), sys.q()};
  save_problem(sys, m, dir);

  Manifest m2;
  const SaddleSystem back = load_problem(dir, &m2);
  CHECK(m2.l == 3);
  CHECK(m2.nu == 0.01);
  CHECK(back.m.val == sys.m.val);
  CHECK(back.m.col_idx == sys.m.col_idx);
  CHECK(back.e.val == sys.e.val);
  CHECK(back.f1 == sys.f1);
  CHECK(back.f2 == sys.f2);
  back.validate();

  fs::remove_all(dir);
}
