#pragma once

#include <filesystem>
#include <string>

#include "gsts/problem.hpp"
#include "gsts/sparse.hpp"

namespace gsts {

// Matrix Market coordinate I/O, real entries only.  Writers print 17
// significant digits so that read(write(A)) is value-exact and repeated
// writes are byte-identical.  Readers throw ParseError with the offending
// line number.

void write_matrix_market(const SparseMatrix& a, const std::filesystem::path& path,
                         bool symmetric = false);
SparseMatrix read_matrix_market(const std::filesystem::path& path);

// Plain vectors: one value per line, 17 significant digits.
void write_vector(const Vector& v, const std::filesystem::path& path);
Vector read_vector(const std::filesystem::path& path);

// Problem manifest: "key=value" lines for l, nu, p, q.
struct Manifest {
  std::size_t l = 0;
  double nu = 0.0;
  std::size_t p = 0;
  std::size_t q = 0;
};
void write_manifest(const Manifest& m, const std::filesystem::path& path);
Manifest read_manifest(const std::filesystem::path& path);

// Writes M.mtx (symmetric), E.mtx (general), f.vec (f1 then f2) and
// manifest.txt into dir; load_problem reads them back.
void save_problem(const SaddleSystem& sys, const Manifest& m,
                  const std::filesystem::path& dir);
SaddleSystem load_problem(const std::filesystem::path& dir, Manifest* out_manifest = nullptr);

} // namespace gsts
