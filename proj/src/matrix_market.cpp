#include "gsts/matrix_market.hpp"

#include <cctype>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gsts/errors.hpp"

namespace gsts {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void parse_fail(const std::filesystem::path& path, std::size_t line,
                             const std::string& why) {
  throw ParseError(path.string() + ":" + std::to_string(line) + ": " + why);
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

} // namespace

void write_matrix_market(const SparseMatrix& a, const std::filesystem::path& path,
                         bool symmetric) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open for writing: " + path.string());
  out << "%%MatrixMarket matrix coordinate real "
      << (symmetric ? "symmetric" : "general") << "\n";
  std::size_t count = 0;
  if (symmetric) {
    if (a.rows != a.cols)
      throw InvalidArgument("matrix market: symmetric output needs a square matrix");
    for (std::size_t i = 0; i < a.rows; ++i)
      for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
        if (a.col_idx[k] <= i) ++count;
  } else {
    count = a.nnz();
  }
  out << a.rows << " " << a.cols << " " << count << "\n";
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      const std::size_t j = a.col_idx[k];
      if (symmetric && j > i) continue;
      out << (i + 1) << " " << (j + 1) << " " << fmt17(a.val[k]) << "\n";
    }
  if (!out) throw ParseError("write failed: " + path.string());
}

SparseMatrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open: " + path.string());
  std::string line;
  std::size_t lineno = 0;

  if (!std::getline(in, line)) parse_fail(path, 1, "empty file");
  ++lineno;
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket") parse_fail(path, lineno, "missing banner");
  if (lower(object) != "matrix" || lower(format) != "coordinate")
    parse_fail(path, lineno, "only coordinate matrices are supported");
  if (lower(field) != "real")
    parse_fail(path, lineno, "only real entries are supported");
  const std::string sym = lower(symmetry);
  if (sym != "general" && sym != "symmetric")
    parse_fail(path, lineno, "unsupported symmetry kind: " + symmetry);

  std::size_t rows = 0, cols = 0, nnz = 0;
  bool sized = false;
  std::vector<Triplet> t;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '%') continue;
    std::istringstream ls(line);
    if (!sized) {
      if (!(ls >> rows >> cols >> nnz))
        parse_fail(path, lineno, "malformed size line");
      sized = true;
      t.reserve(nnz);
      continue;
    }
    std::size_t i, j;
    double v;
    if (!(ls >> i >> j >> v)) parse_fail(path, lineno, "malformed entry");
    if (i < 1 || i > rows || j < 1 || j > cols)
      parse_fail(path, lineno, "index out of range");
    t.push_back({i - 1, j - 1, v});
    if (sym == "symmetric") {
      if (j > i) parse_fail(path, lineno, "symmetric entry above the diagonal");
      if (i != j) t.push_back({j - 1, i - 1, v});
    }
  }
  if (!sized) parse_fail(path, lineno, "missing size line");
  const std::size_t base = (sym == "symmetric") ? 0 : t.size();
  if (sym != "symmetric" && base != nnz)
    parse_fail(path, lineno, "entry count disagrees with the size line");
  return from_triplets(rows, cols, std::move(t));
}

void write_vector(const Vector& v, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open for writing: " + path.string());
  for (double x : v) out << fmt17(x) << "\n";
  if (!out) throw ParseError("write failed: " + path.string());
}

Vector read_vector(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open: " + path.string());
  Vector v;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    double x;
    if (!(ls >> x)) parse_fail(path, lineno, "malformed vector entry");
    v.push_back(x);
  }
  return v;
}

void write_manifest(const Manifest& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open for writing: " + path.string());
  out << "l=" << m.l << "\n";
  out << "nu=" << fmt17(m.nu) << "\n";
  out << "p=" << m.p << "\n";
  out << "q=" << m.q << "\n";
}

Manifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open: " + path.string());
  Manifest m;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) parse_fail(path, lineno, "expected key=value");
    const std::string key = line.substr(0, eq);
    const std::string val = line.substr(eq + 1);
    std::istringstream vs(val);
    if (key == "l") vs >> m.l;
    else if (key == "nu") vs >> m.nu;
    else if (key == "p") vs >> m.p;
    else if (key == "q") vs >> m.q;
    else parse_fail(path, lineno, "unknown manifest key: " + key);
    if (vs.fail()) parse_fail(path, lineno, "malformed value for key " + key);
  }
  return m;
}

void save_problem(const SaddleSystem& sys, const Manifest& m,
                  const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_matrix_market(sys.m, dir / "M.mtx", /*symmetric=*/true);
  write_matrix_market(sys.e, dir / "E.mtx", /*symmetric=*/false);
  Vector f = sys.f1;
  f.insert(f.end(), sys.f2.begin(), sys.f2.end());
  write_vector(f, dir / "f.vec");
  write_manifest(m, dir / "manifest.txt");
}

SaddleSystem load_problem(const std::filesystem::path& dir, Manifest* out_manifest) {
  SaddleSystem sys;
  sys.m = read_matrix_market(dir / "M.mtx");
  sys.e = read_matrix_market(dir / "E.mtx");
  const Vector f = read_vector(dir / "f.vec");
  if (f.size() != sys.m.rows + sys.e.cols)
    throw ParseError("load_problem: f.vec length disagrees with M and E");
  sys.f1.assign(f.begin(), f.begin() + sys.m.rows);
  sys.f2.assign(f.begin() + sys.m.rows, f.end());
  sys.validate();
  if (out_manifest) *out_manifest = read_manifest(dir / "manifest.txt");
  return sys;
}

} // namespace gsts
