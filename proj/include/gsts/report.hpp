#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gsts {

// One experiment row.  col_omega / col_tau carry the two method-dependent
// parameter columns of the benchmark tables (omega2 and omega1 = tau for
// the GSTS methods; omega1 = tau and nu_g for the GSOR methods); alpha is
// the HSS shift.  cpu stays empty unless timing was requested so that
// default output is byte-reproducible.
struct ReportRow {
  std::string method;
  std::optional<double> col_omega;
  std::optional<double> col_tau;
  std::optional<double> alpha;
  std::optional<std::size_t> restart;
  std::size_t iterations = 0;
  std::optional<double> cpu_seconds;
  double res = 0.0;
  std::string status; // converged | diverged | maxit | breakdown
};

// RFC-4180: CRLF line endings, quoting only where required.  Numeric
// fields are printed with 17 significant digits so a parse round-trips
// exactly.
std::string csv_header();
std::string csv_line(const ReportRow& row);
ReportRow parse_csv_line(const std::string& line);

// Markdown row in the benchmark-table layout
//   | method | omega | tau | IT | CPU | RES |
std::string markdown_header();
std::string markdown_line(const ReportRow& row);

// Appends a line, creating the file with the header when absent.
void append_report_line(const std::string& path, const std::string& header,
                        const std::string& line);

} // namespace gsts
