#include "gsts/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gsts/errors.hpp"

namespace gsts {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Splits one CSV record; handles quoted fields and doubled quotes.
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  std::size_t i = 0;
  const std::size_t n =
      line.size() >= 2 && line.compare(line.size() - 2, 2, "\r\n") == 0
          ? line.size() - 2
          : (!line.empty() && line.back() == '\r' ? line.size() - 1
                                                  : line.size());
  while (i < n) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < n && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
    ++i;
  }
  fields.push_back(cur);
  return fields;
}

std::optional<double> parse_opt_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::stod(s);
}

} // namespace

std::string csv_header() {
  return "method,omega,tau,alpha,restart,IT,CPU,RES,status\r\n";
}

std::string csv_line(const ReportRow& row) {
  std::ostringstream os;
  os << quote_if_needed(row.method) << ',';
  if (row.col_omega) os << fmt17(*row.col_omega);
  os << ',';
  if (row.col_tau) os << fmt17(*row.col_tau);
  os << ',';
  if (row.alpha) os << fmt17(*row.alpha);
  os << ',';
  if (row.restart) os << *row.restart;
  os << ',' << row.iterations << ',';
  if (row.cpu_seconds) os << fmt17(*row.cpu_seconds);
  os << ',' << fmt17(row.res) << ',' << quote_if_needed(row.status)
     << "\r\n";
  return os.str();
}

ReportRow parse_csv_line(const std::string& line) {
  const std::vector<std::string> f = split_csv(line);
  if (f.size() != 9)
    throw ParseError("csv row: expected 9 fields, got " +
                     std::to_string(f.size()));
  ReportRow row;
  row.method = f[0];
  row.col_omega = parse_opt_double(f[1]);
  row.col_tau = parse_opt_double(f[2]);
  row.alpha = parse_opt_double(f[3]);
  if (!f[4].empty()) row.restart = std::stoul(f[4]);
  row.iterations = std::stoul(f[5]);
  row.cpu_seconds = parse_opt_double(f[6]);
  row.res = std::stod(f[7]);
  row.status = f[8];
  return row;
}

std::string markdown_header() {
  return "| method | omega | tau | IT | CPU | RES |\n"
         "|---|---|---|---|---|---|\n";
}

std::string markdown_line(const ReportRow& row) {
  char res[32];
  std::snprintf(res, sizeof(res), "%.4e", row.res);
  std::ostringstream os;
  os << "| " << row.method << " | ";
  if (row.col_omega) {
    char b[32];
    std::snprintf(b, sizeof(b), "%.4g", *row.col_omega);
    os << b;
  }
  os << " | ";
  if (row.col_tau) {
    char b[32];
    std::snprintf(b, sizeof(b), "%.4g", *row.col_tau);
    os << b;
  }
  os << " | " << row.iterations << " | ";
  if (row.cpu_seconds) {
    char b[32];
    std::snprintf(b, sizeof(b), "%.4f", *row.cpu_seconds);
    os << b;
  }
  os << " | " << res;
  if (row.status != "converged") os << " (" << row.status << ")";
  os << " |\n";
  return os.str();
}

void append_report_line(const std::string& path, const std::string& header,
                        const std::string& line) {
  const bool fresh = !std::filesystem::exists(path) ||
                     std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::app | std::ios::binary);
  if (!out) throw InvalidArgument("cannot open report file: " + path);
  if (fresh) out << header;
  out << line;
  if (!out) throw InvalidArgument("cannot write report file: " + path);
}

} // namespace gsts
