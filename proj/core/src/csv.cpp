#include "sqg/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace sqg {

const char* const kTrajectoryHeader =
    "t,l2_g_sq,h3_g_sq,lam_alpha_h3_g_sq,dissipation_integral,linf_theta,"
    "linf_u,h3_forcing,i1,i2,i3,i4,ledger_residual,tail_fraction,"
    "paired_discrepancy";

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_cell(const std::string& s) {
  if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::size_t pos = 0;
  double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("malformed CSV number: '" + s + "'");
  return v;
}

}  // namespace

std::string format_trajectory_row(const DiagnosticsRecord& r) {
  std::string out = fmt(r.t);
  for (double v : {r.l2_g_sq, r.h3_g_sq, r.lam_alpha_h3_g_sq, r.dissipation_integral,
                   r.linf_theta, r.linf_u, r.h3_forcing, r.i1, r.i2, r.i3, r.i4,
                   r.ledger_residual, r.tail_fraction})
    out += "," + fmt(v);
  out += ",";
  if (!std::isnan(r.paired_discrepancy)) out += fmt(r.paired_discrepancy);
  return out;
}

DiagnosticsRecord parse_trajectory_row(const std::string& line) {
  const auto cells = split(line);
  if (cells.size() != 15)
    throw std::invalid_argument("trajectory row must have 15 columns, got " +
                                std::to_string(cells.size()));
  DiagnosticsRecord r;
  r.t = parse_cell(cells[0]);
  r.l2_g_sq = parse_cell(cells[1]);
  r.h3_g_sq = parse_cell(cells[2]);
  r.lam_alpha_h3_g_sq = parse_cell(cells[3]);
  r.dissipation_integral = parse_cell(cells[4]);
  r.linf_theta = parse_cell(cells[5]);
  r.linf_u = parse_cell(cells[6]);
  r.h3_forcing = parse_cell(cells[7]);
  r.i1 = parse_cell(cells[8]);
  r.i2 = parse_cell(cells[9]);
  r.i3 = parse_cell(cells[10]);
  r.i4 = parse_cell(cells[11]);
  r.ledger_residual = parse_cell(cells[12]);
  r.tail_fraction = parse_cell(cells[13]);
  r.paired_discrepancy = parse_cell(cells[14]);
  return r;
}

void write_trajectory_csv(const std::string& path,
                          const std::vector<DiagnosticsRecord>& recs) {
  std::ofstream out(path, std::ios::binary);  // binary: no newline translation
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << kTrajectoryHeader << "\n";
  for (const auto& r : recs) out << format_trajectory_row(r) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

void append_trajectory_csv(const std::string& path,
                           const std::vector<DiagnosticsRecord>& recs) {
  bool need_header = true;
  {
    std::ifstream probe(path, std::ios::binary);
    if (probe && probe.peek() != std::ifstream::traits_type::eof()) need_header = false;
  }
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw std::runtime_error("cannot open for append: " + path);
  if (need_header) out << kTrajectoryHeader << "\n";
  for (const auto& r : recs) out << format_trajectory_row(r) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<DiagnosticsRecord> read_trajectory_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty trajectory file: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTrajectoryHeader)
    throw std::runtime_error("unexpected trajectory header in " + path);
  std::vector<DiagnosticsRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(parse_trajectory_row(line));
  }
  return out;
}

void write_trial_csv(const std::string& path, const std::vector<TrialRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "trial_kind,seed,m_or_alpha,lhs,rhs,ratio\n";
  for (const auto& r : rows)
    out << r.trial_kind << "," << r.seed << "," << fmt(r.m_or_alpha) << ","
        << fmt(r.lhs) << "," << fmt(r.rhs) << "," << fmt(r.ratio) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace sqg
