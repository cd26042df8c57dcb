#include "sls/exp/csv.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sls::exp {

namespace {

std::string Fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <typename Fn>
bool WriteFile(const std::filesystem::path& path, std::string* error, Fn&& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    if (error) *error = "cannot open " + path.string() + " for writing";
    return false;
  }
  body(out);
  out.flush();
  if (!out) {
    if (error) *error = "write to " + path.string() + " failed";
    return false;
  }
  return true;
}

}  // namespace

std::string FormatTraceRecord(const TraceRecord& r) {
  std::string s;
  s += Fixed6(r.time_s);
  s += ',' + std::to_string(r.flow_id);
  s += ',' + Fixed6(r.cwnd);
  s += ',' + Fixed6(r.ssthresh);
  s += ',';
  s += cc::ToString(r.phase);
  s += ',' + std::to_string(r.highest_seq_sent);
  s += ',' + std::to_string(r.highest_acked);
  s += ',' + std::to_string(r.queue_pkts);
  s += ',';
  if (r.n_est) s += Fixed6(*r.n_est);
  return s;
}

std::string FormatMetricsRow(const MetricsReport& m) {
  std::string s = m.scenario_id + ',' + m.controller;
  s += ',' + Fixed6(m.window_start_s);
  s += ',' + Fixed6(m.window_end_s);
  s += ',' + Fixed6(m.utilization);
  s += ',' + std::to_string(m.highest_seq_sent);
  s += ',' + Fixed6(m.throughput_bps);
  s += ',';
  if (!std::isnan(m.throughput_ratio)) s += Fixed6(m.throughput_ratio);
  s += ',' + Fixed6(m.jain);
  s += ',' + std::to_string(m.drops);
  return s;
}

void WriteTrace(std::ostream& out, const std::vector<TraceRecord>& records) {
  out << kTraceHeader << '\n';
  for (const auto& r : records) out << FormatTraceRecord(r) << '\n';
}

void WriteMetrics(std::ostream& out, const std::vector<MetricsReport>& rows) {
  out << kMetricsHeader << '\n';
  for (const auto& m : rows) out << FormatMetricsRow(m) << '\n';
}

bool EmitTrace(const std::vector<TraceRecord>& records, const std::filesystem::path& path,
               std::string* error) {
  return WriteFile(path, error, [&](std::ostream& out) { WriteTrace(out, records); });
}

bool EmitMetrics(const std::vector<MetricsReport>& rows, const std::filesystem::path& path,
                 std::string* error) {
  return WriteFile(path, error, [&](std::ostream& out) { WriteMetrics(out, rows); });
}

std::vector<MetricsReport> ReadMetrics(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kMetricsHeader) {
    throw std::runtime_error("not a metrics CSV (header mismatch)");
  }
  std::vector<MetricsReport> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = SplitCsv(line);
    if (cells.size() != 10) {
      throw std::runtime_error("metrics CSV line " + std::to_string(line_no) + ": expected 10 fields");
    }
    try {
      MetricsReport m;
      m.scenario_id = cells[0];
      m.controller = cells[1];
      m.window_start_s = std::stod(cells[2]);
      m.window_end_s = std::stod(cells[3]);
      m.utilization = std::stod(cells[4]);
      m.highest_seq_sent = std::stoll(cells[5]);
      m.throughput_bps = std::stod(cells[6]);
      if (!cells[7].empty()) m.throughput_ratio = std::stod(cells[7]);
      m.jain = std::stod(cells[8]);
      m.drops = std::stoull(cells[9]);
      rows.push_back(m);
    } catch (const std::logic_error&) {
      throw std::runtime_error("metrics CSV line " + std::to_string(line_no) + ": bad number");
    }
  }
  return rows;
}

}  // namespace sls::exp
