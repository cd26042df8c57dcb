#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "sls/exp/metrics.h"
#include "sls/exp/runner.h"

namespace sls::exp {

inline constexpr const char* kTraceHeader =
    "time_s,flow_id,cwnd,ssthresh,phase,highest_seq_sent,highest_acked,queue_pkts,n_est";
inline constexpr const char* kMetricsHeader =
    "scenario_id,controller,window_start_s,window_end_s,utilization,highest_seq_sent,"
    "throughput_bps,throughput_ratio,jain,drops";

// Reals use fixed 6-decimal formatting; a missing n_est or ratio is an
// empty field.
std::string FormatTraceRecord(const TraceRecord& r);
std::string FormatMetricsRow(const MetricsReport& m);

void WriteTrace(std::ostream& out, const std::vector<TraceRecord>& records);
void WriteMetrics(std::ostream& out, const std::vector<MetricsReport>& rows);

// Return false (and fill *error) if the destination cannot be written.
bool EmitTrace(const std::vector<TraceRecord>& records, const std::filesystem::path& path,
               std::string* error = nullptr);
bool EmitMetrics(const std::vector<MetricsReport>& rows, const std::filesystem::path& path,
                 std::string* error = nullptr);

// Parses a metrics CSV written by WriteMetrics. Throws std::runtime_error on
// a malformed header or row.
std::vector<MetricsReport> ReadMetrics(std::istream& in);

}  // namespace sls::exp
