#include "sls/exp/metrics.h"

#include <algorithm>

namespace sls::exp {

double ComputeLinkUtilization(double delivered_payload_bits, double bw_bps, double window_s) {
  if (!(window_s > 0.0) || !(bw_bps > 0.0)) return 0.0;
  return std::clamp(delivered_payload_bits / (bw_bps * window_s), 0.0, 1.0);
}

double JainFairness(std::span<const double> throughputs) {
  if (throughputs.empty()) return 1.0;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double x : throughputs) {
    sum += x;
    sum_sq += x * x;
  }
  if (sum_sq == 0.0) return 1.0;
  return sum * sum / (static_cast<double>(throughputs.size()) * sum_sq);
}

}  // namespace sls::exp
