#include "sls/exp/sweep.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "sls/config_error.h"
#include "sls/exp/runner.h"

namespace sls::exp {

SweepAxis ParseSweepAxis(const std::string& name) {
  if (name == "buffer") return SweepAxis::kBuffer;
  if (name == "delay") return SweepAxis::kDelay;
  if (name == "bandwidth") return SweepAxis::kBandwidth;
  throw ConfigError("unknown sweep axis '" + name + "' (buffer, delay, bandwidth)");
}

std::string_view ToString(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kBuffer:
      return "buffer";
    case SweepAxis::kDelay:
      return "delay";
    case SweepAxis::kBandwidth:
      return "bandwidth";
  }
  return "unknown";
}

ScenarioConfig SweepPointConfig(SweepAxis axis, double value, const std::string& variant,
                                double horizon_s) {
  ScenarioConfig cfg = DefaultScenario();
  cfg.horizon_s = horizon_s;
  switch (axis) {
    case SweepAxis::kBuffer:
      if (!(value >= 1.0)) throw ConfigError("buffer sweep value must be >= 1 packet");
      cfg.buffer_pkts = static_cast<std::size_t>(std::lround(value));
      break;
    case SweepAxis::kDelay:
      if (!(value > 0.0)) throw ConfigError("delay sweep value must be positive");
      cfg.bottleneck_oneway_delay_s = value / 1000.0;
      cfg.buffer_pkts = static_cast<std::size_t>(std::max(1L, std::lround(BdpPackets(cfg) / 2.0)));
      break;
    case SweepAxis::kBandwidth:
      if (!(value > 0.0)) throw ConfigError("bandwidth sweep value must be positive");
      cfg.bottleneck_bw_bps = value * 1e6;
      cfg.buffer_pkts = static_cast<std::size_t>(std::max(1L, std::lround(BdpPackets(cfg) / 2.0)));
      break;
  }
  cfg.flows = {Variant(variant, cfg)};
  char id[96];
  std::snprintf(id, sizeof id, "%s=%g/%s", std::string(ToString(axis)).c_str(), value,
                variant.c_str());
  cfg.id = id;
  return cfg;
}

std::map<std::pair<double, std::string>, SweepPoint> Sweep(SweepAxis axis,
                                                           const std::vector<double>& values,
                                                           const std::vector<std::string>& variants,
                                                           const SweepOptions& options) {
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  if (variants.empty()) throw ConfigError("sweep needs at least one controller");
  for (const auto& v : variants) {
    if (!IsKnownVariant(v)) throw ConfigError("unknown sweep controller '" + v + "'");
  }

  std::vector<std::pair<double, std::string>> jobs;
  for (double value : values) {
    for (const auto& v : variants) jobs.emplace_back(value, v);
  }

  std::map<std::pair<double, std::string>, SweepPoint> results;
  std::mutex mu;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      const auto& [value, variant] = jobs[j];
      SweepPoint point;
      point.value = value;
      point.variant = variant;
      try {
        const ScenarioConfig cfg = SweepPointConfig(axis, value, variant, options.horizon_s);
        RunOptions ro;
        ro.collect_drops = false;
        RunResult r = RunScenario(cfg, ro);
        point.report = r.metrics.front();
      } catch (const std::exception& e) {
        point.error = e.what();
      }
      std::lock_guard<std::mutex> lock(mu);
      results[{value, variant}] = std::move(point);
    }
  };
  unsigned threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(jobs.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (auto& [key, point] : results) {
    auto ref = results.find({key.first, options.reference_variant});
    if (ref == results.end() || !ref->second.error.empty() || !point.error.empty()) continue;
    const double mine = point.report.throughput_bps;
    point.report.throughput_ratio = mine > 0.0
                                        ? ref->second.report.throughput_bps / mine
                                        : std::numeric_limits<double>::infinity();
  }
  return results;
}

}  // namespace sls::exp
