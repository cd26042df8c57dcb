// slssim: run dumbbell startup experiments and summarize their metrics.
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sls/config_error.h"
#include "sls/exp/config_file.h"
#include "sls/exp/csv.h"
#include "sls/exp/runner.h"
#include "sls/exp/scenario.h"
#include "sls/exp/sweep.h"

namespace fs = std::filesystem;
using namespace sls::exp;

namespace {

// Scenario ids may contain '/', '=' etc.; keep file names flat.
std::string FileStem(const std::string& id) {
  std::string s = id;
  for (char& c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')) c = '_';
  }
  return s;
}

void EnsureDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
}

void WriteOrThrow(bool ok, const std::string& error) {
  if (!ok) throw std::runtime_error(error);
}

std::string Ratio(double r) {
  if (std::isnan(r)) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", r);
  return buf;
}

void PrintTable(std::ostream& out, const std::vector<MetricsReport>& rows) {
  char line[256];
  std::snprintf(line, sizeof line, "%-28s %-16s %-14s %7s %12s %10s %7s %8s\n", "scenario",
                "controller", "window", "util", "highest_seq", "thr_Mbps", "ratio", "drops");
  out << line;
  for (const auto& m : rows) {
    char win[32];
    std::snprintf(win, sizeof win, "[%g,%g]", m.window_start_s, m.window_end_s);
    std::snprintf(line, sizeof line, "%-28s %-16s %-14s %7.3f %12lld %10.3f %7s %8llu\n",
                  m.scenario_id.c_str(), m.controller.c_str(), win, m.utilization,
                  static_cast<long long>(m.highest_seq_sent), m.throughput_bps / 1e6,
                  Ratio(m.throughput_ratio).c_str(), static_cast<unsigned long long>(m.drops));
    out << line;
  }
}

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dumbbell simulator for TCP startup algorithms"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run a scenario file or a named preset");
  std::string scenario_file, preset, out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<double> horizon;
  auto* src = run->add_option_group("source");
  src->add_option("--scenario", scenario_file, "YAML scenario file")->check(CLI::ExistingFile);
  src->add_option("--preset", preset, "named preset (see list-presets)");
  src->require_option(1);
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--seed", seed, "override the scenario seed");
  run->add_option("--horizon", horizon, "override the horizon in seconds")
      ->check(CLI::PositiveNumber);

  auto* sweep = app.add_subcommand("sweep", "sweep one topology axis across controllers");
  std::string axis_name, controllers = "sls,hc,lss,ss_s,ss_a,ss_l,vegas", sweep_out = "out";
  std::vector<double> values;
  unsigned threads = 0;
  double sweep_horizon = 20.0;
  sweep->add_option("--axis", axis_name, "buffer (pkts), delay (one-way ms) or bandwidth (Mbps)")
      ->required();
  sweep->add_option("--values", values, "axis values")->required()->delimiter(',');
  sweep->add_option("--controllers", controllers, "comma-separated variants");
  sweep->add_option("--out", sweep_out, "output directory");
  sweep->add_option("--threads", threads, "worker threads (0 = all cores)");
  sweep->add_option("--horizon", sweep_horizon, "seconds per run")->check(CLI::PositiveNumber);

  auto* report = app.add_subcommand("report", "print the metrics table of an output directory");
  std::string report_dir;
  report->add_option("--in", report_dir, "directory holding metrics.csv")->required();

  auto* list = app.add_subcommand("list-presets", "list the named presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) {
      for (const auto& name : PresetNames()) {
        std::cout << name << "  " << Preset(name).description << '\n';
      }
      return 0;
    }

    if (*run) {
      Experiment e;
      if (!preset.empty()) {
        e = Preset(preset);
      } else {
        e.name = "custom";
        e.runs.push_back(LoadScenarioFile(scenario_file));
      }
      for (auto& cfg : e.runs) {
        if (seed) cfg.seed = *seed;
        if (horizon) {
          cfg.horizon_s = *horizon;
          for (auto& w : cfg.windows) w.end_s = std::min(w.end_s, *horizon);
        }
      }
      EnsureDir(out_dir);
      const auto results = RunExperiment(e);
      std::vector<MetricsReport> rows;
      std::string error;
      for (const auto& r : results) {
        const fs::path trace = fs::path(out_dir) / (FileStem(r.config.id) + ".trace.csv");
        WriteOrThrow(EmitTrace(r.trace, trace, &error), error);
        rows.insert(rows.end(), r.metrics.begin(), r.metrics.end());
        if (!r.conservation_ok) {
          std::cerr << "warning: queue conservation violated in " << r.config.id << '\n';
        }
      }
      WriteOrThrow(EmitMetrics(rows, fs::path(out_dir) / "metrics.csv", &error), error);
      PrintTable(std::cout, rows);
      return 0;
    }

    if (*sweep) {
      const SweepAxis axis = ParseSweepAxis(axis_name);
      SweepOptions opts;
      opts.horizon_s = sweep_horizon;
      opts.threads = threads;
      const auto results = Sweep(axis, values, SplitList(controllers), opts);
      std::vector<MetricsReport> rows;
      for (const auto& [key, point] : results) {
        if (!point.error.empty()) {
          std::cerr << "point " << key.first << "/" << key.second << " failed: " << point.error
                    << '\n';
          continue;
        }
        rows.push_back(point.report);
      }
      EnsureDir(sweep_out);
      std::string error;
      WriteOrThrow(EmitMetrics(rows, fs::path(sweep_out) / "metrics.csv", &error), error);
      PrintTable(std::cout, rows);
      return rows.size() == results.size() ? 0 : 1;
    }

    if (*report) {
      const fs::path in = fs::path(report_dir) / "metrics.csv";
      std::ifstream f(in);
      if (!f) throw std::runtime_error("cannot read " + in.string());
      const auto rows = ReadMetrics(f);
      PrintTable(std::cout, rows);
      std::string error;
      WriteOrThrow(EmitMetrics(rows, fs::path(report_dir) / "report.csv", &error), error);
      return 0;
    }
  } catch (const sls::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
