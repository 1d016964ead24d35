#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "config.h"

namespace hammersim::app {

struct ScenarioOptions {
  std::string name;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  int jobs = 1;
};

struct ScenarioOutcome {
  int exit_code = 0;  // 0 ok, 3 invariant violation
  std::vector<std::string> files;
  std::vector<std::string> messages;
};

const std::vector<std::string>& scenario_names();
bool is_scenario(const std::string& name);

// Writes the scenario's CSVs, a manifest echoing the resolved config and
// a plot script into out_dir.
ScenarioOutcome run_scenario(const Config& config, const ScenarioOptions& options);

// Rows for the domino CSV: window_index,counter_mean,counter_max,bandwidth,rfm_count,alert_count
struct DominoResult {
  SchemeKind scheme = SchemeKind::PRAC;
  EngineMetrics metrics;
  bool audit_ok = true;
  std::string audit_first;
  int first_alert_window = -1;
};
DominoResult run_domino(const Config& config, SchemeKind scheme);

struct BwRow {
  BwPoint point;
  Ps tRC = 0;
  double bound = 0.0;
  double engine_fraction = -1.0;  // negative when not simulated
  bool audit_ok = true;
};
BwRow run_bw_point(const Config& config, const BwPoint& point, bool engine_check);

struct StrideRow {
  SchemeKind scheme = SchemeKind::PVAC;
  std::int64_t max_hc = 0;
  int n_bo = 0;  // 0: infeasible
  std::int64_t n = 0;
  int stride = 1;
  double bandwidth = 1.0;
  double rfm_per_trefw = 0.0;
  std::int64_t alerts = 0;
  std::int64_t acts = 0;
  bool audit_ok = true;
};
StrideRow run_stride_point(const Config& config, SchemeKind scheme, std::int64_t max_hc, int n_bo, std::int64_t n,
                           int stride);

// Order-preserving parallel map over [0, n) with at most jobs threads.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, int jobs, F&& fn);

}  // namespace hammersim::app

#include "parallel.inl"
