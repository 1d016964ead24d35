#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "hammersim/counters.h"
#include "hammersim/engine.h"
#include "hammersim/schemes.h"

namespace hammersim {

// Latency-proportional model. Units are arbitrary: one Default-timing
// ACT+PRE on a data subarray costs 1.0.
struct EnergyModel {
  double dsa_per_ns = 1.0 / 48.0;
  // One CSA activation of the single 64-row CSA, relative to one normal
  // access. The per-ns coefficient follows from the update latency.
  double csa_per_access_naive = 0.201;
  // 32-row CSA activation relative to a 64-row one.
  double half_size_factor = (0.198 / 0.201) * (128.0 / 131.0);
  int blast_radius = 2;
  CsaTiming csa_timing{};

  double csa_per_ns() const;
  double csa_activation_energy(CsaLayoutKind kind) const;
  void validate() const;
};

struct EnergyClass {
  std::string name;
  double occupancy_ns = 0.0;
  double energy = 0.0;
  std::int64_t events = 0;
};

struct EnergyReport {
  std::vector<EnergyClass> classes;  // fixed order, see energy_class_names()
  double total = 0.0;
  double baseline_total = 0.0;
  double normalized = 0.0;  // total / baseline_total; 0 without a baseline

  const EnergyClass& at(const std::string& name) const;
  double csa_total() const;
};

const std::vector<std::string>& energy_class_names();

struct EnergyInputs {
  DeviceGeometry geometry;
  RefreshConfig refresh;
  SchemeConfig scheme;
  bool mitigation = true;
};

EnergyInputs energy_inputs(const EngineConfig& config);

// Throws std::invalid_argument when the log contains rows outside the
// geometry, or RFM/PROACT records for a run without mitigation.
EnergyReport energy_report(const std::vector<CommandRecord>& log, const EnergyInputs& in, const EnergyModel& model = {});
EnergyReport energy_report(const std::vector<CommandRecord>& log, const EnergyInputs& in,
                           const std::vector<CommandRecord>& baseline_log, const EnergyInputs& baseline_in,
                           const EnergyModel& model = {});

void write_energy_csv(std::ostream& os, const EnergyReport& report);

// Per-window bandwidth and command counts rebuilt from a command log.
std::vector<WindowStats> window_summary(const std::vector<CommandRecord>& log, const RefreshConfig& refresh, Ps duration);
void write_window_summary_csv(std::ostream& os, const std::vector<WindowStats>& windows);

}  // namespace hammersim
