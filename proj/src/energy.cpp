#include "hammersim/energy.h"

#include <algorithm>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace hammersim {

namespace {

enum Cls { kDsa, kRef, kRfm, kCsaAct, kCsaUpdate, kNumClasses };

}  // namespace

const std::vector<std::string>& energy_class_names() {
  static const std::vector<std::string> names{"dsa_act_pre", "ref_row", "rfm_row", "csa_act_pre", "csa_update"};
  return names;
}

double EnergyModel::csa_per_ns() const {
  return csa_per_access_naive / to_ns(counter_update_latency(csa_timing, blast_radius));
}

double EnergyModel::csa_activation_energy(CsaLayoutKind kind) const {
  switch (kind) {
    case CsaLayoutKind::InDsaRow: return 0.0;
    case CsaLayoutKind::NaiveCsa: return csa_per_access_naive;
    case CsaLayoutKind::OptimizedDualCsa: return csa_per_access_naive * half_size_factor;
  }
  return 0.0;
}

void EnergyModel::validate() const {
  if (dsa_per_ns < 0 || csa_per_access_naive < 0 || half_size_factor < 0)
    throw std::invalid_argument("energy: coefficients must be >= 0");
}

const EnergyClass& EnergyReport::at(const std::string& name) const {
  for (const auto& c : classes)
    if (c.name == name) return c;
  throw std::out_of_range("energy: no class '" + name + "'");
}

double EnergyReport::csa_total() const { return at("csa_act_pre").energy + at("csa_update").energy; }

EnergyInputs energy_inputs(const EngineConfig& config) {
  return {config.geometry, config.refresh, config.scheme, config.mitigation};
}

EnergyReport energy_report(const std::vector<CommandRecord>& log, const EnergyInputs& in, const EnergyModel& model) {
  model.validate();
  const DeviceGeometry& g = in.geometry;
  const TimingSet timing = builtin_timing_set(in.mitigation ? in.scheme.timing : TimingLabel::Default);
  const double act_ns = to_ns(timing.tRC);
  const double row_ns = to_ns(builtin_timing_set(TimingLabel::Default).tRC);
  const CsaLayout layout = in.mitigation ? in.scheme.layout : CsaLayout::in_dsa();
  const double csa_e = model.csa_activation_energy(layout.kind);
  const double csa_ns = to_ns(counter_update_latency(model.csa_timing, g.blast_radius));

  std::vector<EnergyClass> cls(kNumClasses);
  for (int i = 0; i < kNumClasses; ++i) cls[static_cast<std::size_t>(i)].name = energy_class_names()[static_cast<std::size_t>(i)];
  auto charge = [&](Cls c, double ns, double e, std::int64_t n) {
    auto& x = cls[static_cast<std::size_t>(c)];
    x.occupancy_ns += ns;
    x.energy += e;
    x.events += n;
  };
  auto charge_csa = [&](Cls c, int acts) {
    if (acts > 0 && csa_e > 0) charge(c, acts * csa_ns, acts * csa_e, acts);
  };
  auto check_row = [&](Row r) {
    if (r >= g.rows_per_bank) throw std::invalid_argument("energy: log row outside the geometry");
  };

  for (const auto& r : log) {
    switch (r.kind) {
      case CommandKind::ACT:
        check_row(r.row);
        charge(kDsa, act_ns, act_ns * model.dsa_per_ns, 1);
        charge_csa(kCsaAct, csa_activations_for_event(layout, g, CsaEvent::act(r.row)));
        break;
      case CommandKind::REF: {
        std::vector<Row> rows = refresh_rows_for(r.seq, g, in.refresh);
        auto n = static_cast<double>(rows.size());
        charge(kRef, n * row_ns, n * row_ns * model.dsa_per_ns, static_cast<std::int64_t>(rows.size()));
        if (!rows.empty()) charge_csa(kCsaUpdate, csa_activations_for_event(layout, g, CsaEvent::refresh(rows)));
        break;
      }
      case CommandKind::RFM:
      case CommandKind::PROACT: {
        if (!in.mitigation) throw std::invalid_argument("energy: mitigation records in a baseline log");
        auto n = static_cast<double>(r.activations);
        charge(kRfm, n * row_ns, n * row_ns * model.dsa_per_ns, r.activations);
        // each mitigation activation updates the counters around its row
        if (r.row >= 0 && r.activations > 0) {
          check_row(r.row);
          charge_csa(kCsaUpdate, static_cast<int>(r.activations) *
                                     csa_activations_for_event(layout, g, CsaEvent::act(r.row)));
        }
        break;
      }
      case CommandKind::ALERT:
        break;
    }
  }

  EnergyReport rep;
  rep.classes = std::move(cls);
  for (const auto& c : rep.classes) rep.total += c.energy;
  return rep;
}

EnergyReport energy_report(const std::vector<CommandRecord>& log, const EnergyInputs& in,
                           const std::vector<CommandRecord>& baseline_log, const EnergyInputs& baseline_in,
                           const EnergyModel& model) {
  EnergyReport rep = energy_report(log, in, model);
  EnergyInputs b = baseline_in;
  b.mitigation = false;
  rep.baseline_total = energy_report(baseline_log, b, model).total;
  rep.normalized = rep.baseline_total > 0 ? rep.total / rep.baseline_total : (rep.total == 0 ? 1.0 : 0.0);
  return rep;
}

void write_energy_csv(std::ostream& os, const EnergyReport& report) {
  os << "class,occupancy_ns,energy,fraction_of_total\n";
  char buf[160];
  for (const auto& c : report.classes) {
    double frac = report.total > 0 ? c.energy / report.total : 0.0;
    std::snprintf(buf, sizeof buf, "%s,%.3f,%.6f,%.6f\n", c.name.c_str(), c.occupancy_ns, c.energy, frac);
    os << buf;
  }
  std::snprintf(buf, sizeof buf, "total,,%.6f,%.6f\n", report.total, report.total > 0 ? 1.0 : 0.0);
  os << buf;
}

std::vector<WindowStats> window_summary(const std::vector<CommandRecord>& log, const RefreshConfig& refresh, Ps duration) {
  const Ps W = refresh.tREFW;
  std::size_t n = duration > 0 ? static_cast<std::size_t>((duration + W - 1) / W) : 0;
  std::vector<WindowStats> ws(n);
  auto add_block = [&](Ps s, Ps e, CommandKind k) {
    e = std::min(e, duration);
    while (s < e) {
      Ps we = (s / W + 1) * W;
      Ps x = std::min(e, we);
      auto& w = ws[static_cast<std::size_t>(s / W)];
      w.blocked += x - s;
      if (k == CommandKind::REF) w.ref_blocked += x - s;
      if (k == CommandKind::RFM) w.rfm_blocked += x - s;
      s = x;
    }
  };
  for (const auto& r : log) {
    if (r.time >= duration) continue;
    auto& w = ws[static_cast<std::size_t>(r.time / W)];
    switch (r.kind) {
      case CommandKind::REF: add_block(r.time, r.end, r.kind); break;
      case CommandKind::RFM: add_block(r.time, r.end, r.kind); ++w.rfm_count; break;
      case CommandKind::ALERT: ++w.alert_count; break;
      case CommandKind::ACT: ++w.act_count; break;
      case CommandKind::PROACT: break;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    Ps len = std::min(W, duration - static_cast<Ps>(i) * W);
    ws[i].bandwidth = 1.0 - static_cast<double>(ws[i].blocked) / static_cast<double>(len);
  }
  return ws;
}

void write_window_summary_csv(std::ostream& os, const std::vector<WindowStats>& windows) {
  EngineMetrics m;
  m.windows = windows;
  write_metrics_csv(os, m);
}

}  // namespace hammersim
