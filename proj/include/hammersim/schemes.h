#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hammersim/counters.h"
#include "hammersim/queue.h"
#include "hammersim/timing.h"

namespace hammersim {

enum class SchemeKind { PRAC, PVAC, Chronus, QPRAC, MOAT };

std::string to_string(SchemeKind k);
SchemeKind scheme_kind_from_string(const std::string& s);

struct SchemeConfig {
  SchemeKind scheme = SchemeKind::PVAC;
  int n_bo = 64;
  int n_mit = 4;
  std::optional<int> proactive_threshold;
  int proactive_period = 0;  // in tREFI; 0 disables proactive mitigation
  TimingLabel timing = TimingLabel::Default;
  Ps tRFC = 295'000;
  CounterSemantics counter_semantics = CounterSemantics::VictimCount;
  std::size_t queue_depth = 20;
  CsaLayout layout = CsaLayout::optimized();
  int rows_per_rfm = 4;        // victim-based RFM width
  int proactive_rows = 4;

  bool adaptive_rfm() const { return scheme == SchemeKind::Chronus; }
  bool victim_based() const { return counter_semantics == CounterSemantics::VictimCount; }
  void validate() const;
};

// Table of per-scheme defaults; n_mit is forced to 1 for MOAT.
SchemeConfig make_scheme_config(SchemeKind kind, int n_bo, int n_mit);

struct MitigationAction {
  enum class Kind { None, Alert, RfmRefresh, ProactiveRefresh };
  Kind kind = Kind::None;
  std::vector<Row> rows;         // alerting row, or mitigated rows
  std::vector<Row> activations;  // rows physically activated, in order
};

class MitigationScheme {
 public:
  MitigationScheme(const SchemeConfig& config, const DeviceGeometry& geometry);

  MitigationAction on_act(Row row);
  // Counter updates for the rows refreshed by one REF, then the
  // proactive step when ref_index falls on the period boundary.
  MitigationAction on_refresh(const std::vector<Row>& rows, std::int64_t ref_index);
  MitigationAction on_rfm();

  bool alert_pending() const { return !m_over.empty(); }
  std::optional<Row> alert_row() const;

  const CounterBank& counters() const { return m_bank; }
  const PriorityQueue& queue() const { return m_queue; }
  const SchemeConfig& config() const { return m_config; }
  std::int64_t empty_rfms() const { return m_empty_rfms; }

 private:
  void track(const CounterBank::Changes& changes);
  void track_one(Row row, CounterBank::Count c);
  std::optional<Row> take_target();
  std::optional<Row> best_over() const;
  void mitigate_aggressor(Row target, MitigationAction& out);
  void refresh_victim(Row victim, MitigationAction& out);

  SchemeConfig m_config;
  DeviceGeometry m_geometry;
  CounterBank m_bank;
  PriorityQueue m_queue;
  std::set<Row> m_over;
  std::int64_t m_empty_rfms = 0;
};

}  // namespace hammersim
