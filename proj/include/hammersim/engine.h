#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hammersim/schemes.h"
#include "hammersim/timing.h"

namespace hammersim {

struct AboConfig {
  Ps tABO_ACT = 180'000;
  Ps tRFM = 350'000;  // per-RFM recovery block
  int abo_act = 3;
  int abo_delay = -1;  // negative: n_mit, or 0 for Chronus

  int delay_for(SchemeKind scheme, int n_mit) const {
    if (abo_delay >= 0) return abo_delay;
    return scheme == SchemeKind::Chronus ? 0 : n_mit;
  }
  void validate() const;
};

struct TraceEvent {
  enum class Kind { Act, Idle, EndOfTrace };
  std::optional<Ps> time;  // empty: as soon as possible
  int bank = 0;
  Kind kind = Kind::Act;
  Row row = 0;
  Ps idle = 0;

  static TraceEvent act(Row r, int bank = 0) { return {std::nullopt, bank, Kind::Act, r, 0}; }
  static TraceEvent act_at(Ps t, Row r, int bank = 0) { return {t, bank, Kind::Act, r, 0}; }
  static TraceEvent idle_for(Ps d, int bank = 0) { return {std::nullopt, bank, Kind::Idle, 0, d}; }
  static TraceEvent end(int bank = 0) { return {std::nullopt, bank, Kind::EndOfTrace, 0, 0}; }
};

using Trace = std::vector<TraceEvent>;

struct ActRequest {
  std::optional<Ps> time;
  Row row = 0;
};

// Supplies row activations to the engine. Closed-loop attackers also
// observe the rows the defense mitigates.
class ActSource {
 public:
  virtual ~ActSource() = default;
  virtual std::optional<ActRequest> peek() = 0;
  virtual void consume(Ps issued_at) = 0;
  virtual void on_mitigated(const std::vector<Row>& rows, Ps at) { (void)rows; (void)at; }
};

class TraceSource : public ActSource {
 public:
  TraceSource(const Trace& trace, int bank = 0) : m_trace(trace), m_bank(bank) {}
  std::optional<ActRequest> peek() override;
  void consume(Ps issued_at) override;

 private:
  const Trace& m_trace;
  int m_bank;
  std::size_t m_pos = 0;
  Ps m_last = 0;
  Ps m_not_before = 0;
};

enum class CommandKind { ACT, REF, RFM, ALERT, PROACT };
std::string to_string(CommandKind k);

struct CommandRecord {
  Ps time = 0;
  CommandKind kind = CommandKind::ACT;
  Row row = -1;
  std::uint32_t counter_after = 0;
  Ps end = 0;            // end of the bank block, REF/RFM only
  std::int64_t seq = 0;  // REF: global REF index; RFM: index within burst
  std::uint32_t activations = 0;  // rows activated by REF/RFM/PROACT
};

struct WindowStats {
  Ps blocked = 0;
  Ps ref_blocked = 0;
  Ps rfm_blocked = 0;
  std::int64_t rfm_count = 0;
  std::int64_t alert_count = 0;
  std::int64_t act_count = 0;
  double counter_mean = 0.0;
  std::uint32_t counter_max = 0;
  double bandwidth = 1.0;
};

struct EngineMetrics {
  std::int64_t acts_issued = 0;
  std::int64_t refs_issued = 0;
  std::int64_t rfms_issued = 0;
  std::int64_t alerts_raised = 0;
  std::int64_t proactive_refreshes = 0;
  Ps act_blocked_time = 0;
  Ps rfm_blocked_time = 0;
  Ps ref_blocked_time = 0;
  Ps end_time = 0;
  std::uint32_t max_counter = 0;
  std::int64_t max_hammered = 0;  // disturbance from every activation kind
  Row max_hammered_row = -1;
  // same, counting only trace ACTs as disturbance (any activation still resets)
  std::int64_t max_trace_hammered = 0;
  std::vector<WindowStats> windows;

  double mitigation_blocked_fraction() const;
};

struct EngineConfig {
  DeviceGeometry geometry;
  RefreshConfig refresh;
  SchemeConfig scheme;
  AboConfig abo;
  Ps duration = 32'000'000'000;
  bool mitigation = true;  // false: plain Default-timing baseline
  bool keep_log = true;
  bool stop_when_source_done = false;
  int bank = 0;

  void validate() const;
};

struct RunResult {
  EngineMetrics metrics;
  std::vector<CommandRecord> log;
};

class Engine {
 public:
  explicit Engine(const EngineConfig& config);

  RunResult run(ActSource& source);
  RunResult run(const Trace& trace);

  const MitigationScheme& scheme() const { return m_scheme; }
  const EngineConfig& config() const { return m_config; }
  const TimingSet& timing() const { return m_timing; }
  Ps tRFC() const { return m_tRFC; }
  std::vector<Row> refresh_rows(std::int64_t ref_index) const;

 private:
  // Disturbance bookkeeping: an activation resets the row and hammers its victims.
  void observe(Row row, bool by_trace = false);
  void add_block(Ps start, Ps end, CommandKind kind);
  WindowStats& window(Ps t);
  void close_windows(Ps upto);
  void record(const CommandRecord& r);

  EngineConfig m_config;
  TimingSet m_timing;
  Ps m_tRFC;
  MitigationScheme m_scheme;
  std::vector<std::uint32_t> m_hammer;
  std::vector<std::uint32_t> m_attack_hammer;
  EngineMetrics m_metrics;
  std::vector<CommandRecord> m_log;
  std::size_t m_closed = 0;
};

// Rows refreshed by the k-th REF. The pointer restarts at row 0 with
// each refresh window; REFs past the last row refresh nothing.
std::vector<Row> refresh_rows_for(std::int64_t k, const DeviceGeometry& g, const RefreshConfig& rf);

Trace saturation_act_stream(const std::vector<Row>& rows, Ps duration, const TimingSet& timing);

void write_event_log_csv(std::ostream& os, const std::vector<CommandRecord>& log, int bank);
void write_metrics_csv(std::ostream& os, const EngineMetrics& metrics);

std::string format_ns(Ps ps);

}  // namespace hammersim
