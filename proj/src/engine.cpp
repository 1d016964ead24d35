#include "hammersim/engine.h"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace hammersim {

namespace {
constexpr Ps kNever = std::numeric_limits<Ps>::max();
}

void AboConfig::validate() const {
  if (tABO_ACT <= 0 || tRFM <= 0) throw std::invalid_argument("abo: durations must be positive");
  if (abo_act < 0) throw std::invalid_argument("abo: abo_act must be >= 0");
}

void EngineConfig::validate() const {
  geometry.validate();
  refresh.validate();
  abo.validate();
  if (mitigation) scheme.validate();
  if (scheme.tRFC >= refresh.tREFI) throw std::invalid_argument("engine: tRFC must be < tREFI");
  if (duration < 0) throw std::invalid_argument("engine: negative duration");
}

double EngineMetrics::mitigation_blocked_fraction() const {
  Ps usable = end_time - ref_blocked_time;
  return usable > 0 ? static_cast<double>(rfm_blocked_time) / static_cast<double>(usable) : 0.0;
}

std::optional<ActRequest> TraceSource::peek() {
  while (m_pos < m_trace.size()) {
    const TraceEvent& e = m_trace[m_pos];
    if (e.bank != m_bank) {
      ++m_pos;
      continue;
    }
    if (e.kind == TraceEvent::Kind::EndOfTrace) return std::nullopt;
    if (e.kind == TraceEvent::Kind::Idle) {
      m_not_before = std::max(m_not_before, m_last + e.idle);
      ++m_pos;
      continue;
    }
    ActRequest r;
    r.row = e.row;
    if (e.time)
      r.time = std::max(*e.time, m_not_before);
    else if (m_not_before > 0)
      r.time = m_not_before;
    return r;
  }
  return std::nullopt;
}

void TraceSource::consume(Ps issued_at) {
  m_last = issued_at;
  ++m_pos;
}

std::string to_string(CommandKind k) {
  switch (k) {
    case CommandKind::ACT: return "ACT";
    case CommandKind::REF: return "REF";
    case CommandKind::RFM: return "RFM";
    case CommandKind::ALERT: return "ALERT";
    case CommandKind::PROACT: return "PROACT";
  }
  return "?";
}

Engine::Engine(const EngineConfig& config)
    : m_config(config),
      m_timing(builtin_timing_set(config.mitigation ? config.scheme.timing : TimingLabel::Default)),
      m_tRFC(config.scheme.tRFC),
      m_scheme(config.scheme, config.geometry),
      m_hammer(static_cast<std::size_t>(config.geometry.rows_per_bank), 0),
      m_attack_hammer(m_hammer.size(), 0) {
  config.validate();
  if (!config.mitigation) m_tRFC = config.refresh.tRFC;
}

std::vector<Row> refresh_rows_for(std::int64_t k, const DeviceGeometry& g, const RefreshConfig& rf) {
  Ps sched = k * rf.tREFI;
  std::int64_t w = sched / rf.tREFW;
  std::int64_t first = (w * rf.tREFW + rf.tREFI - 1) / rf.tREFI;
  std::int64_t i = k - first;
  std::int64_t rpr = rows_per_refresh(g, rf);
  std::vector<Row> rows;
  if (rf.order == RefreshOrder::Sequential) {
    for (Row r = i * rpr; r < (i + 1) * rpr && r < g.rows_per_bank; ++r) rows.push_back(r);
  } else {
    std::int64_t offset = i % g.rows_per_dsa;
    std::int64_t group = i / g.rows_per_dsa;
    for (std::int64_t j = 0; j < rpr; ++j) {
      std::int64_t dsa = group * rpr + j;
      if (dsa < g.num_dsas()) rows.push_back(dsa * g.rows_per_dsa + offset);
    }
  }
  return rows;
}

std::vector<Row> Engine::refresh_rows(std::int64_t k) const {
  return refresh_rows_for(k, m_config.geometry, m_config.refresh);
}

void Engine::observe(Row row, bool by_trace) {
  m_hammer[static_cast<std::size_t>(row)] = 0;
  m_attack_hammer[static_cast<std::size_t>(row)] = 0;
  for (Row v : victim_set(row, m_config.geometry)) {
    auto i = static_cast<std::size_t>(v);
    auto h = ++m_hammer[i];
    if (h > m_metrics.max_hammered || (h == m_metrics.max_hammered && v < m_metrics.max_hammered_row)) {
      m_metrics.max_hammered = h;
      m_metrics.max_hammered_row = v;
    }
    if (!by_trace) continue;
    auto a = ++m_attack_hammer[i];
    if (a > m_metrics.max_trace_hammered) m_metrics.max_trace_hammered = a;
  }
}

WindowStats& Engine::window(Ps t) {
  auto idx = static_cast<std::size_t>(t / m_config.refresh.tREFW);
  if (idx >= m_metrics.windows.size()) m_metrics.windows.resize(idx + 1);
  return m_metrics.windows[idx];
}

void Engine::add_block(Ps start, Ps end, CommandKind kind) {
  end = std::min(end, m_config.duration);
  const Ps W = m_config.refresh.tREFW;
  Ps t = start;
  while (t < end) {
    Ps wend = (t / W + 1) * W;
    Ps e = std::min(end, wend);
    WindowStats& ws = window(t);
    ws.blocked += e - t;
    if (kind == CommandKind::REF) ws.ref_blocked += e - t;
    if (kind == CommandKind::RFM) ws.rfm_blocked += e - t;
    t = e;
  }
  Ps len = std::max<Ps>(0, end - start);
  if (kind == CommandKind::REF) m_metrics.ref_blocked_time += len;
  if (kind == CommandKind::RFM) m_metrics.rfm_blocked_time += len;
}

void Engine::close_windows(Ps upto) {
  const Ps W = m_config.refresh.tREFW;
  while (static_cast<Ps>(m_closed + 1) * W <= upto) {
    WindowStats& ws = window(static_cast<Ps>(m_closed) * W);
    ws.counter_mean = m_scheme.counters().mean();
    ws.counter_max = m_scheme.counters().max_count();
    ++m_closed;
  }
}

void Engine::record(const CommandRecord& r) {
  if (m_config.keep_log) m_log.push_back(r);
}

RunResult Engine::run(const Trace& trace) {
  TraceSource src(trace, m_config.bank);
  return run(src);
}

RunResult Engine::run(ActSource& src) {
  enum class Phase { Idle, Window, Burst };
  const bool mit = m_config.mitigation;
  const Ps tRC = m_timing.tRC;
  const Ps tREFI = m_config.refresh.tREFI;
  const AboConfig& abo = m_config.abo;
  const int n_mit = m_config.scheme.n_mit;
  const int delay = abo.delay_for(m_config.scheme.scheme, n_mit);
  const std::int64_t adaptive_cap = m_config.geometry.rows_per_bank;

  Ps duration = m_config.duration;
  Ps now = 0;
  Ps bank_free = 0;
  std::optional<Ps> last_act;
  std::int64_t ref_k = 0;
  Phase phase = Phase::Idle;
  Ps ta = 0;
  int window_acts = 0;
  std::int64_t burst_rfms = 0;
  bool holdoff = false;
  Ps holdoff_end = 0;
  int holdoff_acts = 0;
  bool src_done = false;

  for (;;) {
    Ps t_ref = std::max(ref_k * tREFI, bank_free);
    if (phase == Phase::Window) t_ref = kNever;

    Ps t_rfm = kNever;
    if (phase == Phase::Window) t_rfm = std::max(ta + abo.tABO_ACT, bank_free);
    if (phase == Phase::Burst) t_rfm = bank_free;

    Ps t_alert = kNever;
    if (mit && phase == Phase::Idle && m_scheme.alert_pending()) {
      t_alert = std::max(now, bank_free);
      if (holdoff) t_alert = std::max(t_alert, holdoff_end);
    }

    Ps t_act = kNever;
    std::optional<ActRequest> req = src.peek();
    Ps earliest = 0;
    if (req) {
      earliest = req->time ? *req->time : now;
      if (last_act) earliest = std::max(earliest, *last_act + tRC);
      Ps base = std::max(earliest, bank_free);
      if (phase == Phase::Idle) t_act = base;
      if (phase == Phase::Window && window_acts < abo.abo_act && base < ta + abo.tABO_ACT) t_act = base;
    } else if (!src_done) {
      src_done = true;
      if (m_config.stop_when_source_done) duration = std::min(duration, std::max(now, bank_free) + 2 * tREFI);
    }

    Ps t = std::min({t_ref, t_rfm, t_alert, t_act});
    if (t >= duration) break;
    close_windows(t);
    now = t;

    if (t == t_ref) {
      std::vector<Row> rows = refresh_rows(ref_k);
      add_block(t, t + m_tRFC, CommandKind::REF);
      bank_free = t + m_tRFC;
      MitigationAction pro;
      if (mit) pro = m_scheme.on_refresh(rows, ref_k);
      for (Row r : rows) observe(r);
      CommandRecord rec{t, CommandKind::REF, rows.empty() ? -1 : rows.front(), 0, t + m_tRFC, ref_k,
                        static_cast<std::uint32_t>(rows.size())};
      if (!rows.empty()) rec.counter_after = m_scheme.counters().get(rows.front());
      record(rec);
      ++m_metrics.refs_issued;
      if (pro.kind == MitigationAction::Kind::ProactiveRefresh) {
        for (Row r : pro.activations) observe(r);
        auto per = static_cast<std::uint32_t>(pro.activations.size() / std::max<std::size_t>(1, pro.rows.size()));
        for (Row r : pro.rows) record({t, CommandKind::PROACT, r, m_scheme.counters().get(r), t + m_tRFC, ref_k, per});
        ++m_metrics.proactive_refreshes;
        src.on_mitigated(pro.rows, t);
      }
      ++ref_k;
    } else if (t == t_rfm) {
      phase = Phase::Burst;
      MitigationAction a = m_scheme.on_rfm();
      for (Row r : a.activations) observe(r);
      Row first = a.rows.empty() ? -1 : a.rows.front();
      record({t, CommandKind::RFM, first, first < 0 ? 0u : m_scheme.counters().get(first), t + abo.tRFM, burst_rfms,
              static_cast<std::uint32_t>(a.activations.size())});
      add_block(t, t + abo.tRFM, CommandKind::RFM);
      bank_free = t + abo.tRFM;
      ++burst_rfms;
      ++m_metrics.rfms_issued;
      ++window(t).rfm_count;
      if (!a.rows.empty()) src.on_mitigated(a.rows, t);
      bool more = m_config.scheme.adaptive_rfm() ? (m_scheme.alert_pending() && burst_rfms < adaptive_cap)
                                                 : burst_rfms < n_mit;
      if (!more) {
        phase = Phase::Idle;
        burst_rfms = 0;
        holdoff = delay > 0;
        holdoff_end = bank_free + delay * tRC;
        holdoff_acts = 0;
      }
    } else if (t == t_alert) {
      phase = Phase::Window;
      ta = t;
      window_acts = 0;
      holdoff = false;
      Row r = m_scheme.alert_row().value_or(-1);
      record({t, CommandKind::ALERT, r, r < 0 ? 0u : m_scheme.counters().get(r), 0, 0, 0});
      ++m_metrics.alerts_raised;
      ++window(t).alert_count;
    } else {
      Row row = req->row;
      if (row < 0 || row >= m_config.geometry.rows_per_bank) throw std::out_of_range("trace row out of range");
      src.consume(t);
      m_metrics.act_blocked_time += t - earliest;
      if (mit) m_scheme.on_act(row);
      observe(row, true);
      record({t, CommandKind::ACT, row, m_scheme.counters().get(row), 0, 0, 1});
      last_act = t;
      ++m_metrics.acts_issued;
      ++window(t).act_count;
      if (phase == Phase::Window) ++window_acts;
      if (holdoff && ++holdoff_acts >= delay) holdoff = false;
    }
  }

  m_metrics.end_time = duration;
  close_windows(duration);
  if (duration > 0) window(duration - 1);
  const Ps W = m_config.refresh.tREFW;
  for (std::size_t i = 0; i < m_metrics.windows.size(); ++i) {
    WindowStats& ws = m_metrics.windows[i];
    Ps start = static_cast<Ps>(i) * W;
    Ps len = std::min(W, duration - start);
    if (i >= m_closed) {
      ws.counter_mean = m_scheme.counters().mean();
      ws.counter_max = m_scheme.counters().max_count();
    }
    ws.bandwidth = len > 0 ? 1.0 - static_cast<double>(ws.blocked) / static_cast<double>(len) : 1.0;
  }
  m_metrics.max_counter = m_scheme.counters().max_count();
  for (const auto& ws : m_metrics.windows) m_metrics.max_counter = std::max(m_metrics.max_counter, ws.counter_max);

  RunResult out;
  out.metrics = m_metrics;
  out.log = std::move(m_log);
  return out;
}

Trace saturation_act_stream(const std::vector<Row>& rows, Ps duration, const TimingSet& timing) {
  Trace t;
  if (rows.empty()) return t;
  std::int64_t n = duration / timing.tRC;
  for (std::int64_t i = 0; i < n; ++i) t.push_back(TraceEvent::act(rows[static_cast<std::size_t>(i) % rows.size()]));
  return t;
}

std::string format_ns(Ps ps) {
  char buf[48];
  Ps whole = ps / 1000;
  Ps frac = ps % 1000;
  if (frac < 0) frac = -frac;
  std::snprintf(buf, sizeof buf, "%lld.%03lld", static_cast<long long>(whole), static_cast<long long>(frac));
  return buf;
}

void write_event_log_csv(std::ostream& os, const std::vector<CommandRecord>& log, int bank) {
  os << "time_ns,bank,event,row,counter_after\n";
  for (const auto& r : log)
    os << format_ns(r.time) << ',' << bank << ',' << to_string(r.kind) << ',' << r.row << ',' << r.counter_after << '\n';
}

void write_metrics_csv(std::ostream& os, const EngineMetrics& m) {
  os << "window_index,bandwidth,rfm_count,alert_count\n";
  char buf[64];
  for (std::size_t i = 0; i < m.windows.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.6f", m.windows[i].bandwidth);
    os << i << ',' << buf << ',' << m.windows[i].rfm_count << ',' << m.windows[i].alert_count << '\n';
  }
}

}  // namespace hammersim
