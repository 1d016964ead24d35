#include "hammersim/schemes.h"

#include <stdexcept>

namespace hammersim {

std::string to_string(SchemeKind k) {
  switch (k) {
    case SchemeKind::PRAC: return "PRAC";
    case SchemeKind::PVAC: return "PVAC";
    case SchemeKind::Chronus: return "Chronus";
    case SchemeKind::QPRAC: return "QPRAC";
    case SchemeKind::MOAT: return "MOAT";
  }
  return "?";
}

SchemeKind scheme_kind_from_string(const std::string& s) {
  if (s == "PRAC") return SchemeKind::PRAC;
  if (s == "PVAC") return SchemeKind::PVAC;
  if (s == "Chronus") return SchemeKind::Chronus;
  if (s == "QPRAC") return SchemeKind::QPRAC;
  if (s == "MOAT") return SchemeKind::MOAT;
  throw std::invalid_argument("unknown scheme '" + s + "'");
}

void SchemeConfig::validate() const {
  if (n_bo < 1) throw std::invalid_argument("scheme: n_bo must be >= 1");
  if (n_mit != 1 && n_mit != 2 && n_mit != 4) throw std::invalid_argument("scheme: n_mit must be 1, 2 or 4");
  if (proactive_period < 0) throw std::invalid_argument("scheme: proactive_period must be >= 0");
  if (queue_depth < 1) throw std::invalid_argument("scheme: queue_depth must be >= 1");
  switch (scheme) {
    case SchemeKind::PVAC:
      if (counter_semantics != CounterSemantics::VictimCount || timing != TimingLabel::Default)
        throw std::invalid_argument("scheme: PVAC requires victim counting and Default timing");
      break;
    case SchemeKind::Chronus:
      if (counter_semantics != CounterSemantics::AggressorCount || timing != TimingLabel::Default)
        throw std::invalid_argument("scheme: Chronus requires aggressor counting and Default timing");
      break;
    case SchemeKind::MOAT:
      if (n_mit != 1 || tRFC != 410'000) throw std::invalid_argument("scheme: MOAT requires n_mit=1 and tRFC=410ns");
      [[fallthrough]];
    case SchemeKind::PRAC:
    case SchemeKind::QPRAC:
      if (counter_semantics != CounterSemantics::AggressorCount || timing != TimingLabel::PRAC)
        throw std::invalid_argument("scheme: " + to_string(scheme) + " requires aggressor counting and PRAC timing");
      break;
  }
}

SchemeConfig make_scheme_config(SchemeKind kind, int n_bo, int n_mit) {
  SchemeConfig c;
  c.scheme = kind;
  c.n_bo = n_bo;
  c.n_mit = n_mit;
  c.counter_semantics = CounterSemantics::AggressorCount;
  c.timing = TimingLabel::PRAC;
  c.layout = CsaLayout::in_dsa();
  switch (kind) {
    case SchemeKind::PRAC:
      break;
    case SchemeKind::Chronus:
      c.timing = TimingLabel::Default;
      c.proactive_period = 2;
      break;
    case SchemeKind::QPRAC:
      c.proactive_threshold = n_bo / 2;
      c.proactive_period = 1;
      break;
    case SchemeKind::MOAT:
      c.proactive_threshold = n_bo / 2;
      c.proactive_period = 4;
      c.tRFC = 410'000;
      c.n_mit = 1;
      break;
    case SchemeKind::PVAC:
      c.proactive_threshold = n_bo / 2;
      c.proactive_period = 1;
      c.timing = TimingLabel::Default;
      c.counter_semantics = CounterSemantics::VictimCount;
      c.layout = CsaLayout::optimized();
      break;
  }
  return c;
}

MitigationScheme::MitigationScheme(const SchemeConfig& config, const DeviceGeometry& geometry)
    : m_config(config), m_geometry(geometry), m_bank(geometry, config.layout), m_queue(config.queue_depth) {
  config.validate();
}

void MitigationScheme::track_one(Row row, CounterBank::Count c) {
  if (c >= static_cast<CounterBank::Count>(m_config.n_bo))
    m_over.insert(row);
  else
    m_over.erase(row);
  if (c == 0)
    m_queue.erase(row);
  else
    m_queue.insert_or_update(row, c);
}

void MitigationScheme::track(const CounterBank::Changes& changes) {
  for (const auto& [row, c] : changes) track_one(row, c);
}

std::optional<Row> MitigationScheme::best_over() const {
  std::optional<QueueEntry> best;
  for (Row r : m_over) {
    QueueEntry e{r, m_bank.get(r)};
    if (!best || ranks_before(e, *best)) best = e;
  }
  if (!best) return std::nullopt;
  return best->row;
}

std::optional<Row> MitigationScheme::alert_row() const {
  if (m_over.empty()) return std::nullopt;
  auto top = m_queue.top();
  if (top && m_over.count(top->row)) return top->row;
  return best_over();
}

// Queue head, unless a row over the threshold was evicted from the queue
// and now outranks it.
std::optional<Row> MitigationScheme::take_target() {
  auto top = m_queue.top();
  auto over = best_over();
  std::optional<Row> pick;
  if (top) pick = top->row;
  if (over && (!top || ranks_before(QueueEntry{*over, m_bank.get(*over)}, *top))) pick = over;
  if (pick) m_queue.erase(*pick);
  return pick;
}

void MitigationScheme::mitigate_aggressor(Row target, MitigationAction& out) {
  for (Row v : victim_set(target, m_geometry)) {
    out.activations.push_back(v);
    track(m_bank.apply_activation(v, m_config.counter_semantics));
  }
  m_bank.reset(target);
  track_one(target, 0);
  out.rows.push_back(target);
}

void MitigationScheme::refresh_victim(Row victim, MitigationAction& out) {
  out.activations.push_back(victim);
  track(m_bank.apply_activation(victim, CounterSemantics::VictimCount));
  out.rows.push_back(victim);
}

MitigationAction MitigationScheme::on_act(Row row) {
  if (row < 0 || row >= m_geometry.rows_per_bank) throw std::out_of_range("on_act: row out of range");
  track(m_bank.apply_activation(row, m_config.counter_semantics));
  MitigationAction a;
  a.activations.push_back(row);
  if (alert_pending()) {
    a.kind = MitigationAction::Kind::Alert;
    a.rows.push_back(*alert_row());
  }
  return a;
}

MitigationAction MitigationScheme::on_refresh(const std::vector<Row>& rows, std::int64_t ref_index) {
  CounterSemantics sem = m_config.scheme == SchemeKind::Chronus ? CounterSemantics::NoCount : m_config.counter_semantics;
  for (Row r : rows) track(m_bank.apply_activation(r, sem));

  MitigationAction a;
  if (m_config.proactive_period <= 0 || ref_index % m_config.proactive_period != 0) return a;
  auto top = m_queue.top();
  if (!top) return a;
  if (m_config.proactive_threshold && top->count < static_cast<std::uint32_t>(*m_config.proactive_threshold)) return a;
  a.kind = MitigationAction::Kind::ProactiveRefresh;
  if (m_config.victim_based()) {
    for (int i = 0; i < m_config.proactive_rows; ++i) {
      auto t = m_queue.top();
      if (!t) break;
      m_queue.erase(t->row);
      refresh_victim(t->row, a);
    }
  } else {
    auto t = take_target();
    if (t) mitigate_aggressor(*t, a);
  }
  return a;
}

MitigationAction MitigationScheme::on_rfm() {
  MitigationAction a;
  a.kind = MitigationAction::Kind::RfmRefresh;
  int width = m_config.victim_based() ? m_config.rows_per_rfm : 1;
  for (int i = 0; i < width; ++i) {
    auto t = take_target();
    if (!t) break;
    if (m_config.victim_based())
      refresh_victim(*t, a);
    else
      mitigate_aggressor(*t, a);
  }
  if (a.rows.empty()) ++m_empty_rfms;
  return a;
}

}  // namespace hammersim
