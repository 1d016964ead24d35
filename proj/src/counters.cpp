#include "hammersim/counters.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace hammersim {

CsaLayout CsaLayout::in_dsa() { return {CsaLayoutKind::InDsaRow, 0, 0, 0}; }
CsaLayout CsaLayout::naive() { return {CsaLayoutKind::NaiveCsa, 64, 512, 2}; }
CsaLayout CsaLayout::optimized() { return {CsaLayoutKind::OptimizedDualCsa, 32, 128, 2}; }

std::string to_string(CsaLayoutKind k) {
  switch (k) {
    case CsaLayoutKind::InDsaRow: return "InDsaRow";
    case CsaLayoutKind::NaiveCsa: return "NaiveCsa";
    case CsaLayoutKind::OptimizedDualCsa: return "OptimizedDualCsa";
  }
  return "?";
}

CsaLayoutKind csa_layout_from_string(const std::string& s) {
  if (s == "InDsaRow") return CsaLayoutKind::InDsaRow;
  if (s == "NaiveCsa") return CsaLayoutKind::NaiveCsa;
  if (s == "OptimizedDualCsa") return CsaLayoutKind::OptimizedDualCsa;
  throw std::invalid_argument("unknown CSA layout '" + s + "'");
}

CsaTiming csa_timing_for_rows(std::int64_t rows_per_bank, double per_doubling, const CsaTiming& base) {
  CsaTiming t = base;
  double doublings = std::log2(static_cast<double>(rows_per_bank) / 65536.0);
  double f = std::pow(per_doubling, doublings);
  auto scale = [f](Ps v) { return static_cast<Ps>(std::llround(static_cast<double>(v) * f)); };
  t.tRCD_csa = scale(t.tRCD_csa);
  t.tRAS_csa = scale(t.tRAS_csa);
  t.tRP_csa = scale(t.tRP_csa);
  t.tWR_csa = scale(t.tWR_csa);
  return t;
}

Ps counter_update_latency(const CsaTiming& t, int blast_radius) {
  if (blast_radius < 1) throw std::invalid_argument("blast_radius must be >= 1");
  return t.tRCD_csa + (2 * blast_radius + 1) * t.tUP + t.tWR_csa + t.tRP_csa;
}

double csa_timing_share(const CsaTiming& t, int blast_radius) {
  double array = static_cast<double>(t.tRCD_csa + t.tWR_csa + t.tRP_csa);
  return array / static_cast<double>(counter_update_latency(t, blast_radius));
}

std::vector<Row> victim_set(Row row, const DeviceGeometry& g) {
  std::vector<Row> out;
  Row lo = g.dsa_of(row) * g.rows_per_dsa;
  Row hi = lo + g.rows_per_dsa - 1;
  for (Row v = row - g.blast_radius; v <= row + g.blast_radius; ++v)
    if (v != row && v >= lo && v <= hi) out.push_back(v);
  return out;
}

CounterBank::CounterBank(const DeviceGeometry& geometry, CsaLayout layout)
    : m_geometry(geometry), m_layout(layout),
      m_counts(static_cast<std::size_t>(geometry.rows_per_bank), 0),
      m_max((1u << geometry.counter_bits) - 1u) {
  geometry.validate();
}

CounterBank::Count CounterBank::bump(Row row) {
  Count& c = m_counts[static_cast<std::size_t>(row)];
  if (c >= m_max) {
    ++m_saturations;
    return c;
  }
  return ++c;
}

void CounterBank::reset(Row row) { m_counts[static_cast<std::size_t>(row)] = 0; }

void CounterBank::set(Row row, Count value) {
  m_counts[static_cast<std::size_t>(row)] = std::min(value, m_max);
}

CounterBank::Changes CounterBank::apply_activation(Row row, CounterSemantics semantics) {
  if (row < 0 || row >= m_geometry.rows_per_bank) throw std::out_of_range("row out of range");
  Changes out;
  switch (semantics) {
    case CounterSemantics::NoCount:
      break;
    case CounterSemantics::AggressorCount:
      out.emplace_back(row, bump(row));
      break;
    case CounterSemantics::VictimCount:
      reset(row);
      out.emplace_back(row, 0);
      for (Row v : victim_set(row, m_geometry)) out.emplace_back(v, bump(v));
      break;
  }
  return out;
}

double CounterBank::mean() const {
  double s = 0;
  for (Count c : m_counts) s += c;
  return m_counts.empty() ? 0.0 : s / static_cast<double>(m_counts.size());
}

CounterBank::Count CounterBank::max_count() const {
  return m_counts.empty() ? 0 : *std::max_element(m_counts.begin(), m_counts.end());
}

void CounterBank::export_csv(std::ostream& os) const {
  os << "row,count\n";
  for (std::size_t i = 0; i < m_counts.size(); ++i) os << i << ',' << m_counts[i] << '\n';
}

int csa_activations_for_event(const CsaLayout& layout, const DeviceGeometry& g, const CsaEvent& ev) {
  if (layout.kind == CsaLayoutKind::InDsaRow) return 0;
  if (ev.kind == CsaEvent::Kind::Refresh) {
    if (ev.rows.empty()) return 0;
    if (layout.kind == CsaLayoutKind::OptimizedDualCsa) return 1;
    std::set<std::int64_t> dsas;
    for (Row r : ev.rows) dsas.insert(g.dsa_of(r));
    return static_cast<int>(dsas.size());
  }
  if (layout.kind == CsaLayoutKind::NaiveCsa) return 1;
  Row row = ev.rows.at(0);
  Row base = g.dsa_of(row) * g.rows_per_dsa;
  Row lo = row, hi = row;
  for (Row v : victim_set(row, g)) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return (lo - base) / layout.chunk_rows != (hi - base) / layout.chunk_rows ? 2 : 1;
}

double guard_capacity_overhead(const CsaLayout& layout) {
  if (layout.kind == CsaLayoutKind::InDsaRow || layout.csa_rows == 0) return 0.0;
  int subarrays = layout.kind == CsaLayoutKind::OptimizedDualCsa ? 2 : 1;
  return static_cast<double>(layout.guard_rows_per_csa_row * subarrays) /
         static_cast<double>(layout.csa_rows * subarrays);
}

}  // namespace hammersim
