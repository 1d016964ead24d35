#pragma once

#include <cstdint>
#include <ostream>
#include <utility>
#include <vector>

#include "hammersim/timing.h"

namespace hammersim {

enum class CounterSemantics { AggressorCount, VictimCount, NoCount };

enum class CsaLayoutKind { InDsaRow, NaiveCsa, OptimizedDualCsa };

struct CsaLayout {
  CsaLayoutKind kind = CsaLayoutKind::OptimizedDualCsa;
  int csa_rows = 32;  // per subarray; 64 for the naive single CSA
  std::int64_t chunk_rows = 128;
  int guard_rows_per_csa_row = 2;

  static CsaLayout in_dsa();
  static CsaLayout naive();
  static CsaLayout optimized();
};

std::string to_string(CsaLayoutKind k);
CsaLayoutKind csa_layout_from_string(const std::string& s);

struct CsaTiming {
  Ps tRCD_csa = 7600;
  Ps tRAS_csa = 16700;
  Ps tRP_csa = 4100;
  Ps tWR_csa = 19200;
  Ps tUP = 830;
};

// CSA timings for larger banks: each doubling of rows_per_bank over 64K
// multiplies the array timings by per_doubling (tUP is logic, unscaled).
CsaTiming csa_timing_for_rows(std::int64_t rows_per_bank, double per_doubling, const CsaTiming& base = {});

constexpr double kDefaultCsaPerDoubling = 1.0872;

Ps counter_update_latency(const CsaTiming& t, int blast_radius);
// fraction of the update latency spent in tRCD/tWR/tRP of the CSA
double csa_timing_share(const CsaTiming& t, int blast_radius);

std::vector<Row> victim_set(Row row, const DeviceGeometry& geometry);

class CounterBank {
 public:
  using Count = std::uint32_t;
  using Changes = std::vector<std::pair<Row, Count>>;

  CounterBank(const DeviceGeometry& geometry, CsaLayout layout = CsaLayout::optimized());

  Changes apply_activation(Row row, CounterSemantics semantics);
  void reset(Row row);
  Count get(Row row) const { return m_counts[static_cast<std::size_t>(row)]; }
  void set(Row row, Count value);

  Count max_value() const { return m_max; }
  const DeviceGeometry& geometry() const { return m_geometry; }
  const CsaLayout& layout() const { return m_layout; }
  std::int64_t saturation_events() const { return m_saturations; }
  const std::vector<Count>& counts() const { return m_counts; }
  double mean() const;
  Count max_count() const;

  void export_csv(std::ostream& os) const;

 private:
  Count bump(Row row);

  DeviceGeometry m_geometry;
  CsaLayout m_layout;
  std::vector<Count> m_counts;
  Count m_max;
  std::int64_t m_saturations = 0;
};

struct CsaEvent {
  enum class Kind { NormalAct, Refresh } kind = Kind::NormalAct;
  std::vector<Row> rows;  // one row for NormalAct

  static CsaEvent act(Row r) { return {Kind::NormalAct, {r}}; }
  static CsaEvent refresh(std::vector<Row> rows) { return {Kind::Refresh, std::move(rows)}; }
};

int csa_activations_for_event(const CsaLayout& layout, const DeviceGeometry& geometry, const CsaEvent& event);

// spare-row capacity cost of the guard rows inside the counter subarray
double guard_capacity_overhead(const CsaLayout& layout);

}  // namespace hammersim
