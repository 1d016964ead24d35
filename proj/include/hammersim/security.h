#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hammersim/schemes.h"
#include "hammersim/timing.h"

namespace hammersim {

// How a round whose pool cannot fill a whole Alert is handled.
//  LiteralFloor: floor(R / (A + D)) alerts per round; a zero term ends the attack.
//  Carry: leftover activations carry into the next round's alert count.
//  Text: floor(R / (4 (A + D))) alerts, each clearing 4 N_Mit victims
//        (victim-based only; aggressor-based falls back to LiteralFloor).
enum class RecurrenceVariant { LiteralFloor, Carry, Text };

std::string to_string(RecurrenceVariant v);
RecurrenceVariant recurrence_variant_from_string(const std::string& s);

struct AnalysisParams {
  int br = 2;
  int abo_act = 3;
  int abo_delay = -1;  // negative: n_mit
  int n_mit = 4;
  std::int64_t rows_per_bank = 65536;
  RecurrenceVariant variant = RecurrenceVariant::Carry;
  // Attack must complete within this time; 0 removes the limit.
  Ps attack_budget = 4'500'000'000;
  Ps tRFM = 350'000;
  Ps tABO_ACT = 180'000;

  int delay() const { return abo_delay < 0 ? n_mit : abo_delay; }
  std::int64_t victim_r1_max() const { return rows_per_bank * (2 * br) / (2 * br + 1); }
  std::int64_t aggressor_r1_max() const { return rows_per_bank - 1; }
};

struct RoundStats {
  std::int64_t nr = 1;
  std::int64_t online_acts = 0;
  std::int64_t alerts = 0;
  bool stalled = false;
};

RoundStats pool_rounds_pvac(std::int64_t r1, const AnalysisParams& p);
RoundStats pool_rounds_prac(std::int64_t r1, const AnalysisParams& p);
std::int64_t pool_recurrence_pvac(std::int64_t r1, const AnalysisParams& p);
std::int64_t pool_recurrence_prac(std::int64_t r1, const AnalysisParams& p);

std::int64_t hc_pvac_from_nr(int n_bo, std::int64_t nr, const AnalysisParams& p);
std::int64_t hc_prac_from_nr(int n_bo, std::int64_t nr, const AnalysisParams& p);
std::int64_t hc_pvac(int n_bo, const AnalysisParams& p, std::int64_t r1);
std::int64_t hc_prac(int n_bo, const AnalysisParams& p, std::int64_t r1);
std::int64_t hc_chronus(int n_bo, const AnalysisParams& p);

// Wall-clock length of the feinting attack against the given discipline.
Ps attack_time(bool victim_based, int n_bo, std::int64_t r1, const RoundStats& s, Ps tRC, const AnalysisParams& p);

struct SecurityCurvePoint {
  SchemeKind scheme = SchemeKind::PVAC;
  int n_mit = 4;
  std::int64_t max_hc = 0;
  bool feasible = false;
  int n_bo = 0;
  std::int64_t worst_r1 = 0;
  std::int64_t nr = 0;
  std::int64_t hc = 0;  // analyzer HC at n_bo
};

struct WorstCase {
  std::int64_t hc = 0;
  std::int64_t r1 = 0;
  std::int64_t nr = 0;
};

// Max over the admissible r1 range of the scheme's HC at n_bo.
// PVAC uses the victim-based analysis; PRAC, QPRAC and MOAT the
// aggressor-based one; Chronus its closed form.
class SecurityAnalyzer {
 public:
  explicit SecurityAnalyzer(const AnalysisParams& p);

  WorstCase worst_case(SchemeKind scheme, int n_bo) const;
  SecurityCurvePoint solve_nbo(SchemeKind scheme, std::int64_t max_hc) const;
  const AnalysisParams& params() const { return m_params; }

 private:
  const std::vector<RoundStats>& rounds(bool victim_based) const;
  WorstCase worst_discipline(bool victim_based, int n_bo) const;

  AnalysisParams m_params;
  mutable std::vector<RoundStats> m_victim;
  mutable std::vector<RoundStats> m_aggressor;
};

double bw_bound(int n_mit, int n_bo, Ps tRC, Ps tRFM = 350'000);

void write_security_csv_header(std::ostream& os);
void write_security_csv_row(std::ostream& os, const SecurityCurvePoint& p);

}  // namespace hammersim
