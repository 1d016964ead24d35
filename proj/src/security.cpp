#include "hammersim/security.h"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace hammersim {

std::string to_string(RecurrenceVariant v) {
  switch (v) {
    case RecurrenceVariant::LiteralFloor: return "literal";
    case RecurrenceVariant::Carry: return "carry";
    case RecurrenceVariant::Text: return "text";
  }
  return "?";
}

RecurrenceVariant recurrence_variant_from_string(const std::string& s) {
  if (s == "literal") return RecurrenceVariant::LiteralFloor;
  if (s == "carry") return RecurrenceVariant::Carry;
  if (s == "text") return RecurrenceVariant::Text;
  throw std::invalid_argument("unknown recurrence variant '" + s + "'");
}

namespace {

constexpr std::int64_t kRoundLimit = 1'000'000;

RoundStats run_rounds(std::int64_t r1, const AnalysisParams& p, bool victim_based) {
  const std::int64_t per_alert = p.abo_act + p.delay();
  const std::int64_t stop = victim_based ? 1 : 2 * p.br;
  RecurrenceVariant v = p.variant;
  if (!victim_based && v == RecurrenceVariant::Text) v = RecurrenceVariant::LiteralFloor;

  RoundStats s;
  std::int64_t R = r1;
  std::int64_t credit = 0;
  while (R > stop) {
    s.online_acts += R;
    std::int64_t base = victim_based ? R : R - p.br;
    std::int64_t f = 0;
    std::int64_t cleared = p.n_mit;
    switch (v) {
      case RecurrenceVariant::LiteralFloor:
        f = base / per_alert;
        break;
      case RecurrenceVariant::Carry: {
        std::int64_t tot = credit + base;
        f = tot / per_alert;
        credit = tot % per_alert;
        break;
      }
      case RecurrenceVariant::Text:
        f = base / (4 * per_alert);
        cleared = 4 * p.n_mit;
        break;
    }
    if (f == 0 && v != RecurrenceVariant::Carry) {
      s.stalled = true;
      break;
    }
    s.alerts += f;
    R = std::max(R - cleared * f, stop);
    if (++s.nr > kRoundLimit) {
      s.stalled = true;
      break;
    }
  }
  return s;
}

}  // namespace

RoundStats pool_rounds_pvac(std::int64_t r1, const AnalysisParams& p) { return run_rounds(r1, p, true); }
RoundStats pool_rounds_prac(std::int64_t r1, const AnalysisParams& p) { return run_rounds(r1, p, false); }
std::int64_t pool_recurrence_pvac(std::int64_t r1, const AnalysisParams& p) { return pool_rounds_pvac(r1, p).nr; }
std::int64_t pool_recurrence_prac(std::int64_t r1, const AnalysisParams& p) { return pool_rounds_prac(r1, p).nr; }

std::int64_t hc_pvac_from_nr(int n_bo, std::int64_t nr, const AnalysisParams& p) {
  return (n_bo - 1) + nr + p.delay() + p.abo_act + p.br;
}

std::int64_t hc_prac_from_nr(int n_bo, std::int64_t nr, const AnalysisParams& p) {
  return 2 * p.br * (n_bo - 1) + 2 * p.br * nr + p.delay() + p.abo_act + p.br - 1;
}

std::int64_t hc_pvac(int n_bo, const AnalysisParams& p, std::int64_t r1) {
  return hc_pvac_from_nr(n_bo, pool_recurrence_pvac(r1, p), p);
}

std::int64_t hc_prac(int n_bo, const AnalysisParams& p, std::int64_t r1) {
  return hc_prac_from_nr(n_bo, pool_recurrence_prac(r1, p), p);
}

std::int64_t hc_chronus(int n_bo, const AnalysisParams& p) {
  return 2 * p.br * (n_bo - 1) + p.abo_act + p.br;
}

Ps attack_time(bool, int n_bo, std::int64_t r1, const RoundStats& s, Ps tRC, const AnalysisParams& p) {
  Ps setup = r1 * (n_bo - 1) * tRC;
  Ps online = s.online_acts * tRC;
  Ps mitigation = s.alerts * (p.n_mit * p.tRFM + p.tABO_ACT);
  return setup + online + mitigation;
}

SecurityAnalyzer::SecurityAnalyzer(const AnalysisParams& p) : m_params(p) {
  if (p.br < 1 || p.abo_act < 0 || p.n_mit < 1) throw std::invalid_argument("analysis: bad parameters");
  if (p.abo_act + p.delay() < 1) throw std::invalid_argument("analysis: ABO_ACT + ABO_Delay must be >= 1");
}

const std::vector<RoundStats>& SecurityAnalyzer::rounds(bool victim_based) const {
  auto& cache = victim_based ? m_victim : m_aggressor;
  if (cache.empty()) {
    std::int64_t hi = victim_based ? m_params.victim_r1_max() : m_params.aggressor_r1_max();
    cache.resize(static_cast<std::size_t>(hi + 1));
    for (std::int64_t r = 1; r <= hi; ++r) cache[static_cast<std::size_t>(r)] = run_rounds(r, m_params, victim_based);
  }
  return cache;
}

WorstCase SecurityAnalyzer::worst_discipline(bool victim_based, int n_bo) const {
  const auto& rs = rounds(victim_based);
  Ps tRC = builtin_timing_set(victim_based ? TimingLabel::Default : TimingLabel::PRAC).tRC;
  std::int64_t lo = victim_based ? std::min<std::int64_t>(4, m_params.victim_r1_max()) : 1;
  std::int64_t hi = static_cast<std::int64_t>(rs.size()) - 1;
  const Ps budget = m_params.attack_budget;
  WorstCase w;
  bool any = false;
  for (std::int64_t r1 = lo; r1 <= hi; ++r1) {
    if (budget > 0 && r1 * (n_bo - 1) * tRC > budget) break;
    const RoundStats& s = rs[static_cast<std::size_t>(r1)];
    if (budget > 0 && attack_time(victim_based, n_bo, r1, s, tRC, m_params) > budget) continue;
    std::int64_t hc = victim_based ? hc_pvac_from_nr(n_bo, s.nr, m_params) : hc_prac_from_nr(n_bo, s.nr, m_params);
    if (!any || hc > w.hc) {
      w = {hc, r1, s.nr};
      any = true;
    }
  }
  if (!any) {
    // budget admits no pool at all; the smallest pool still bounds the attack
    const RoundStats& s = rs[static_cast<std::size_t>(lo)];
    std::int64_t hc = victim_based ? hc_pvac_from_nr(n_bo, s.nr, m_params) : hc_prac_from_nr(n_bo, s.nr, m_params);
    w = {hc, lo, s.nr};
  }
  return w;
}

WorstCase SecurityAnalyzer::worst_case(SchemeKind scheme, int n_bo) const {
  if (n_bo < 1) throw std::invalid_argument("worst_case: n_bo must be >= 1");
  if (scheme == SchemeKind::Chronus) return {hc_chronus(n_bo, m_params), 0, 0};
  return worst_discipline(scheme == SchemeKind::PVAC, n_bo);
}

SecurityCurvePoint SecurityAnalyzer::solve_nbo(SchemeKind scheme, std::int64_t max_hc) const {
  SecurityCurvePoint pt;
  pt.scheme = scheme;
  pt.n_mit = m_params.n_mit;
  pt.max_hc = max_hc;
  const std::int64_t A = m_params.abo_act, D = m_params.delay(), BR = m_params.br;
  std::int64_t upper = 0;
  switch (scheme) {
    case SchemeKind::Chronus: {
      std::int64_t slack = max_hc - A - BR;
      if (slack >= 0) {
        pt.feasible = true;
        pt.n_bo = static_cast<int>(slack / (2 * BR) + 1);
        pt.hc = hc_chronus(pt.n_bo, m_params);
      }
      return pt;
    }
    case SchemeKind::PVAC:
      upper = max_hc - D - A - BR;
      break;
    default:
      upper = (max_hc - D - A - BR + 1) / (2 * BR);
      break;
  }
  for (std::int64_t n = upper; n >= 1; --n) {
    WorstCase w = worst_case(scheme, static_cast<int>(n));
    if (w.hc <= max_hc) {
      pt.feasible = true;
      pt.n_bo = static_cast<int>(n);
      pt.worst_r1 = w.r1;
      pt.nr = w.nr;
      pt.hc = w.hc;
      return pt;
    }
  }
  return pt;
}

double bw_bound(int n_mit, int n_bo, Ps tRC, Ps tRFM) {
  double mit = static_cast<double>(n_mit) * static_cast<double>(tRFM);
  return mit / (mit + static_cast<double>(n_bo) * static_cast<double>(tRC));
}

void write_security_csv_header(std::ostream& os) { os << "scheme,n_mit,max_hc,n_bo,worst_r1,nr\n"; }

void write_security_csv_row(std::ostream& os, const SecurityCurvePoint& p) {
  os << to_string(p.scheme) << ',' << p.n_mit << ',' << p.max_hc << ',';
  if (p.feasible)
    os << p.n_bo << ',' << p.worst_r1 << ',' << p.nr << '\n';
  else
    os << "infeasible,,\n";
}

}  // namespace hammersim
