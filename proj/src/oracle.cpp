#include "hammersim/oracle.h"

#include <algorithm>

#include "hammersim/audit.h"

namespace hammersim {

DeviceGeometry oracle_geometry(std::int64_t rows) {
  DeviceGeometry g;
  g.rows_per_bank = rows;
  g.rows_per_dsa = std::min<std::int64_t>(rows, 512);
  g.banks = 1;
  return g;
}

std::vector<std::int64_t> oracle_r1_grid(Discipline d, const DeviceGeometry& g) {
  std::int64_t lo = d == Discipline::VictimBased ? 4 : 1;
  std::int64_t hi = d == Discipline::VictimBased ? max_victim_pool(g) : g.rows_per_bank - 1;
  std::vector<std::int64_t> out;
  for (std::int64_t r = lo; r <= std::min<std::int64_t>(hi, 12); ++r) out.push_back(r);
  for (std::int64_t r = 16; r < hi; r *= 2) out.push_back(r);
  out.push_back(hi);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

OracleResult brute_force_oracle(const SchemeConfig& scheme, const DeviceGeometry& geometry,
                                const std::vector<std::int64_t>& r1s, const AboConfig& abo) {
  OracleResult res;
  res.scheme = scheme.scheme;
  res.n_bo = scheme.n_bo;
  res.n_mit = scheme.n_mit;

  AnalysisParams p;
  p.br = geometry.blast_radius;
  p.abo_act = abo.abo_act;
  p.abo_delay = abo.delay_for(scheme.scheme, scheme.n_mit);
  p.n_mit = scheme.n_mit;
  p.rows_per_bank = geometry.rows_per_bank;
  p.attack_budget = 0;
  p.tRFM = abo.tRFM;
  p.tABO_ACT = abo.tABO_ACT;
  res.bound_hc = SecurityAnalyzer(p).worst_case(scheme.scheme, scheme.n_bo).hc;

  EngineConfig ec;
  ec.geometry = geometry;
  ec.scheme = scheme;
  ec.abo = abo;
  ec.keep_log = true;

  const bool victim = scheme.victim_based();
  for (std::int64_t r1 : r1s) {
    FeintingSpec spec = victim ? FeintingSpec::victim_based(r1, scheme.n_bo, scheme.n_mit)
                               : FeintingSpec::aggressor_based(r1, scheme.n_bo, scheme.n_mit);
    spec.abo_act = abo.abo_act;
    spec.abo_delay = abo.delay_for(scheme.scheme, scheme.n_mit);
    FeintingRun run = run_feinting(ec, spec);
    const EngineMetrics& m = run.result.metrics;

    EngineConfig audit_cfg = ec;
    audit_cfg.duration = m.end_time;
    bool ok = audit_log(run.result.log, audit_cfg).ok();

    OracleSample s{r1, m.max_trace_hammered, m.max_hammered, m.max_hammered_row, m.alerts_raised, m.rfms_issued, ok};
    res.samples.push_back(s);
    res.audit_ok = res.audit_ok && ok;
    res.total_hc = std::max(res.total_hc, s.total_hc);
    if (s.observed_hc > res.observed_hc) {
      res.observed_hc = s.observed_hc;
      res.worst_r1 = r1;
    }
  }
  return res;
}

}  // namespace hammersim
