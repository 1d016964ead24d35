#pragma once

#include <cstdint>
#include <vector>

#include "hammersim/attacks.h"
#include "hammersim/engine.h"
#include "hammersim/schemes.h"
#include "hammersim/security.h"

namespace hammersim {

struct OracleSample {
  std::int64_t r1 = 0;
  std::int64_t observed_hc = 0;   // attacker ACTs only
  std::int64_t total_hc = 0;      // including mitigation activations
  Row hammered_row = -1;
  std::int64_t alerts = 0;
  std::int64_t rfms = 0;
  bool audit_ok = true;
};

struct OracleResult {
  SchemeKind scheme = SchemeKind::PVAC;
  int n_bo = 0;
  int n_mit = 0;
  std::int64_t observed_hc = 0;  // max over samples, attacker ACTs only
  std::int64_t total_hc = 0;
  std::int64_t worst_r1 = 0;
  std::int64_t bound_hc = 0;     // analyzer, unlimited attack time
  bool audit_ok = true;
  std::vector<OracleSample> samples;

  bool sound() const { return observed_hc <= bound_hc; }
};

DeviceGeometry oracle_geometry(std::int64_t rows = 256);

// Pool sizes worth trying on a bank: small pools, powers of two and the
// largest pool the discipline can lay out.
std::vector<std::int64_t> oracle_r1_grid(Discipline d, const DeviceGeometry& g);

// Runs the closed-loop feinting attack against the full engine for every
// r1 and compares the worst observed hammered count with the analyzer.
OracleResult brute_force_oracle(const SchemeConfig& scheme, const DeviceGeometry& geometry,
                                const std::vector<std::int64_t>& r1s, const AboConfig& abo = {});

}  // namespace hammersim
