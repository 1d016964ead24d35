#pragma once

#include <string>
#include <vector>

#include "hammersim/engine.h"

namespace hammersim {

struct AuditReport {
  std::vector<std::string> violations;
  std::size_t commands_checked = 0;
  bool ok() const { return violations.empty(); }
};

// Independent pass over a command log: tRC spacing, REF cadence, REF/RFM
// blocking, the ABO window and the post-RFM hold-off.
AuditReport audit_log(const std::vector<CommandRecord>& log, const EngineConfig& config);

}  // namespace hammersim
