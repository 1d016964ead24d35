#include "hammersim/audit.h"

#include <optional>
#include <sstream>

namespace hammersim {

namespace {

std::string at(Ps t) { return format_ns(t) + "ns"; }

}  // namespace

AuditReport audit_log(const std::vector<CommandRecord>& log, const EngineConfig& config) {
  AuditReport rep;
  const size_t kMaxReported = 50;
  auto fail = [&rep](const std::string& s) {
    if (rep.violations.size() < kMaxReported) rep.violations.push_back(s);
  };

  TimingSet timing = builtin_timing_set(config.mitigation ? config.scheme.timing : TimingLabel::Default);
  Ps tRFC = config.mitigation ? config.scheme.tRFC : config.refresh.tRFC;
  const Ps tREFI = config.refresh.tREFI;
  const AboConfig& abo = config.abo;
  const int n_mit = config.scheme.n_mit;
  const int delay = abo.delay_for(config.scheme.scheme, n_mit);
  const bool adaptive = config.scheme.adaptive_rfm();

  std::optional<Ps> last_act;
  Ps block_end = 0;
  std::int64_t expected_ref = 0;
  Ps alert_at = -1;  // negative: no Alert outstanding
  int acts_since_alert = 0;
  int burst_rfms = 0;
  bool in_burst = false;
  std::optional<Ps> burst_end;
  int acts_since_burst = 0;
  Ps prev_time = 0;

  auto close_burst = [&](Ps now) {
    if (!in_burst) return;
    if (!adaptive && burst_rfms != n_mit) {
      std::ostringstream os;
      os << "burst ending before " << at(now) << " issued " << burst_rfms << " RFMs, expected " << n_mit;
      fail(os.str());
    }
    in_burst = false;
    burst_rfms = 0;
  };

  for (const CommandRecord& c : log) {
    ++rep.commands_checked;
    if (c.time < prev_time) fail("log not time-ordered at " + at(c.time));
    prev_time = c.time;
    switch (c.kind) {
      case CommandKind::ACT: {
        if (last_act && c.time - *last_act < timing.tRC) fail("tRC violated at " + at(c.time));
        if (c.time < block_end) fail("ACT inside REF/RFM block at " + at(c.time));
        if (in_burst) close_burst(c.time);
        if (alert_at >= 0) {
          ++acts_since_alert;
          if (acts_since_alert > abo.abo_act) fail("more than ABO_ACT ACTs after Alert at " + at(c.time));
          if (c.time >= alert_at + abo.tABO_ACT) fail("ACT after tABO_ACT expired at " + at(c.time));
        }
        ++acts_since_burst;
        last_act = c.time;
        break;
      }
      case CommandKind::REF: {
        if (c.seq != expected_ref) fail("REF sequence gap at " + at(c.time));
        expected_ref = c.seq + 1;
        Ps sched = c.seq * tREFI;
        if (c.time < sched || c.time >= sched + tREFI) fail("REF outside its tREFI slot at " + at(c.time));
        if (c.time < block_end) fail("REF overlaps a block at " + at(c.time));
        if (c.end - c.time != tRFC) fail("REF duration != tRFC at " + at(c.time));
        block_end = c.end;
        break;
      }
      case CommandKind::RFM: {
        if (c.time < block_end) fail("RFM overlaps a block at " + at(c.time));
        if (c.end - c.time != abo.tRFM) fail("RFM duration wrong at " + at(c.time));
        if (alert_at >= 0) {
          if (c.time - alert_at > abo.tABO_ACT) fail("first RFM later than tABO_ACT after Alert at " + at(c.time));
          alert_at = -1;
          in_burst = true;
          burst_rfms = 0;
        } else if (!in_burst) {
          fail("RFM without a preceding Alert at " + at(c.time));
        }
        ++burst_rfms;
        block_end = c.end;
        burst_end = c.end;
        acts_since_burst = 0;
        break;
      }
      case CommandKind::ALERT: {
        if (in_burst) close_burst(c.time);
        if (alert_at >= 0) fail("Alert without RFM since previous Alert at " + at(c.time));
        if (burst_end && delay > 0 && acts_since_burst < delay && c.time < *burst_end + delay * timing.tRC)
          fail("Alert during ABO_Delay hold-off at " + at(c.time));
        alert_at = c.time;
        acts_since_alert = 0;
        break;
      }
      case CommandKind::PROACT:
        break;
    }
  }
  if (alert_at >= 0 && !log.empty()) {
    // an Alert still open at the end of the run is legal only inside its window
    Ps end = config.duration;
    if (end - alert_at > abo.tABO_ACT + abo.tRFM) fail("Alert at " + at(alert_at) + " never serviced");
  }
  return rep;
}

}  // namespace hammersim
