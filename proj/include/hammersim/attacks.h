#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <vector>

#include "hammersim/engine.h"

namespace hammersim {

struct RoundRobinSpec {
  std::int64_t n = 128;
  int stride = 1;
  Row base_row = 0;
  Ps duration = 32'000'000'000;

  void validate(const DeviceGeometry& g) const;
};

std::vector<Row> round_robin_rows(const RoundRobinSpec& spec);
// Static ASAP stream sized to fill the duration at tRC.
Trace gen_round_robin(const RoundRobinSpec& spec, const TimingSet& timing);
Trace gen_idle(Ps duration);
// Uniform-random rows, exponential inter-arrival with the given mean gap.
Trace gen_random(const DeviceGeometry& g, std::int64_t count, Ps mean_gap, std::uint64_t seed);

// Saturating ASAP source cycling over a fixed row list.
class CyclicSource : public ActSource {
 public:
  explicit CyclicSource(std::vector<Row> rows) : m_rows(std::move(rows)) {}
  std::optional<ActRequest> peek() override;
  void consume(Ps issued_at) override;

 private:
  std::vector<Row> m_rows;
  std::size_t m_pos = 0;
};

enum class Discipline { VictimBased, AggressorBased };

struct FeintingSpec {
  Discipline discipline = Discipline::VictimBased;
  std::int64_t r1 = 4;
  int n_bo = 16;
  int n_mit = 4;
  int abo_act = 3;
  int abo_delay = -1;  // negative: n_mit
  int layout_stride = 5;
  Row base_row = 0;

  static FeintingSpec victim_based(std::int64_t r1, int n_bo, int n_mit);
  static FeintingSpec aggressor_based(std::int64_t r1, int n_bo, int n_mit);
  int delay() const { return abo_delay < 0 ? n_mit : abo_delay; }
};

// Victims the stride layout can host without straddling a subarray.
std::int64_t max_victim_pool(const DeviceGeometry& g);

// Closed-loop feinting attacker: a setup phase of n_bo - 1 activations
// per prepared aggressor, then rounds over the surviving pool, dropping
// rows the defense reports as mitigated.
class FeintingSource : public ActSource {
 public:
  FeintingSource(const FeintingSpec& spec, const DeviceGeometry& geometry);

  std::optional<ActRequest> peek() override;
  void consume(Ps issued_at) override;
  void on_mitigated(const std::vector<Row>& rows, Ps at) override;

  std::int64_t setup_acts() const { return m_setup_acts; }
  std::int64_t online_acts() const { return m_online_acts; }
  std::int64_t rounds() const { return m_rounds; }
  std::size_t pool_size() const;
  const std::vector<Row>& aggressors() const { return m_aggressors; }
  std::vector<Row> prepared_victims() const;

 private:
  enum class Phase { Setup, Online, Final, Done };
  bool alive(Row aggressor) const;
  void next_round();

  FeintingSpec m_spec;
  DeviceGeometry m_geometry;
  std::vector<Row> m_aggressors;
  std::map<Row, std::set<Row>> m_victims;  // aggressor -> surviving pool victims
  std::map<Row, Row> m_owner;              // victim -> aggressor
  std::set<Row> m_pool;                    // aggressor-based pool
  Phase m_phase = Phase::Setup;
  std::int64_t m_rep = 0;
  std::size_t m_idx = 0;
  std::vector<Row> m_round;
  std::int64_t m_final_left = 0;
  std::int64_t m_setup_acts = 0;
  std::int64_t m_online_acts = 0;
  std::int64_t m_rounds = 0;
};

struct FeintingRun {
  RunResult result;
  std::int64_t setup_acts = 0;
  std::int64_t online_acts = 0;
  std::int64_t rounds = 0;
};

FeintingRun run_feinting(const EngineConfig& config, const FeintingSpec& spec);

}  // namespace hammersim
