#include "hammersim/attacks.h"

#include <random>
#include <stdexcept>

namespace hammersim {

void RoundRobinSpec::validate(const DeviceGeometry& g) const {
  if (n < 1) throw std::invalid_argument("round robin: n must be >= 1");
  if (stride < 1) throw std::invalid_argument("round robin: stride must be >= 1");
  if (base_row < 0 || base_row + (n - 1) * stride >= g.rows_per_bank)
    throw std::invalid_argument("round robin: pool exceeds bank");
}

std::vector<Row> round_robin_rows(const RoundRobinSpec& spec) {
  std::vector<Row> rows;
  for (std::int64_t i = 0; i < spec.n; ++i) rows.push_back(spec.base_row + i * spec.stride);
  return rows;
}

Trace gen_round_robin(const RoundRobinSpec& spec, const TimingSet& timing) {
  return saturation_act_stream(round_robin_rows(spec), spec.duration, timing);
}

Trace gen_idle(Ps duration) {
  Trace t;
  if (duration > 0) t.push_back(TraceEvent::idle_for(duration));
  return t;
}

Trace gen_random(const DeviceGeometry& g, std::int64_t count, Ps mean_gap, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Row> row(0, g.rows_per_bank - 1);
  std::exponential_distribution<double> gap(1.0 / static_cast<double>(std::max<Ps>(mean_gap, 1)));
  Trace t;
  Ps now = 0;
  for (std::int64_t i = 0; i < count; ++i) {
    now += static_cast<Ps>(gap(rng));
    t.push_back(TraceEvent::act_at(now, row(rng)));
  }
  return t;
}

std::optional<ActRequest> CyclicSource::peek() {
  if (m_rows.empty()) return std::nullopt;
  return ActRequest{std::nullopt, m_rows[m_pos]};
}

void CyclicSource::consume(Ps) { m_pos = (m_pos + 1) % m_rows.size(); }

FeintingSpec FeintingSpec::victim_based(std::int64_t r1, int n_bo, int n_mit) {
  FeintingSpec s;
  s.discipline = Discipline::VictimBased;
  s.r1 = r1;
  s.n_bo = n_bo;
  s.n_mit = n_mit;
  s.layout_stride = 5;
  return s;
}

FeintingSpec FeintingSpec::aggressor_based(std::int64_t r1, int n_bo, int n_mit) {
  FeintingSpec s = victim_based(r1, n_bo, n_mit);
  s.discipline = Discipline::AggressorBased;
  s.layout_stride = 1;
  return s;
}

std::int64_t max_victim_pool(const DeviceGeometry& g) {
  std::int64_t span = 2 * g.blast_radius + 1;
  return g.num_dsas() * (g.rows_per_dsa / span) * (span - 1);
}

FeintingSource::FeintingSource(const FeintingSpec& spec, const DeviceGeometry& g) : m_spec(spec), m_geometry(g) {
  if (spec.r1 < 1) throw std::invalid_argument("feinting: r1 must be >= 1");
  if (spec.n_bo < 1) throw std::invalid_argument("feinting: n_bo must be >= 1");
  const int br = g.blast_radius;
  if (spec.discipline == Discipline::VictimBased) {
    if (spec.layout_stride != 2 * br + 1) throw std::invalid_argument("feinting: victim layout stride must be 2*BR+1");
    std::int64_t left = spec.r1;
    for (std::int64_t d = 0; d < g.num_dsas() && left > 0; ++d) {
      Row dsa = d * g.rows_per_dsa;
      for (Row start = dsa; start + spec.layout_stride <= dsa + g.rows_per_dsa && left > 0; start += spec.layout_stride) {
        Row a = start + br;
        m_aggressors.push_back(a);
        for (Row v = start; v < start + spec.layout_stride && left > 0; ++v) {
          if (v == a) continue;
          m_victims[a].insert(v);
          m_owner[v] = a;
          --left;
        }
      }
    }
    if (left > 0) throw std::invalid_argument("feinting: r1 exceeds the victim pool this bank can host");
  } else {
    if (spec.base_row < 0 || spec.base_row + spec.r1 > g.rows_per_bank)
      throw std::invalid_argument("feinting: aggressor pool exceeds bank");
    for (Row r = spec.base_row; r < spec.base_row + spec.r1; ++r) {
      m_aggressors.push_back(r);
      m_pool.insert(r);
    }
  }
  if (spec.n_bo - 1 <= 0) {
    m_phase = Phase::Online;
    next_round();
  }
}

std::vector<Row> FeintingSource::prepared_victims() const {
  std::vector<Row> out;
  for (const auto& [v, a] : m_owner) out.push_back(v);
  return out;
}

std::size_t FeintingSource::pool_size() const {
  if (m_spec.discipline == Discipline::AggressorBased) return m_pool.size();
  std::size_t n = 0;
  for (const auto& [a, vs] : m_victims) n += vs.size();
  return n;
}

bool FeintingSource::alive(Row a) const {
  if (m_spec.discipline == Discipline::AggressorBased) return m_pool.count(a) > 0;
  auto it = m_victims.find(a);
  return it != m_victims.end() && !it->second.empty();
}

void FeintingSource::next_round() {
  std::size_t pool = pool_size();
  std::size_t stop = m_spec.discipline == Discipline::VictimBased ? 1 : static_cast<std::size_t>(2 * m_geometry.blast_radius);
  m_idx = 0;
  m_round.clear();
  if (pool == 0) {
    m_phase = Phase::Done;
    return;
  }
  if (pool <= stop) {
    m_phase = Phase::Final;
    m_final_left = m_spec.abo_act + m_spec.delay();
    for (Row a : m_aggressors)
      if (alive(a)) m_round.push_back(a);
    return;
  }
  for (Row a : m_aggressors)
    if (alive(a)) m_round.push_back(a);
  ++m_rounds;
}

std::optional<ActRequest> FeintingSource::peek() {
  for (;;) {
    switch (m_phase) {
      case Phase::Setup:
        if (m_aggressors.empty()) {
          m_phase = Phase::Done;
          continue;
        }
        if (m_idx >= m_aggressors.size()) {
          m_idx = 0;
          if (++m_rep >= m_spec.n_bo - 1) {
            m_phase = Phase::Online;
            next_round();
            continue;
          }
        }
        return ActRequest{std::nullopt, m_aggressors[m_idx]};
      case Phase::Online:
        while (m_idx < m_round.size() && !alive(m_round[m_idx])) ++m_idx;
        if (m_idx >= m_round.size()) {
          next_round();
          continue;
        }
        return ActRequest{std::nullopt, m_round[m_idx]};
      case Phase::Final:
        if (m_final_left <= 0 || m_round.empty()) {
          m_phase = Phase::Done;
          continue;
        }
        return ActRequest{std::nullopt, m_round[m_idx % m_round.size()]};
      case Phase::Done:
        return std::nullopt;
    }
  }
}

void FeintingSource::consume(Ps) {
  switch (m_phase) {
    case Phase::Setup: ++m_idx; ++m_setup_acts; break;
    case Phase::Online: ++m_idx; ++m_online_acts; break;
    case Phase::Final: ++m_idx; --m_final_left; ++m_online_acts; break;
    case Phase::Done: break;
  }
}

void FeintingSource::on_mitigated(const std::vector<Row>& rows, Ps) {
  for (Row r : rows) {
    if (m_spec.discipline == Discipline::AggressorBased) {
      m_pool.erase(r);
    } else {
      auto it = m_owner.find(r);
      if (it != m_owner.end()) m_victims[it->second].erase(r);
    }
  }
}

FeintingRun run_feinting(const EngineConfig& config, const FeintingSpec& spec) {
  EngineConfig c = config;
  c.stop_when_source_done = true;
  FeintingSource src(spec, c.geometry);
  Engine engine(c);
  FeintingRun out;
  out.result = engine.run(src);
  out.setup_acts = src.setup_acts();
  out.online_acts = src.online_acts();
  out.rounds = src.rounds();
  return out;
}

}  // namespace hammersim
