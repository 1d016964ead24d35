#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "hammersim/counters.h"

using namespace hammersim;

namespace {

std::set<Row> as_set(const std::vector<Row>& v) { return {v.begin(), v.end()}; }

// Reference victim set: neighbours at distance 1..BR that share the DSA.
std::set<Row> naive_victims(Row r, const DeviceGeometry& g) {
  std::set<Row> out;
  for (Row v = 0; v < g.rows_per_bank; ++v) {
    Row d = v > r ? v - r : r - v;
    if (d >= 1 && d <= g.blast_radius && v / g.rows_per_dsa == r / g.rows_per_dsa) out.insert(v);
  }
  return out;
}

}  // namespace

TEST_CASE("victim sets are clipped at subarray boundaries") {
  DeviceGeometry g;
  CHECK(as_set(victim_set(128, g)) == std::set<Row>{126, 127, 129, 130});
  CHECK(as_set(victim_set(0, g)) == std::set<Row>{1, 2});
  CHECK(as_set(victim_set(511, g)) == std::set<Row>{509, 510});
  CHECK(as_set(victim_set(512, g)) == std::set<Row>{513, 514});

  DeviceGeometry small;
  small.rows_per_bank = 2048;
  small.rows_per_dsa = 256;
  for (int br : {1, 2, 3}) {
    small.blast_radius = br;
    for (Row r = 0; r < small.rows_per_bank; r += 7) CHECK(as_set(victim_set(r, small)) == naive_victims(r, small));
  }
}

TEST_CASE("activation semantics") {
  DeviceGeometry g;
  SUBCASE("victim counting resets the row and bumps its victims") {
    CounterBank b(g);
    auto ch = b.apply_activation(10, CounterSemantics::VictimCount);
    CHECK(b.get(10) == 0);
    for (Row v : {8, 9, 11, 12}) CHECK(b.get(v) == 1);
    CHECK(b.get(7) == 0);
    CHECK(b.get(13) == 0);
    CHECK(ch.size() == 5);
  }
  SUBCASE("aggressor counting bumps only the row") {
    CounterBank b(g);
    b.set(10, 5);
    auto ch = b.apply_activation(10, CounterSemantics::AggressorCount);
    CHECK(b.get(10) == 6);
    for (Row v : {8, 9, 11, 12}) CHECK(b.get(v) == 0);
    REQUIRE(ch.size() == 1);
    CHECK(ch[0] == std::pair<Row, CounterBank::Count>{10, 6});
  }
  SUBCASE("a neighbouring activation resets what the previous one added") {
    CounterBank b(g);
    b.apply_activation(10, CounterSemantics::VictimCount);
    CHECK(b.get(11) == 1);
    b.apply_activation(11, CounterSemantics::VictimCount);
    CHECK(b.get(11) == 0);
    CHECK(b.get(10) == 1);
  }
  SUBCASE("no-count leaves everything alone") {
    CounterBank b(g);
    b.set(10, 3);
    CHECK(b.apply_activation(10, CounterSemantics::NoCount).empty());
    CHECK(b.get(10) == 3);
  }
}

TEST_CASE("counters saturate, never wrap, and stay inside the subarray") {
  DeviceGeometry g;
  g.rows_per_bank = 1024;
  g.rows_per_dsa = 256;
  g.counter_bits = 3;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Row> row(0, g.rows_per_bank - 1);
  for (CounterSemantics sem : {CounterSemantics::AggressorCount, CounterSemantics::VictimCount}) {
    CounterBank b(g);
    CHECK(b.max_value() == 7);
    for (int i = 0; i < 20000; ++i) {
      // a tight hot set forces saturation
      Row r = (i % 3 == 0) ? row(rng) : 300 + (i % 5);
      std::vector<CounterBank::Count> before = b.counts();
      auto ch = b.apply_activation(r, sem);
      for (const auto& [x, c] : ch) CHECK(g.dsa_of(x) == g.dsa_of(r));
      for (Row x = i % 37; x < g.rows_per_bank; x += 37) {
        if (g.dsa_of(x) != g.dsa_of(r)) CHECK(b.get(x) == before[static_cast<std::size_t>(x)]);
      }
      if (sem == CounterSemantics::VictimCount) CHECK(b.get(r) == 0);
      if (i % 1000 == 0)
        for (auto c : b.counts()) CHECK(c <= 7);
    }
    CHECK(b.max_count() == 7);
    CHECK(b.saturation_events() > 0);
  }
}

TEST_CASE("counter snapshot export") {
  DeviceGeometry g;
  g.rows_per_bank = 512;
  CounterBank b(g);
  b.set(3, 9);
  std::ostringstream os;
  b.export_csv(os);
  std::string s = os.str();
  CHECK(s.rfind("row,count\n0,0\n", 0) == 0);
  CHECK(s.find("\n3,9\n") != std::string::npos);
  CHECK(std::count(s.begin(), s.end(), '\n') == 513);
}

TEST_CASE("counter update latency") {
  CsaTiming t;
  CHECK(counter_update_latency(t, 2) == 35'050);
  CHECK(to_ns(counter_update_latency(t, 2)) == doctest::Approx(35.1).epsilon(0.1 / 35.1));
  CsaTiming z = t;
  z.tUP = 0;
  CHECK(counter_update_latency(z, 2) == 30'900);
  CHECK(counter_update_latency(t, 4) == 38'370);
  CHECK(to_ns(counter_update_latency(t, 4)) == doctest::Approx(38.4).epsilon(0.05 / 38.4));
  CHECK_THROWS_AS(counter_update_latency(t, 0), std::invalid_argument);

  double share = csa_timing_share(t, 2);
  CHECK(share == doctest::Approx((7.6 + 19.2 + 4.1) / 35.05));
}

TEST_CASE("update latency stays under the default tRC for scaled banks") {
  const Ps tRC = builtin_timing_set(TimingLabel::Default).tRC;
  for (std::int64_t rows : {65536, 131072, 262144}) {
    CsaTiming t = csa_timing_for_rows(rows, kDefaultCsaPerDoubling);
    for (int br = 1; br <= 4; ++br) CHECK(counter_update_latency(t, br) < tRC);
  }
  CsaTiming base = csa_timing_for_rows(65536, kDefaultCsaPerDoubling);
  CHECK(base.tRCD_csa == CsaTiming{}.tRCD_csa);
  CsaTiming dbl = csa_timing_for_rows(131072, 2.0);
  CHECK(dbl.tWR_csa == 2 * CsaTiming{}.tWR_csa);
  CHECK(dbl.tUP == CsaTiming{}.tUP);
}

TEST_CASE("CSA activations per event") {
  DeviceGeometry g;
  std::vector<Row> spread;
  for (int d = 0; d < 8; ++d) spread.push_back(d * 512 + 17);
  CHECK(csa_activations_for_event(CsaLayout::naive(), g, CsaEvent::refresh(spread)) == 8);
  CHECK(csa_activations_for_event(CsaLayout::optimized(), g, CsaEvent::refresh(spread)) == 1);
  CHECK(csa_activations_for_event(CsaLayout::naive(), g, CsaEvent::refresh({0, 1, 2, 3, 4, 5, 6, 7})) == 1);
  CHECK(csa_activations_for_event(CsaLayout::optimized(), g, CsaEvent::act(128)) == 2);
  CHECK(csa_activations_for_event(CsaLayout::optimized(), g, CsaEvent::act(64)) == 1);
  CHECK(csa_activations_for_event(CsaLayout::naive(), g, CsaEvent::act(128)) == 1);
  CHECK(csa_activations_for_event(CsaLayout::in_dsa(), g, CsaEvent::act(128)) == 0);
  CHECK(csa_activations_for_event(CsaLayout::optimized(), g, CsaEvent::refresh({})) == 0);
}

TEST_CASE("dual activations: exhaustive count over one subarray") {
  DeviceGeometry g;
  const CsaLayout opt = CsaLayout::optimized();
  int dual = 0;
  std::map<std::int64_t, int> per_boundary;
  for (Row r = 0; r < g.rows_per_dsa; ++r) {
    // reference: does the row plus its in-subarray victims straddle a 128-row chunk?
    std::set<Row> span = naive_victims(r, g);
    span.insert(r);
    bool crosses = *span.begin() / 128 != *span.rbegin() / 128;
    int n = csa_activations_for_event(opt, g, CsaEvent::act(r));
    CHECK(n == (crosses ? 2 : 1));
    if (n == 2) {
      ++dual;
      ++per_boundary[(*span.rbegin() / 128) * 128];
    }
  }
  CHECK(dual == 12);
  CHECK(per_boundary.size() == 3);
  for (const auto& [b, n] : per_boundary) CHECK(n == 4);
  CHECK(static_cast<double>(dual) / static_cast<double>(g.rows_per_dsa) == doctest::Approx(3.0 / 128.0));
}

TEST_CASE("layout constants") {
  CHECK(CsaLayout::naive().csa_rows == 64);
  CHECK(CsaLayout::optimized().csa_rows == 32);
  CHECK(CsaLayout::optimized().chunk_rows == 128);
  CHECK(guard_capacity_overhead(CsaLayout::in_dsa()) == 0.0);
  CHECK(guard_capacity_overhead(CsaLayout::naive()) == doctest::Approx(2.0 / 64.0));
  CHECK(guard_capacity_overhead(CsaLayout::optimized()) == doctest::Approx(2.0 / 32.0));
  for (CsaLayoutKind k : {CsaLayoutKind::InDsaRow, CsaLayoutKind::NaiveCsa, CsaLayoutKind::OptimizedDualCsa})
    CHECK(csa_layout_from_string(to_string(k)) == k);
}
