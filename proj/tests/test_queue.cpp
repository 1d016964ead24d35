#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "hammersim/queue.h"

using namespace hammersim;

TEST_CASE("top-K insert, update and eviction") {
  PriorityQueue q(2);
  CHECK_FALSE(q.insert_or_update(1, 5));
  CHECK_FALSE(q.insert_or_update(2, 3));
  auto ev = q.insert_or_update(3, 4);
  REQUIRE(ev);
  CHECK(*ev == 2);
  CHECK(q.entries() == std::vector<QueueEntry>{{1, 5}, {3, 4}});

  CHECK_FALSE(q.insert_or_update(1, 7));
  CHECK(q.top()->row == 1);
  CHECK(q.top()->count == 7);
  CHECK(q.size() == 2);

  // not larger than the minimum: rejected, nothing evicted
  CHECK_FALSE(q.insert_or_update(9, 4));
  CHECK_FALSE(q.contains(9));
}

TEST_CASE("ties keep the lower row") {
  PriorityQueue q(2);
  q.insert_or_update(10, 3);
  q.insert_or_update(20, 3);
  CHECK(q.entries().front().row == 10);
  CHECK_FALSE(q.insert_or_update(30, 3));  // same count, higher row: rejected
  auto ev = q.insert_or_update(5, 3);     // same count, lower row: outranks the tail
  REQUIRE(ev);
  CHECK(*ev == 20);
  auto p = q.pop();
  REQUIRE(p);
  CHECK(p->row == 5);
  q.erase(10);
  CHECK(q.empty());
  CHECK_FALSE(q.pop());
}

TEST_CASE("exact top-K when few rows are active") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t K = 1 + trial % 8;
    PriorityQueue q(K);
    std::map<Row, std::uint32_t> truth;
    std::uniform_int_distribution<Row> row(0, static_cast<Row>(K) - 1);
    for (int i = 0; i < 60; ++i) {
      Row r = row(rng) * 3;
      std::uint32_t c = ++truth[r];
      q.insert_or_update(r, c);
    }
    std::vector<QueueEntry> want;
    for (const auto& [r, c] : truth) want.push_back({r, c});
    std::sort(want.begin(), want.end(), ranks_before);
    CHECK(q.entries() == want);
  }
}

TEST_CASE("eviction soundness under heavy churn") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t K = 4 + trial % 5;
    PriorityQueue q(K);
    std::map<Row, std::uint32_t> cnt;
    std::uint32_t max_evicted = 0;
    std::uniform_int_distribution<Row> row(0, 40);
    for (int i = 0; i < 2000; ++i) {
      Row r = row(rng);
      std::uint32_t c = ++cnt[r];
      bool full = q.size() == q.depth();
      auto ev = q.insert_or_update(r, c);
      if (ev && full) max_evicted = std::max(max_evicted, cnt[*ev]);
      CHECK(q.size() <= K);
      // sorted, no duplicates
      for (std::size_t j = 1; j < q.entries().size(); ++j) {
        CHECK(ranks_before(q.entries()[j - 1], q.entries()[j]));
        CHECK(q.entries()[j - 1].row != q.entries()[j].row);
      }
      if (q.size() == K) CHECK(q.entries().back().count >= max_evicted);
    }
  }
}

TEST_CASE("zero-depth queue holds nothing") {
  PriorityQueue q(0);
  CHECK_FALSE(q.insert_or_update(1, 1));
  CHECK(q.empty());
}
