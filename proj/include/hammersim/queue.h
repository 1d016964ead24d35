#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hammersim/timing.h"

namespace hammersim {

struct QueueEntry {
  Row row = 0;
  std::uint32_t count = 0;
  bool operator==(const QueueEntry&) const = default;
};

// Bounded top-K table. Entries are kept sorted by count descending,
// equal counts by ascending row.
class PriorityQueue {
 public:
  explicit PriorityQueue(std::size_t depth) : m_depth(depth) {}

  // Returns the evicted row, if any.
  std::optional<Row> insert_or_update(Row row, std::uint32_t count);
  std::optional<QueueEntry> top() const;
  std::optional<QueueEntry> pop();
  void erase(Row row);
  bool contains(Row row) const;

  const std::vector<QueueEntry>& entries() const { return m_entries; }
  std::size_t size() const { return m_entries.size(); }
  std::size_t depth() const { return m_depth; }
  bool empty() const { return m_entries.empty(); }

 private:
  void settle(std::size_t i);

  std::size_t m_depth;
  std::vector<QueueEntry> m_entries;
};

inline bool ranks_before(const QueueEntry& a, const QueueEntry& b) {
  return a.count > b.count || (a.count == b.count && a.row < b.row);
}

}  // namespace hammersim
