#include "hammersim/queue.h"

#include <algorithm>

namespace hammersim {

void PriorityQueue::settle(std::size_t i) {
  while (i > 0 && ranks_before(m_entries[i], m_entries[i - 1])) {
    std::swap(m_entries[i], m_entries[i - 1]);
    --i;
  }
  while (i + 1 < m_entries.size() && ranks_before(m_entries[i + 1], m_entries[i])) {
    std::swap(m_entries[i], m_entries[i + 1]);
    ++i;
  }
}

std::optional<Row> PriorityQueue::insert_or_update(Row row, std::uint32_t count) {
  for (std::size_t i = 0; i < m_entries.size(); ++i) {
    if (m_entries[i].row == row) {
      m_entries[i].count = count;
      settle(i);
      return std::nullopt;
    }
  }
  if (m_depth == 0) return std::nullopt;
  QueueEntry e{row, count};
  if (m_entries.size() < m_depth) {
    m_entries.push_back(e);
    settle(m_entries.size() - 1);
    return std::nullopt;
  }
  if (!ranks_before(e, m_entries.back())) return std::nullopt;
  Row evicted = m_entries.back().row;
  m_entries.back() = e;
  settle(m_entries.size() - 1);
  return evicted;
}

std::optional<QueueEntry> PriorityQueue::top() const {
  if (m_entries.empty()) return std::nullopt;
  return m_entries.front();
}

std::optional<QueueEntry> PriorityQueue::pop() {
  if (m_entries.empty()) return std::nullopt;
  QueueEntry e = m_entries.front();
  m_entries.erase(m_entries.begin());
  return e;
}

void PriorityQueue::erase(Row row) {
  auto it = std::find_if(m_entries.begin(), m_entries.end(), [row](const QueueEntry& e) { return e.row == row; });
  if (it != m_entries.end()) m_entries.erase(it);
}

bool PriorityQueue::contains(Row row) const {
  return std::any_of(m_entries.begin(), m_entries.end(), [row](const QueueEntry& e) { return e.row == row; });
}

}  // namespace hammersim
