#include "hammersim/timing.h"

#include <algorithm>
#include <stdexcept>

namespace hammersim {

void DeviceGeometry::validate() const {
  if (rows_per_bank <= 0 || rows_per_dsa <= 0)
    throw std::invalid_argument("geometry: row counts must be positive");
  if (rows_per_bank % rows_per_dsa != 0)
    throw std::invalid_argument("geometry: rows_per_bank must be a multiple of rows_per_dsa");
  if (blast_radius < 1) throw std::invalid_argument("geometry: blast_radius must be >= 1");
  if (counter_bits < 1 || counter_bits > 16)
    throw std::invalid_argument("geometry: counter_bits must be in 1..16");
  if (banks < 1) throw std::invalid_argument("geometry: banks must be >= 1");
}

void TimingSet::validate() const {
  for (Ps v : {tRAS, tRP, tRC, tRTP, tWR, tRCD})
    if (v <= 0) throw std::invalid_argument("timing: all parameters must be positive");
  if (tRC < std::max(tRAS, tRP)) throw std::invalid_argument("timing: tRC < max(tRAS, tRP)");
}

TimingSet builtin_timing_set(TimingLabel label) {
  TimingSet t;
  t.label = label;
  switch (label) {
    case TimingLabel::Default:
      t.tRAS = from_ns(32); t.tRP = from_ns(16); t.tRC = from_ns(48);
      t.tRTP = from_ns(7.5); t.tWR = from_ns(30); t.tRCD = from_ns(16);
      break;
    case TimingLabel::PRAC:
      t.tRAS = from_ns(16); t.tRP = from_ns(36); t.tRC = from_ns(52);
      t.tRTP = from_ns(5); t.tWR = from_ns(10); t.tRCD = from_ns(16);
      break;
    case TimingLabel::CSA:
      t.tRCD = from_ns(7.6); t.tRAS = from_ns(16.7); t.tRP = from_ns(4.1); t.tWR = from_ns(19.2);
      // not published for the counter subarray
      t.tRC = t.tRAS + t.tRP;
      t.tRTP = from_ns(7.5);
      break;
  }
  return t;
}

std::string to_string(TimingLabel label) {
  switch (label) {
    case TimingLabel::Default: return "Default";
    case TimingLabel::PRAC: return "PRAC";
    case TimingLabel::CSA: return "CSA";
  }
  return "?";
}

TimingLabel timing_label_from_string(const std::string& s) {
  if (s == "Default") return TimingLabel::Default;
  if (s == "PRAC") return TimingLabel::PRAC;
  if (s == "CSA") return TimingLabel::CSA;
  throw std::invalid_argument("unknown timing label '" + s + "'");
}

void RefreshConfig::validate() const {
  if (tREFI <= 0 || tREFW <= 0 || tRFC < 0) throw std::invalid_argument("refresh: bad durations");
  if (tREFI >= tREFW) throw std::invalid_argument("refresh: tREFI must be < tREFW");
  if (tRFC >= tREFI) throw std::invalid_argument("refresh: tRFC must be < tREFI");
}

RefreshConfig builtin_refresh(RefreshMode mode) {
  RefreshConfig r;
  r.mode = mode;
  switch (mode) {
    case RefreshMode::AllBankNormal: break;
    case RefreshMode::AllBankFine: r.tREFI = from_ns(1950); r.tRFC = from_ns(160); break;
    case RefreshMode::SameBankFine: r.tREFI = from_ns(1950); r.tRFC = from_ns(130); break;
  }
  return r;
}

std::string to_string(RefreshMode m) {
  switch (m) {
    case RefreshMode::AllBankNormal: return "AllBankNormal";
    case RefreshMode::AllBankFine: return "AllBankFine";
    case RefreshMode::SameBankFine: return "SameBankFine";
  }
  return "?";
}

RefreshMode refresh_mode_from_string(const std::string& s) {
  if (s == "AllBankNormal") return RefreshMode::AllBankNormal;
  if (s == "AllBankFine") return RefreshMode::AllBankFine;
  if (s == "SameBankFine") return RefreshMode::SameBankFine;
  throw std::invalid_argument("unknown refresh mode '" + s + "'");
}

std::string to_string(RefreshOrder o) {
  return o == RefreshOrder::Sequential ? "Sequential" : "SubarrayParallel";
}

RefreshOrder refresh_order_from_string(const std::string& s) {
  if (s == "Sequential") return RefreshOrder::Sequential;
  if (s == "SubarrayParallel") return RefreshOrder::SubarrayParallel;
  throw std::invalid_argument("unknown refresh order '" + s + "'");
}

std::int64_t refreshes_per_window(const RefreshConfig& refresh) {
  return refresh.tREFW / refresh.tREFI;
}

std::int64_t rows_per_refresh(const DeviceGeometry& geometry, const RefreshConfig& refresh) {
  std::int64_t n = refreshes_per_window(refresh);
  return (geometry.rows_per_bank + n - 1) / n;
}

double idle_bandwidth(const RefreshConfig& refresh) {
  return 1.0 - static_cast<double>(refresh.tRFC) / static_cast<double>(refresh.tREFI);
}

}  // namespace hammersim
