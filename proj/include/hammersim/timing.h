#pragma once

#include <cstdint>
#include <string>

namespace hammersim {

using Ps = std::int64_t;
using Row = std::int64_t;

constexpr Ps kPsPerNs = 1000;

inline constexpr Ps from_ns(double ns) {
  return static_cast<Ps>(ns * 1000.0 + (ns >= 0 ? 0.5 : -0.5));
}
inline constexpr double to_ns(Ps ps) { return static_cast<double>(ps) / 1000.0; }

struct DeviceGeometry {
  std::int64_t rows_per_bank = 65536;
  int banks = 32;
  std::int64_t rows_per_dsa = 512;
  int counter_bits = 8;
  int blast_radius = 2;

  std::int64_t dsa_of(Row r) const { return r / rows_per_dsa; }
  std::int64_t num_dsas() const { return rows_per_bank / rows_per_dsa; }
  // throws std::invalid_argument
  void validate() const;
};

enum class TimingLabel { Default, PRAC, CSA };

struct TimingSet {
  Ps tRAS = 0;
  Ps tRP = 0;
  Ps tRC = 0;
  Ps tRTP = 0;
  Ps tWR = 0;
  Ps tRCD = 0;
  TimingLabel label = TimingLabel::Default;

  void validate() const;
};

TimingSet builtin_timing_set(TimingLabel label);
std::string to_string(TimingLabel label);
TimingLabel timing_label_from_string(const std::string& s);

enum class RefreshMode { AllBankNormal, AllBankFine, SameBankFine };

// Sequential refreshes rows_per_refresh consecutive rows per REF.
// SubarrayParallel refreshes one row in each of rows_per_refresh
// consecutive subarrays per REF, ascending within each subarray.
enum class RefreshOrder { Sequential, SubarrayParallel };

struct RefreshConfig {
  Ps tREFW = 32'000'000'000;
  Ps tREFI = 3'900'000;
  Ps tRFC = 295'000;
  RefreshMode mode = RefreshMode::AllBankNormal;
  RefreshOrder order = RefreshOrder::Sequential;

  void validate() const;
};

RefreshConfig builtin_refresh(RefreshMode mode);
std::string to_string(RefreshMode m);
RefreshMode refresh_mode_from_string(const std::string& s);
std::string to_string(RefreshOrder o);
RefreshOrder refresh_order_from_string(const std::string& s);

std::int64_t refreshes_per_window(const RefreshConfig& refresh);
std::int64_t rows_per_refresh(const DeviceGeometry& geometry, const RefreshConfig& refresh);
double idle_bandwidth(const RefreshConfig& refresh);

}  // namespace hammersim
