#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hammersim/engine.h"
#include "hammersim/security.h"

namespace hammersim::app {

// Carries "<source>:<line>:<col>: message".
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TraceKind { Idle, RoundRobin, Random, Feinting, File };
std::string to_string(TraceKind k);

struct TraceConfig {
  TraceKind kind = TraceKind::Idle;
  std::int64_t n = 128;
  int stride = 1;
  Row base_row = 0;
  std::int64_t count = 100000;
  Ps mean_gap = 200'000;
  std::int64_t r1 = 4;
  std::string path;
};

struct SecurityConfig {
  std::vector<std::int64_t> max_hc{32, 64, 128, 2048};
  std::vector<int> n_mit{1, 2, 4};
  std::vector<SchemeKind> schemes{SchemeKind::PVAC, SchemeKind::PRAC, SchemeKind::Chronus};
  RecurrenceVariant variant = RecurrenceVariant::Carry;
  Ps attack_budget = 4'500'000'000;
};

struct BwPoint {
  SchemeKind scheme = SchemeKind::PVAC;
  int n_mit = 4;
  int n_bo = 237;
};

struct BwConfig {
  std::vector<BwPoint> points{{SchemeKind::PVAC, 4, 237},
                              {SchemeKind::PRAC, 4, 52},
                              {SchemeKind::Chronus, 1, 15},
                              {SchemeKind::PVAC, 4, 43}};
  bool engine_check = true;
  Ps duration = 3'900'000'000;
};

struct CsaConfig {
  std::vector<std::int64_t> rows{65536, 131072, 262144};
  std::vector<int> blast_radius{1, 2, 4};
  double per_doubling = kDefaultCsaPerDoubling;
  CsaTiming timing{};
};

struct SweepConfig {
  std::vector<std::int64_t> max_hc{32, 64};
  std::vector<int> strides{1, 2, 3, 4, 5};
  std::vector<std::int64_t> pools{8, 32, 128, 512, 1024, 4096, 8192};
  std::vector<SchemeKind> schemes{SchemeKind::PVAC};
  int n_mit = 4;
  int windows = 1;
};

struct OracleConfig {
  std::int64_t rows = 256;
  std::vector<SchemeKind> schemes{SchemeKind::PVAC, SchemeKind::PRAC, SchemeKind::Chronus};
  std::vector<int> n_mit{1, 2, 4};
  std::vector<int> n_bo{1, 4, 16};
};

struct Config {
  std::string source = "<defaults>";
  DeviceGeometry geometry;
  RefreshConfig refresh;
  AboConfig abo;
  SchemeKind scheme_kind = SchemeKind::PVAC;
  int n_bo = 64;
  int n_mit = 4;
  SchemeConfig scheme;  // resolved from the table defaults plus overrides
  bool mitigation = true;
  int windows = 1;        // run length in tREFW
  std::optional<Ps> duration;
  TraceConfig trace;
  int domino_windows = 64;
  std::vector<SchemeKind> domino_schemes{SchemeKind::PRAC, SchemeKind::PVAC};
  SecurityConfig security;
  BwConfig bw;
  CsaConfig csa;
  SweepConfig sweep;
  OracleConfig oracle;

  Ps run_duration() const { return duration ? *duration : windows * refresh.tREFW; }
  EngineConfig engine_config() const;
};

Config load_config_file(const std::string& path);
Config load_config_string(const std::string& text, const std::string& source = "<string>");

// Fully resolved config as YAML, nanosecond units.
std::string emit_config(const Config& c);

// "<ns|ASAP>,<bank>,ACT,<row>" lines; '#' comments allowed.
Trace load_trace_file(const std::string& path);
void write_trace(std::ostream& os, const Trace& trace);

}  // namespace hammersim::app
