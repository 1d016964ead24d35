#include "config.h"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace hammersim::app {

std::string to_string(TraceKind k) {
  switch (k) {
    case TraceKind::Idle: return "idle";
    case TraceKind::RoundRobin: return "round_robin";
    case TraceKind::Random: return "random";
    case TraceKind::Feinting: return "feinting";
    case TraceKind::File: return "file";
  }
  return "?";
}

namespace {

TraceKind trace_kind_from_string(const std::string& s) {
  if (s == "idle") return TraceKind::Idle;
  if (s == "round_robin") return TraceKind::RoundRobin;
  if (s == "random") return TraceKind::Random;
  if (s == "feinting") return TraceKind::Feinting;
  if (s == "file") return TraceKind::File;
  throw std::invalid_argument("unknown trace kind '" + s + "'");
}

std::string to_string_sem(CounterSemantics s) {
  switch (s) {
    case CounterSemantics::AggressorCount: return "AggressorCount";
    case CounterSemantics::VictimCount: return "VictimCount";
    case CounterSemantics::NoCount: return "NoCount";
  }
  return "?";
}

CounterSemantics semantics_from_string(const std::string& s) {
  if (s == "AggressorCount") return CounterSemantics::AggressorCount;
  if (s == "VictimCount") return CounterSemantics::VictimCount;
  if (s == "NoCount") return CounterSemantics::NoCount;
  throw std::invalid_argument("unknown counter semantics '" + s + "'");
}

class Parser {
 public:
  explicit Parser(std::string source) : m_source(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& n, const std::string& msg) const {
    std::ostringstream os;
    os << m_source;
    if (n.Mark().line >= 0) os << ':' << n.Mark().line + 1 << ':' << n.Mark().column + 1;
    os << ": " << msg;
    throw ConfigError(os.str());
  }

  // Runs each handler whose key is present; any other key is an error.
  void section(const YAML::Node& node, const std::string& where,
               const std::map<std::string, std::function<void(const YAML::Node&)>>& handlers) const {
    if (!node.IsMap()) fail(node, "'" + where + "' must be a mapping");
    for (const auto& kv : node) {
      auto key = kv.first.as<std::string>();
      auto it = handlers.find(key);
      if (it == handlers.end()) fail(kv.first, "unknown key '" + key + "' in " + where);
      try {
        it->second(kv.second);
      } catch (const ConfigError&) {
        throw;
      } catch (const YAML::Exception&) {
        fail(kv.second, "bad value for '" + key + "'");
      } catch (const std::exception& e) {
        fail(kv.second, e.what());
      }
    }
  }

  template <class T>
  T scalar(const YAML::Node& n) const {
    if (!n.IsScalar()) fail(n, "expected a scalar");
    return n.as<T>();
  }

  std::int64_t integer(const YAML::Node& n) const { return scalar<std::int64_t>(n); }

  Ps ns(const YAML::Node& n) const {
    double v = scalar<double>(n);
    if (!std::isfinite(v) || v < 0) fail(n, "durations must be finite and >= 0");
    return from_ns(v);
  }

  template <class T, class F>
  std::vector<T> list(const YAML::Node& n, F&& each) const {
    if (!n.IsSequence()) fail(n, "expected a list");
    std::vector<T> out;
    for (const auto& x : n) out.push_back(each(x));
    return out;
  }

  const std::string& source() const { return m_source; }

 private:
  std::string m_source;
};

struct SchemeOverrides {
  std::optional<int> proactive_threshold;
  bool clear_threshold = false;
  std::optional<int> proactive_period;
  std::optional<TimingLabel> timing;
  std::optional<Ps> tRFC;
  std::optional<CounterSemantics> semantics;
  std::optional<std::size_t> queue_depth;
  std::optional<CsaLayoutKind> layout;
  std::optional<int> rows_per_rfm;
  std::optional<int> proactive_rows;
};

Config parse(const YAML::Node& root, const std::string& source) {
  Parser p(source);
  Config c;
  c.source = source;
  SchemeOverrides ov;
  std::optional<YAML::Node> scheme_node;
  std::optional<RefreshMode> mode;
  std::optional<Ps> ref_tREFI, ref_tRFC;

  const YAML::Node top = (!root || root.IsNull()) ? YAML::Node(YAML::NodeType::Map) : root;

  auto schemes = [&](const YAML::Node& n) {
    return p.list<SchemeKind>(n, [&](const YAML::Node& x) { return scheme_kind_from_string(p.scalar<std::string>(x)); });
  };
  auto ints = [&](const YAML::Node& n) {
    return p.list<int>(n, [&](const YAML::Node& x) { return static_cast<int>(p.integer(x)); });
  };
  auto int64s = [&](const YAML::Node& n) {
    return p.list<std::int64_t>(n, [&](const YAML::Node& x) { return p.integer(x); });
  };

  p.section(top, "config", {
    {"geometry", [&](const YAML::Node& n) {
      p.section(n, "geometry", {
        {"rows_per_bank", [&](const YAML::Node& v) { c.geometry.rows_per_bank = p.integer(v); }},
        {"banks", [&](const YAML::Node& v) { c.geometry.banks = static_cast<int>(p.integer(v)); }},
        {"rows_per_dsa", [&](const YAML::Node& v) { c.geometry.rows_per_dsa = p.integer(v); }},
        {"counter_bits", [&](const YAML::Node& v) { c.geometry.counter_bits = static_cast<int>(p.integer(v)); }},
        {"blast_radius", [&](const YAML::Node& v) { c.geometry.blast_radius = static_cast<int>(p.integer(v)); }},
      });
      try { c.geometry.validate(); } catch (const std::exception& e) { p.fail(n, e.what()); }
    }},
    {"refresh", [&](const YAML::Node& n) {
      p.section(n, "refresh", {
        {"mode", [&](const YAML::Node& v) { mode = refresh_mode_from_string(p.scalar<std::string>(v)); }},
        {"order", [&](const YAML::Node& v) { c.refresh.order = refresh_order_from_string(p.scalar<std::string>(v)); }},
        {"tREFW_ns", [&](const YAML::Node& v) { c.refresh.tREFW = p.ns(v); }},
        {"tREFI_ns", [&](const YAML::Node& v) { ref_tREFI = p.ns(v); }},
        {"tRFC_ns", [&](const YAML::Node& v) { ref_tRFC = p.ns(v); }},
      });
      if (mode) {
        RefreshConfig b = builtin_refresh(*mode);
        c.refresh.mode = b.mode;
        c.refresh.tREFI = b.tREFI;
        c.refresh.tRFC = b.tRFC;
      }
      if (ref_tREFI) c.refresh.tREFI = *ref_tREFI;
      if (ref_tRFC) c.refresh.tRFC = *ref_tRFC;
      try { c.refresh.validate(); } catch (const std::exception& e) { p.fail(n, e.what()); }
    }},
    {"abo", [&](const YAML::Node& n) {
      p.section(n, "abo", {
        {"tABO_ACT_ns", [&](const YAML::Node& v) { c.abo.tABO_ACT = p.ns(v); }},
        {"tRFM_ns", [&](const YAML::Node& v) { c.abo.tRFM = p.ns(v); }},
        {"abo_act", [&](const YAML::Node& v) { c.abo.abo_act = static_cast<int>(p.integer(v)); }},
        {"abo_delay", [&](const YAML::Node& v) { c.abo.abo_delay = static_cast<int>(p.integer(v)); }},
      });
      try { c.abo.validate(); } catch (const std::exception& e) { p.fail(n, e.what()); }
    }},
    {"scheme", [&](const YAML::Node& n) {
      scheme_node.emplace(n);
      p.section(n, "scheme", {
        {"name", [&](const YAML::Node& v) { c.scheme_kind = scheme_kind_from_string(p.scalar<std::string>(v)); }},
        {"n_bo", [&](const YAML::Node& v) { c.n_bo = static_cast<int>(p.integer(v)); }},
        {"n_mit", [&](const YAML::Node& v) { c.n_mit = static_cast<int>(p.integer(v)); }},
        {"mitigation", [&](const YAML::Node& v) { c.mitigation = p.scalar<bool>(v); }},
        {"proactive_threshold", [&](const YAML::Node& v) {
          if (v.IsNull()) ov.clear_threshold = true;
          else ov.proactive_threshold = static_cast<int>(p.integer(v));
        }},
        {"proactive_period", [&](const YAML::Node& v) { ov.proactive_period = static_cast<int>(p.integer(v)); }},
        {"timing", [&](const YAML::Node& v) { ov.timing = timing_label_from_string(p.scalar<std::string>(v)); }},
        {"tRFC_ns", [&](const YAML::Node& v) { ov.tRFC = p.ns(v); }},
        {"counter_semantics", [&](const YAML::Node& v) { ov.semantics = semantics_from_string(p.scalar<std::string>(v)); }},
        {"queue_depth", [&](const YAML::Node& v) { ov.queue_depth = static_cast<std::size_t>(p.integer(v)); }},
        {"layout", [&](const YAML::Node& v) { ov.layout = csa_layout_from_string(p.scalar<std::string>(v)); }},
        {"rows_per_rfm", [&](const YAML::Node& v) { ov.rows_per_rfm = static_cast<int>(p.integer(v)); }},
        {"proactive_rows", [&](const YAML::Node& v) { ov.proactive_rows = static_cast<int>(p.integer(v)); }},
      });
    }},
    {"run", [&](const YAML::Node& n) {
      p.section(n, "run", {
        {"windows", [&](const YAML::Node& v) { c.windows = static_cast<int>(p.integer(v)); }},
        {"duration_ns", [&](const YAML::Node& v) { c.duration = p.ns(v); }},
      });
      if (c.windows < 1) p.fail(n, "run.windows must be >= 1");
    }},
    {"trace", [&](const YAML::Node& n) {
      p.section(n, "trace", {
        {"kind", [&](const YAML::Node& v) { c.trace.kind = trace_kind_from_string(p.scalar<std::string>(v)); }},
        {"n", [&](const YAML::Node& v) { c.trace.n = p.integer(v); }},
        {"stride", [&](const YAML::Node& v) { c.trace.stride = static_cast<int>(p.integer(v)); }},
        {"base_row", [&](const YAML::Node& v) { c.trace.base_row = p.integer(v); }},
        {"count", [&](const YAML::Node& v) { c.trace.count = p.integer(v); }},
        {"mean_gap_ns", [&](const YAML::Node& v) { c.trace.mean_gap = p.ns(v); }},
        {"r1", [&](const YAML::Node& v) { c.trace.r1 = p.integer(v); }},
        {"path", [&](const YAML::Node& v) { c.trace.path = p.scalar<std::string>(v); }},
      });
      if (c.trace.kind == TraceKind::File && c.trace.path.empty()) p.fail(n, "trace.path is required for kind 'file'");
    }},
    {"domino", [&](const YAML::Node& n) {
      p.section(n, "domino", {
        {"windows", [&](const YAML::Node& v) { c.domino_windows = static_cast<int>(p.integer(v)); }},
        {"schemes", [&](const YAML::Node& v) { c.domino_schemes = schemes(v); }},
      });
      if (c.domino_windows < 1) p.fail(n, "domino.windows must be >= 1");
    }},
    {"security", [&](const YAML::Node& n) {
      p.section(n, "security", {
        {"max_hc", [&](const YAML::Node& v) { c.security.max_hc = int64s(v); }},
        {"n_mit", [&](const YAML::Node& v) { c.security.n_mit = ints(v); }},
        {"schemes", [&](const YAML::Node& v) { c.security.schemes = schemes(v); }},
        {"variant", [&](const YAML::Node& v) { c.security.variant = recurrence_variant_from_string(p.scalar<std::string>(v)); }},
        {"attack_budget_ns", [&](const YAML::Node& v) { c.security.attack_budget = p.ns(v); }},
      });
    }},
    {"bw_bound", [&](const YAML::Node& n) {
      p.section(n, "bw_bound", {
        {"points", [&](const YAML::Node& v) {
          c.bw.points = p.list<BwPoint>(v, [&](const YAML::Node& x) {
            BwPoint pt;
            p.section(x, "bw_bound.points", {
              {"scheme", [&](const YAML::Node& y) { pt.scheme = scheme_kind_from_string(p.scalar<std::string>(y)); }},
              {"n_mit", [&](const YAML::Node& y) { pt.n_mit = static_cast<int>(p.integer(y)); }},
              {"n_bo", [&](const YAML::Node& y) { pt.n_bo = static_cast<int>(p.integer(y)); }},
            });
            if (pt.n_bo < 1 || pt.n_mit < 1) p.fail(x, "n_bo and n_mit must be >= 1");
            return pt;
          });
        }},
        {"engine_check", [&](const YAML::Node& v) { c.bw.engine_check = p.scalar<bool>(v); }},
        {"duration_ns", [&](const YAML::Node& v) { c.bw.duration = p.ns(v); }},
      });
    }},
    {"csa", [&](const YAML::Node& n) {
      p.section(n, "csa", {
        {"rows", [&](const YAML::Node& v) { c.csa.rows = int64s(v); }},
        {"blast_radius", [&](const YAML::Node& v) { c.csa.blast_radius = ints(v); }},
        {"per_doubling", [&](const YAML::Node& v) { c.csa.per_doubling = p.scalar<double>(v); }},
        {"tRCD_ns", [&](const YAML::Node& v) { c.csa.timing.tRCD_csa = p.ns(v); }},
        {"tRAS_ns", [&](const YAML::Node& v) { c.csa.timing.tRAS_csa = p.ns(v); }},
        {"tRP_ns", [&](const YAML::Node& v) { c.csa.timing.tRP_csa = p.ns(v); }},
        {"tWR_ns", [&](const YAML::Node& v) { c.csa.timing.tWR_csa = p.ns(v); }},
        {"tUP_ns", [&](const YAML::Node& v) { c.csa.timing.tUP = p.ns(v); }},
      });
      if (c.csa.per_doubling <= 0) p.fail(n, "csa.per_doubling must be > 0");
    }},
    {"sweep", [&](const YAML::Node& n) {
      p.section(n, "sweep", {
        {"max_hc", [&](const YAML::Node& v) { c.sweep.max_hc = int64s(v); }},
        {"strides", [&](const YAML::Node& v) { c.sweep.strides = ints(v); }},
        {"pools", [&](const YAML::Node& v) { c.sweep.pools = int64s(v); }},
        {"schemes", [&](const YAML::Node& v) { c.sweep.schemes = schemes(v); }},
        {"n_mit", [&](const YAML::Node& v) { c.sweep.n_mit = static_cast<int>(p.integer(v)); }},
        {"windows", [&](const YAML::Node& v) { c.sweep.windows = static_cast<int>(p.integer(v)); }},
      });
      for (int s : c.sweep.strides)
        if (s < 1) p.fail(n, "sweep.strides must be >= 1");
      if (c.sweep.windows < 1) p.fail(n, "sweep.windows must be >= 1");
    }},
    {"oracle", [&](const YAML::Node& n) {
      p.section(n, "oracle", {
        {"rows", [&](const YAML::Node& v) { c.oracle.rows = p.integer(v); }},
        {"schemes", [&](const YAML::Node& v) { c.oracle.schemes = schemes(v); }},
        {"n_mit", [&](const YAML::Node& v) { c.oracle.n_mit = ints(v); }},
        {"n_bo", [&](const YAML::Node& v) { c.oracle.n_bo = ints(v); }},
      });
      if (c.oracle.rows < 16 || c.oracle.rows > 4096) p.fail(n, "oracle.rows must be in [16, 4096]");
    }},
  });

  try {
    c.scheme = make_scheme_config(c.scheme_kind, c.n_bo, c.n_mit);
    SchemeConfig& s = c.scheme;
    if (ov.clear_threshold) s.proactive_threshold.reset();
    if (ov.proactive_threshold) s.proactive_threshold = ov.proactive_threshold;
    if (ov.proactive_period) s.proactive_period = *ov.proactive_period;
    if (ov.timing) s.timing = *ov.timing;
    if (ov.tRFC) s.tRFC = *ov.tRFC;
    if (ov.semantics) s.counter_semantics = *ov.semantics;
    if (ov.queue_depth) s.queue_depth = *ov.queue_depth;
    if (ov.layout) {
      s.layout = *ov.layout == CsaLayoutKind::NaiveCsa ? CsaLayout::naive()
                 : *ov.layout == CsaLayoutKind::InDsaRow ? CsaLayout::in_dsa()
                                                          : CsaLayout::optimized();
    }
    if (ov.rows_per_rfm) s.rows_per_rfm = *ov.rows_per_rfm;
    if (ov.proactive_rows) s.proactive_rows = *ov.proactive_rows;
    c.engine_config().validate();
  } catch (const std::exception& e) {
    p.fail(scheme_node ? *scheme_node : top, e.what());
  }
  return c;
}

}  // namespace

EngineConfig Config::engine_config() const {
  EngineConfig e;
  e.geometry = geometry;
  e.refresh = refresh;
  e.scheme = scheme;
  e.abo = abo;
  e.duration = run_duration();
  e.mitigation = mitigation;
  return e;
}

Config load_config_string(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    std::ostringstream os;
    os << source << ':' << e.mark.line + 1 << ':' << e.mark.column + 1 << ": " << e.msg;
    throw ConfigError(os.str());
  }
  return parse(root, source);
}

Config load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_config_string(ss.str(), path);
}

namespace {

double ns_of(Ps ps) { return to_ns(ps); }

template <class T, class F>
void emit_list(YAML::Emitter& out, const std::vector<T>& v, F&& f) {
  out << YAML::Flow << YAML::BeginSeq;
  for (const auto& x : v) out << f(x);
  out << YAML::EndSeq;
}

}  // namespace

std::string emit_config(const Config& c) {
  auto id = [](auto x) { return x; };
  auto name = [](SchemeKind k) { return to_string(k); };
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "geometry" << YAML::Value << YAML::BeginMap
      << YAML::Key << "rows_per_bank" << YAML::Value << c.geometry.rows_per_bank
      << YAML::Key << "banks" << YAML::Value << c.geometry.banks
      << YAML::Key << "rows_per_dsa" << YAML::Value << c.geometry.rows_per_dsa
      << YAML::Key << "counter_bits" << YAML::Value << c.geometry.counter_bits
      << YAML::Key << "blast_radius" << YAML::Value << c.geometry.blast_radius << YAML::EndMap;
  out << YAML::Key << "refresh" << YAML::Value << YAML::BeginMap
      << YAML::Key << "mode" << YAML::Value << to_string(c.refresh.mode)
      << YAML::Key << "order" << YAML::Value << to_string(c.refresh.order)
      << YAML::Key << "tREFW_ns" << YAML::Value << ns_of(c.refresh.tREFW)
      << YAML::Key << "tREFI_ns" << YAML::Value << ns_of(c.refresh.tREFI)
      << YAML::Key << "tRFC_ns" << YAML::Value << ns_of(c.refresh.tRFC) << YAML::EndMap;
  out << YAML::Key << "abo" << YAML::Value << YAML::BeginMap
      << YAML::Key << "tABO_ACT_ns" << YAML::Value << ns_of(c.abo.tABO_ACT)
      << YAML::Key << "tRFM_ns" << YAML::Value << ns_of(c.abo.tRFM)
      << YAML::Key << "abo_act" << YAML::Value << c.abo.abo_act
      << YAML::Key << "abo_delay" << YAML::Value << c.abo.abo_delay << YAML::EndMap;
  const SchemeConfig& s = c.scheme;
  out << YAML::Key << "scheme" << YAML::Value << YAML::BeginMap
      << YAML::Key << "name" << YAML::Value << to_string(s.scheme)
      << YAML::Key << "n_bo" << YAML::Value << s.n_bo
      << YAML::Key << "n_mit" << YAML::Value << s.n_mit
      << YAML::Key << "mitigation" << YAML::Value << c.mitigation
      << YAML::Key << "proactive_threshold" << YAML::Value;
  if (s.proactive_threshold) out << *s.proactive_threshold; else out << YAML::Null;
  out << YAML::Key << "proactive_period" << YAML::Value << s.proactive_period
      << YAML::Key << "timing" << YAML::Value << to_string(s.timing)
      << YAML::Key << "tRFC_ns" << YAML::Value << ns_of(s.tRFC)
      << YAML::Key << "counter_semantics" << YAML::Value << to_string_sem(s.counter_semantics)
      << YAML::Key << "queue_depth" << YAML::Value << s.queue_depth
      << YAML::Key << "layout" << YAML::Value << to_string(s.layout.kind)
      << YAML::Key << "rows_per_rfm" << YAML::Value << s.rows_per_rfm
      << YAML::Key << "proactive_rows" << YAML::Value << s.proactive_rows << YAML::EndMap;
  out << YAML::Key << "run" << YAML::Value << YAML::BeginMap
      << YAML::Key << "windows" << YAML::Value << c.windows
      << YAML::Key << "duration_ns" << YAML::Value << ns_of(c.run_duration()) << YAML::EndMap;
  out << YAML::Key << "trace" << YAML::Value << YAML::BeginMap
      << YAML::Key << "kind" << YAML::Value << to_string(c.trace.kind)
      << YAML::Key << "n" << YAML::Value << c.trace.n
      << YAML::Key << "stride" << YAML::Value << c.trace.stride
      << YAML::Key << "base_row" << YAML::Value << c.trace.base_row
      << YAML::Key << "count" << YAML::Value << c.trace.count
      << YAML::Key << "mean_gap_ns" << YAML::Value << ns_of(c.trace.mean_gap)
      << YAML::Key << "r1" << YAML::Value << c.trace.r1
      << YAML::Key << "path" << YAML::Value << c.trace.path << YAML::EndMap;
  out << YAML::Key << "domino" << YAML::Value << YAML::BeginMap
      << YAML::Key << "windows" << YAML::Value << c.domino_windows
      << YAML::Key << "schemes" << YAML::Value;
  emit_list(out, c.domino_schemes, name);
  out << YAML::EndMap;
  out << YAML::Key << "security" << YAML::Value << YAML::BeginMap << YAML::Key << "max_hc" << YAML::Value;
  emit_list(out, c.security.max_hc, id);
  out << YAML::Key << "n_mit" << YAML::Value;
  emit_list(out, c.security.n_mit, id);
  out << YAML::Key << "schemes" << YAML::Value;
  emit_list(out, c.security.schemes, name);
  out << YAML::Key << "variant" << YAML::Value << to_string(c.security.variant)
      << YAML::Key << "attack_budget_ns" << YAML::Value << ns_of(c.security.attack_budget) << YAML::EndMap;
  out << YAML::Key << "bw_bound" << YAML::Value << YAML::BeginMap << YAML::Key << "points" << YAML::Value << YAML::BeginSeq;
  for (const auto& pt : c.bw.points)
    out << YAML::Flow << YAML::BeginMap << YAML::Key << "scheme" << YAML::Value << to_string(pt.scheme)
        << YAML::Key << "n_mit" << YAML::Value << pt.n_mit << YAML::Key << "n_bo" << YAML::Value << pt.n_bo
        << YAML::EndMap;
  out << YAML::EndSeq << YAML::Key << "engine_check" << YAML::Value << c.bw.engine_check
      << YAML::Key << "duration_ns" << YAML::Value << ns_of(c.bw.duration) << YAML::EndMap;
  out << YAML::Key << "csa" << YAML::Value << YAML::BeginMap << YAML::Key << "rows" << YAML::Value;
  emit_list(out, c.csa.rows, id);
  out << YAML::Key << "blast_radius" << YAML::Value;
  emit_list(out, c.csa.blast_radius, id);
  out << YAML::Key << "per_doubling" << YAML::Value << c.csa.per_doubling
      << YAML::Key << "tRCD_ns" << YAML::Value << ns_of(c.csa.timing.tRCD_csa)
      << YAML::Key << "tRAS_ns" << YAML::Value << ns_of(c.csa.timing.tRAS_csa)
      << YAML::Key << "tRP_ns" << YAML::Value << ns_of(c.csa.timing.tRP_csa)
      << YAML::Key << "tWR_ns" << YAML::Value << ns_of(c.csa.timing.tWR_csa)
      << YAML::Key << "tUP_ns" << YAML::Value << ns_of(c.csa.timing.tUP) << YAML::EndMap;
  out << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap << YAML::Key << "max_hc" << YAML::Value;
  emit_list(out, c.sweep.max_hc, id);
  out << YAML::Key << "strides" << YAML::Value;
  emit_list(out, c.sweep.strides, id);
  out << YAML::Key << "pools" << YAML::Value;
  emit_list(out, c.sweep.pools, id);
  out << YAML::Key << "schemes" << YAML::Value;
  emit_list(out, c.sweep.schemes, name);
  out << YAML::Key << "n_mit" << YAML::Value << c.sweep.n_mit
      << YAML::Key << "windows" << YAML::Value << c.sweep.windows << YAML::EndMap;
  out << YAML::Key << "oracle" << YAML::Value << YAML::BeginMap
      << YAML::Key << "rows" << YAML::Value << c.oracle.rows << YAML::Key << "schemes" << YAML::Value;
  emit_list(out, c.oracle.schemes, name);
  out << YAML::Key << "n_mit" << YAML::Value;
  emit_list(out, c.oracle.n_mit, id);
  out << YAML::Key << "n_bo" << YAML::Value;
  emit_list(out, c.oracle.n_bo, id);
  out << YAML::EndMap;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

Trace load_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open trace file");
  Trace t;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      auto b = cell.find_first_not_of(" \t\r");
      auto e = cell.find_last_not_of(" \t\r");
      f.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    auto bad = [&](const std::string& why) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": " + why);
    };
    if (f.size() != 4 || f[2] != "ACT") bad("expected '<ns|ASAP>,<bank>,ACT,<row>'");
    try {
      TraceEvent ev = TraceEvent::act(std::stoll(f[3]), std::stoi(f[1]));
      if (f[0] != "ASAP") ev.time = from_ns(std::stod(f[0]));
      t.push_back(ev);
    } catch (const std::logic_error&) {
      bad("malformed number");
    }
  }
  return t;
}

void write_trace(std::ostream& os, const Trace& trace) {
  for (const auto& e : trace) {
    if (e.kind != TraceEvent::Kind::Act) continue;
    os << (e.time ? format_ns(*e.time) : std::string("ASAP")) << ',' << e.bank << ",ACT," << e.row << '\n';
  }
}

}  // namespace hammersim::app
