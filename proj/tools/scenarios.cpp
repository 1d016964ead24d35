#include "scenarios.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hammersim/attacks.h"
#include "hammersim/audit.h"
#include "hammersim/energy.h"
#include "hammersim/oracle.h"
#include "hammersim/security.h"

namespace fs = std::filesystem;

namespace hammersim::app {

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"domino",   "security-table", "bw-bound",    "csa-latency",
                                              "simulate", "sweep-stride",   "oracle-check"};
  return names;
}

bool is_scenario(const std::string& name) {
  for (const auto& n : scenario_names())
    if (n == name) return true;
  return false;
}

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Table defaults for the scheme, keeping the configured tuning knobs when
// the scheme matches the configured one.
SchemeConfig scheme_for(const Config& c, SchemeKind kind, int n_bo, int n_mit) {
  SchemeConfig s = make_scheme_config(kind, n_bo, n_mit);
  if (kind == c.scheme_kind) {
    s.proactive_threshold = c.scheme.proactive_threshold;
    s.proactive_period = c.scheme.proactive_period;
    s.queue_depth = c.scheme.queue_depth;
    s.layout = c.scheme.layout;
    s.rows_per_rfm = c.scheme.rows_per_rfm;
    s.proactive_rows = c.scheme.proactive_rows;
    if (c.scheme.proactive_threshold && n_bo != c.n_bo) s.proactive_threshold = std::max(1, n_bo / 2);
  }
  return s;
}

AnalysisParams analysis_params(const Config& c, int n_mit) {
  AnalysisParams p;
  p.br = c.geometry.blast_radius;
  p.abo_act = c.abo.abo_act;
  p.abo_delay = c.abo.abo_delay;
  p.n_mit = n_mit;
  p.rows_per_bank = c.geometry.rows_per_bank;
  p.variant = c.security.variant;
  p.attack_budget = c.security.attack_budget;
  p.tRFM = c.abo.tRFM;
  p.tABO_ACT = c.abo.tABO_ACT;
  return p;
}

class Output {
 public:
  Output(const ScenarioOptions& o, ScenarioOutcome& out) : m_opts(o), m_out(out) { fs::create_directories(o.out_dir); }

  std::ofstream open(const std::string& name) {
    std::ofstream f(fs::path(m_opts.out_dir) / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + name);
    m_out.files.push_back(name);
    return f;
  }

  void note(const std::string& msg) { m_out.messages.push_back(msg); }
  void violation(const std::string& msg) {
    m_out.exit_code = 3;
    note("invariant violation: " + msg);
  }

 private:
  const ScenarioOptions& m_opts;
  ScenarioOutcome& m_out;
};

void write_manifest(const Config& c, const ScenarioOptions& o, Output& out, const std::vector<std::string>& files) {
  std::ofstream m = out.open("manifest.yaml");
  m << "scenario: " << o.name << "\nseed: " << o.seed << "\noutputs:\n";
  for (const auto& f : files) m << "  - " << f << '\n';
  m << "config:\n";
  std::istringstream cfg(emit_config(c));
  for (std::string line; std::getline(cfg, line);)
    if (!line.empty()) m << "  " << line << '\n';
}

void write_plot(Output& out, const std::string& body) {
  std::ofstream p = out.open("plot.py");
  p << "import os\nimport sys\n\nimport matplotlib\nmatplotlib.use(\"Agg\")\nimport matplotlib.pyplot as plt\n"
       "import pandas as pd\n\nHERE = os.path.dirname(os.path.abspath(__file__))\n\n\n"
       "def load(name):\n    return pd.read_csv(os.path.join(HERE, name))\n\n\n"
    << body << "\n";
}

// --- domino ---------------------------------------------------------------

void scenario_domino(const Config& c, const ScenarioOptions& o, Output& out) {
  auto results = parallel_map<DominoResult>(c.domino_schemes.size(), o.jobs,
                                            [&](std::size_t i) { return run_domino(c, c.domino_schemes[i]); });
  std::vector<std::string> files;
  for (const auto& r : results) {
    std::string name = "domino_" + to_string(r.scheme) + ".csv";
    std::ofstream f = out.open(name);
    files.push_back(name);
    f << "window_index,counter_mean,counter_max,bandwidth,rfm_count,alert_count\n";
    for (std::size_t w = 0; w < r.metrics.windows.size(); ++w) {
      const auto& ws = r.metrics.windows[w];
      f << w << ',' << fmt("%.6f", ws.counter_mean) << ',' << ws.counter_max << ',' << fmt("%.6f", ws.bandwidth) << ','
        << ws.rfm_count << ',' << ws.alert_count << '\n';
    }
    std::ostringstream msg;
    msg << to_string(r.scheme) << ": alerts=" << r.metrics.alerts_raised << " first_alert_window=" << r.first_alert_window;
    if (r.first_alert_window >= 0)
      msg << " bandwidth_there=" << fmt("%.4f", r.metrics.windows[static_cast<std::size_t>(r.first_alert_window)].bandwidth);
    out.note(msg.str());
    if (!r.audit_ok) out.violation(to_string(r.scheme) + " log audit: " + r.audit_first);
  }
  write_plot(out,
             "fig, (a, b) = plt.subplots(2, 1, sharex=True, figsize=(7, 6))\n"
             "for name in sys.argv[1:] or [f for f in sorted(os.listdir(HERE)) if f.startswith(\"domino_\")]:\n"
             "    d = load(name)\n"
             "    label = name[len(\"domino_\"):-4]\n"
             "    a.plot(d.window_index, d.counter_mean, label=label)\n"
             "    b.plot(d.window_index, d.bandwidth * 100, label=label)\n"
             "a.set_ylabel(\"mean counter\")\nb.set_ylabel(\"bandwidth (%)\")\nb.set_xlabel(\"tREFW window\")\n"
             "a.legend()\nfig.tight_layout()\nfig.savefig(os.path.join(HERE, \"domino.png\"), dpi=150)\n");
  files.push_back("plot.py");
  write_manifest(c, o, out, files);
}

// --- security-table -------------------------------------------------------

void scenario_security(const Config& c, const ScenarioOptions& o, Output& out) {
  struct Job {
    SchemeKind scheme;
    int n_mit;
  };
  std::vector<Job> jobs;
  for (SchemeKind s : c.security.schemes)
    for (int m : c.security.n_mit) jobs.push_back({s, m});
  auto rows = parallel_map<std::vector<SecurityCurvePoint>>(jobs.size(), o.jobs, [&](std::size_t i) {
    SecurityAnalyzer an(analysis_params(c, jobs[i].n_mit));
    std::vector<SecurityCurvePoint> pts;
    for (std::int64_t hc : c.security.max_hc) pts.push_back(an.solve_nbo(jobs[i].scheme, hc));
    return pts;
  });
  std::ofstream f = out.open("security_table.csv");
  write_security_csv_header(f);
  for (const auto& pts : rows)
    for (const auto& p : pts) write_security_csv_row(f, p);
  write_plot(out,
             "d = load(\"security_table.csv\")\nd = d[d.n_bo != \"infeasible\"].copy()\nd[\"n_bo\"] = d.n_bo.astype(int)\n"
             "fig, ax = plt.subplots(figsize=(7, 4))\n"
             "for (scheme, n_mit), g in d.groupby([\"scheme\", \"n_mit\"]):\n"
             "    ax.plot(g.max_hc, g.n_bo, marker=\"o\", label=f\"{scheme}-{n_mit}\")\n"
             "ax.set_xscale(\"log\", base=2)\nax.set_yscale(\"log\", base=2)\n"
             "ax.set_xlabel(\"maximum hammered count\")\nax.set_ylabel(\"N_BO\")\nax.legend(fontsize=7)\n"
             "fig.tight_layout()\nfig.savefig(os.path.join(HERE, \"security_table.png\"), dpi=150)\n");
  write_manifest(c, o, out, {"security_table.csv", "plot.py"});
}

// --- bw-bound -------------------------------------------------------------

void scenario_bw(const Config& c, const ScenarioOptions& o, Output& out) {
  auto rows = parallel_map<BwRow>(c.bw.points.size(), o.jobs,
                                  [&](std::size_t i) { return run_bw_point(c, c.bw.points[i], c.bw.engine_check); });
  std::ofstream f = out.open("bw_bound.csv");
  f << "scheme,n_mit,n_bo,tRC_ns,bound,engine_fraction,relative_error\n";
  for (const auto& r : rows) {
    f << to_string(r.point.scheme) << ',' << r.point.n_mit << ',' << r.point.n_bo << ',' << format_ns(r.tRC) << ','
      << fmt("%.6f", r.bound) << ',';
    if (r.engine_fraction >= 0)
      f << fmt("%.6f", r.engine_fraction) << ',' << fmt("%.6f", std::abs(r.engine_fraction - r.bound) / r.bound) << '\n';
    else
      f << ",\n";
    if (!r.audit_ok) out.violation("bw-bound engine log audit failed for " + to_string(r.point.scheme));
  }
  write_plot(out,
             "d = load(\"bw_bound.csv\")\nlabels = [f\"{s}-{m}\\nN_BO={n}\" for s, m, n in zip(d.scheme, d.n_mit, d.n_bo)]\n"
             "fig, ax = plt.subplots(figsize=(7, 4))\nx = range(len(d))\n"
             "ax.bar([i - 0.2 for i in x], d.bound * 100, width=0.4, label=\"bound\")\n"
             "ax.bar([i + 0.2 for i in x], d.engine_fraction * 100, width=0.4, label=\"engine\")\n"
             "ax.set_xticks(list(x))\nax.set_xticklabels(labels, fontsize=7)\nax.set_ylabel(\"mitigation share (%)\")\n"
             "ax.legend()\nfig.tight_layout()\nfig.savefig(os.path.join(HERE, \"bw_bound.png\"), dpi=150)\n");
  write_manifest(c, o, out, {"bw_bound.csv", "plot.py"});
}

// --- csa-latency ----------------------------------------------------------

void scenario_csa(const Config& c, const ScenarioOptions& o, Output& out) {
  std::ofstream f = out.open("csa_latency.csv");
  f << "rows,blast_radius,tRCD_csa_ns,update_ns,tWR_csa_ns,tRP_csa_ns,total_ns,array_share,below_tRC\n";
  const Ps tRC = builtin_timing_set(TimingLabel::Default).tRC;
  for (std::int64_t rows : c.csa.rows) {
    CsaTiming t = csa_timing_for_rows(rows, c.csa.per_doubling, c.csa.timing);
    for (int br : c.csa.blast_radius) {
      Ps total = counter_update_latency(t, br);
      f << rows << ',' << br << ',' << format_ns(t.tRCD_csa) << ',' << format_ns((2 * br + 1) * t.tUP) << ','
        << format_ns(t.tWR_csa) << ',' << format_ns(t.tRP_csa) << ',' << format_ns(total) << ','
        << fmt("%.6f", csa_timing_share(t, br)) << ',' << (total < tRC ? "yes" : "no") << '\n';
      if (total >= tRC) out.note("update latency reaches tRC at rows=" + std::to_string(rows) + " BR=" + std::to_string(br));
    }
  }
  write_plot(out,
             "d = load(\"csa_latency.csv\")\nparts = [\"tRCD_csa_ns\", \"update_ns\", \"tWR_csa_ns\", \"tRP_csa_ns\"]\n"
             "labels = [f\"{r // 1024}K\\nBR={b}\" for r, b in zip(d.rows, d.blast_radius)]\n"
             "fig, ax = plt.subplots(figsize=(8, 4))\nbottom = [0.0] * len(d)\n"
             "for p in parts:\n    ax.bar(labels, d[p], bottom=bottom, label=p[:-3])\n"
             "    bottom = [x + y for x, y in zip(bottom, d[p])]\n"
             "ax.axhline(48, color=\"k\", ls=\"--\", lw=0.8)\nax.set_ylabel(\"latency (ns)\")\nax.legend(fontsize=7)\n"
             "fig.tight_layout()\nfig.savefig(os.path.join(HERE, \"csa_latency.png\"), dpi=150)\n");
  write_manifest(c, o, out, {"csa_latency.csv", "plot.py"});
}

// --- simulate -------------------------------------------------------------

struct SimRun {
  RunResult result;
  std::vector<CounterBank::Count> counters;
  Trace baseline_trace;
};

SimRun simulate_once(const Config& c, std::uint64_t seed) {
  EngineConfig ec = c.engine_config();
  Engine engine(ec);
  SimRun run;
  const TimingSet timing = engine.timing();
  Trace trace;
  switch (c.trace.kind) {
    case TraceKind::Idle: trace = gen_idle(ec.duration); break;
    case TraceKind::RoundRobin: {
      RoundRobinSpec rr{c.trace.n, c.trace.stride, c.trace.base_row, ec.duration};
      rr.validate(c.geometry);
      trace = gen_round_robin(rr, timing);
      break;
    }
    case TraceKind::Random: trace = gen_random(c.geometry, c.trace.count, c.trace.mean_gap, seed); break;
    case TraceKind::File: trace = load_trace_file(c.trace.path); break;
    case TraceKind::Feinting: {
      FeintingSpec spec = c.scheme.victim_based() ? FeintingSpec::victim_based(c.trace.r1, c.scheme.n_bo, c.scheme.n_mit)
                                                  : FeintingSpec::aggressor_based(c.trace.r1, c.scheme.n_bo, c.scheme.n_mit);
      spec.abo_act = c.abo.abo_act;
      spec.abo_delay = c.abo.delay_for(c.scheme.scheme, c.scheme.n_mit);
      spec.base_row = c.trace.base_row;
      FeintingSource src(spec, c.geometry);
      run.result = engine.run(src);
      for (const auto& r : run.result.log)
        if (r.kind == CommandKind::ACT) run.baseline_trace.push_back(TraceEvent::act_at(r.time, r.row));
      run.counters = engine.scheme().counters().counts();
      return run;
    }
  }
  run.result = engine.run(trace);
  run.counters = engine.scheme().counters().counts();
  run.baseline_trace = std::move(trace);
  return run;
}

void scenario_simulate(const Config& c, const ScenarioOptions& o, Output& out) {
  SimRun run = simulate_once(c, o.seed);
  const auto& log = run.result.log;
  const EngineMetrics& m = run.result.metrics;
  EngineConfig ec = c.engine_config();

  EngineConfig audit_cfg = ec;
  audit_cfg.duration = m.end_time;
  AuditReport audit = audit_log(log, audit_cfg);
  if (!audit.ok()) out.violation("log audit: " + audit.violations.front());

  EngineConfig base = ec;
  base.mitigation = false;
  RunResult baseline = Engine(base).run(run.baseline_trace);
  EnergyReport energy = energy_report(log, energy_inputs(ec), baseline.log, energy_inputs(base));

  { std::ofstream f = out.open("events.csv"); write_event_log_csv(f, log, ec.bank); }
  { std::ofstream f = out.open("metrics.csv"); write_metrics_csv(f, m); }
  {
    std::ofstream f = out.open("summary.csv");
    write_window_summary_csv(f, window_summary(log, ec.refresh, m.end_time));
  }
  {
    std::ofstream f = out.open("counters.csv");
    f << "row,count\n";
    for (std::size_t r = 0; r < run.counters.size(); ++r)
      if (run.counters[r]) f << r << ',' << run.counters[r] << '\n';
  }
  {
    std::ofstream f = out.open("energy.csv");
    write_energy_csv(f, energy);
    f << "normalized_to_baseline,,," << fmt("%.6f", energy.normalized) << '\n';
  }
  std::ostringstream msg;
  msg << "acts=" << m.acts_issued << " refs=" << m.refs_issued << " rfms=" << m.rfms_issued
      << " alerts=" << m.alerts_raised << " max_hammered=" << m.max_hammered
      << " energy_vs_baseline=" << fmt("%.4f", energy.normalized);
  out.note(msg.str());
  write_plot(out,
             "m = load(\"metrics.csv\")\nc = load(\"counters.csv\")\n"
             "fig, (a, b) = plt.subplots(2, 1, figsize=(7, 6))\n"
             "a.plot(m.window_index, m.bandwidth * 100, marker=\"o\")\na.set_xlabel(\"tREFW window\")\n"
             "a.set_ylabel(\"bandwidth (%)\")\nb.scatter(c.row, c[\"count\"], s=2)\nb.set_xlabel(\"row\")\n"
             "b.set_ylabel(\"counter\")\nfig.tight_layout()\nfig.savefig(os.path.join(HERE, \"simulate.png\"), dpi=150)\n");
  write_manifest(c, o, out, {"events.csv", "metrics.csv", "summary.csv", "counters.csv", "energy.csv", "plot.py"});
}

// --- sweep-stride ---------------------------------------------------------

void scenario_sweep(const Config& c, const ScenarioOptions& o, Output& out) {
  struct Job {
    SchemeKind scheme;
    std::int64_t hc;
    int n_bo;
    std::int64_t n;
    int stride;
  };
  std::vector<Job> jobs;
  for (SchemeKind s : c.sweep.schemes) {
    int n_mit = s == SchemeKind::MOAT ? 1 : c.sweep.n_mit;
    SecurityAnalyzer an(analysis_params(c, n_mit));
    for (std::int64_t hc : c.sweep.max_hc) {
      SecurityCurvePoint pt = an.solve_nbo(s, hc);
      for (std::int64_t n : c.sweep.pools)
        for (int st : c.sweep.strides)
          if (c.trace.base_row + (n - 1) * st < c.geometry.rows_per_bank) jobs.push_back({s, hc, pt.feasible ? pt.n_bo : 0, n, st});
    }
  }
  auto rows = parallel_map<StrideRow>(jobs.size(), o.jobs, [&](std::size_t i) {
    const Job& j = jobs[i];
    if (j.n_bo == 0) {
      StrideRow r;
      r.scheme = j.scheme;
      r.max_hc = j.hc;
      r.n = j.n;
      r.stride = j.stride;
      return r;
    }
    return run_stride_point(c, j.scheme, j.hc, j.n_bo, j.n, j.stride);
  });
  std::ofstream f = out.open("sweep_stride.csv");
  f << "scheme,max_hc,n_bo,n,stride,bandwidth,rfm_per_trefw,alerts,acts\n";
  for (const auto& r : rows) {
    f << to_string(r.scheme) << ',' << r.max_hc << ',';
    if (r.n_bo == 0) {
      f << "infeasible," << r.n << ',' << r.stride << ",,,,\n";
      continue;
    }
    f << r.n_bo << ',' << r.n << ',' << r.stride << ',' << fmt("%.6f", r.bandwidth) << ',' << fmt("%.3f", r.rfm_per_trefw)
      << ',' << r.alerts << ',' << r.acts << '\n';
    if (!r.audit_ok) out.violation("sweep log audit failed");
  }
  write_plot(out,
             "d = load(\"sweep_stride.csv\")\nd = d[d.n_bo != \"infeasible\"]\n"
             "groups = list(d.groupby([\"scheme\", \"max_hc\"]))\n"
             "fig, axes = plt.subplots(1, len(groups), figsize=(4 * len(groups), 4), squeeze=False)\n"
             "for ax, ((scheme, hc), g) in zip(axes[0], groups):\n"
             "    for n, h in g.groupby(\"n\"):\n        ax.plot(h.stride, h.rfm_per_trefw, marker=\"o\", label=f\"n={n}\")\n"
             "    ax.set_title(f\"{scheme} HC={hc}\")\n    ax.set_xlabel(\"stride\")\n    ax.set_ylabel(\"RFM per tREFW\")\n"
             "axes[0][0].legend(fontsize=7)\nfig.tight_layout()\nfig.savefig(os.path.join(HERE, \"sweep_stride.png\"), dpi=150)\n");
  write_manifest(c, o, out, {"sweep_stride.csv", "plot.py"});
}

// --- oracle-check ---------------------------------------------------------

void scenario_oracle(const Config& c, const ScenarioOptions& o, Output& out) {
  struct Job {
    SchemeKind scheme;
    int n_mit;
    int n_bo;
  };
  std::vector<Job> jobs;
  for (SchemeKind s : c.oracle.schemes)
    for (int m : c.oracle.n_mit) {
      if (s == SchemeKind::MOAT && m != 1) continue;
      for (int nb : c.oracle.n_bo) jobs.push_back({s, m, nb});
    }
  DeviceGeometry g = oracle_geometry(c.oracle.rows);
  g.blast_radius = c.geometry.blast_radius;
  g.counter_bits = c.geometry.counter_bits;
  auto results = parallel_map<OracleResult>(jobs.size(), o.jobs, [&](std::size_t i) {
    SchemeConfig s = make_scheme_config(jobs[i].scheme, jobs[i].n_bo, jobs[i].n_mit);
    Discipline d = s.victim_based() ? Discipline::VictimBased : Discipline::AggressorBased;
    return brute_force_oracle(s, g, oracle_r1_grid(d, g), c.abo);
  });
  std::ofstream f = out.open("oracle.csv");
  f << "scheme,n_mit,n_bo,observed_hc,total_hc,worst_r1,bound_hc,sound,audit_ok\n";
  for (const auto& r : results) {
    f << to_string(r.scheme) << ',' << r.n_mit << ',' << r.n_bo << ',' << r.observed_hc << ',' << r.total_hc << ','
      << r.worst_r1 << ','
      << r.bound_hc << ',' << (r.sound() ? "yes" : "no") << ',' << (r.audit_ok ? "yes" : "no") << '\n';
    if (!r.sound())
      out.violation(to_string(r.scheme) + "-" + std::to_string(r.n_mit) + " n_bo=" + std::to_string(r.n_bo) +
                    " observed " + std::to_string(r.observed_hc) + " > bound " + std::to_string(r.bound_hc));
    if (!r.audit_ok) out.violation("oracle log audit failed");
  }
  write_plot(out,
             "d = load(\"oracle.csv\")\nfig, ax = plt.subplots(figsize=(5, 5))\n"
             "for s, g in d.groupby(\"scheme\"):\n    ax.scatter(g.bound_hc, g.observed_hc, label=s)\n"
             "m = max(d.bound_hc.max(), d.observed_hc.max())\nax.plot([0, m], [0, m], \"k--\", lw=0.8)\n"
             "ax.set_xlabel(\"analyzer HC\")\nax.set_ylabel(\"observed HC\")\nax.legend()\n"
             "fig.tight_layout()\nfig.savefig(os.path.join(HERE, \"oracle.png\"), dpi=150)\n");
  write_manifest(c, o, out, {"oracle.csv", "plot.py"});
}

}  // namespace

DominoResult run_domino(const Config& c, SchemeKind scheme) {
  EngineConfig ec = c.engine_config();
  ec.scheme = scheme_for(c, scheme, c.n_bo, scheme == SchemeKind::MOAT ? 1 : c.n_mit);
  ec.mitigation = true;
  ec.duration = c.domino_windows * c.refresh.tREFW;
  Engine engine(ec);
  RunResult rr = engine.run(gen_idle(ec.duration));
  DominoResult r;
  r.scheme = scheme;
  r.metrics = rr.metrics;
  AuditReport a = audit_log(rr.log, ec);
  r.audit_ok = a.ok();
  if (!a.ok()) r.audit_first = a.violations.front();
  for (const auto& cmd : rr.log)
    if (cmd.kind == CommandKind::ALERT) {
      r.first_alert_window = static_cast<int>(cmd.time / c.refresh.tREFW);
      break;
    }
  return r;
}

BwRow run_bw_point(const Config& c, const BwPoint& pt, bool engine_check) {
  BwRow r;
  r.point = pt;
  SchemeConfig s = scheme_for(c, pt.scheme, pt.n_bo, pt.n_mit);
  r.tRC = builtin_timing_set(s.timing).tRC;
  r.bound = bw_bound(pt.n_mit, pt.n_bo, r.tRC, c.abo.tRFM);
  if (!engine_check) return r;
  EngineConfig ec = c.engine_config();
  ec.scheme = s;
  // the bound covers Alert-driven RFM traffic only
  ec.scheme.proactive_period = 0;
  ec.mitigation = true;
  ec.duration = c.bw.duration;
  // a row away from subarray edges so it has a full victim set
  Row row = c.geometry.rows_per_dsa / 2;
  CyclicSource src({row});
  RunResult rr = Engine(ec).run(src);
  r.engine_fraction = rr.metrics.mitigation_blocked_fraction();
  r.audit_ok = audit_log(rr.log, ec).ok();
  return r;
}

StrideRow run_stride_point(const Config& c, SchemeKind scheme, std::int64_t max_hc, int n_bo, std::int64_t n, int stride) {
  StrideRow r;
  r.scheme = scheme;
  r.max_hc = max_hc;
  r.n_bo = n_bo;
  r.n = n;
  r.stride = stride;
  EngineConfig ec = c.engine_config();
  ec.scheme = scheme_for(c, scheme, n_bo, scheme == SchemeKind::MOAT ? 1 : c.sweep.n_mit);
  ec.mitigation = true;
  ec.duration = c.sweep.windows * c.refresh.tREFW;
  RoundRobinSpec rr{n, stride, c.trace.base_row, ec.duration};
  rr.validate(c.geometry);
  CyclicSource src(round_robin_rows(rr));
  RunResult res = Engine(ec).run(src);
  const EngineMetrics& m = res.metrics;
  double busy = 0;
  for (const auto& w : m.windows) busy += w.bandwidth;
  r.bandwidth = m.windows.empty() ? 1.0 : busy / static_cast<double>(m.windows.size());
  r.rfm_per_trefw = static_cast<double>(m.rfms_issued) / c.sweep.windows;
  r.alerts = m.alerts_raised;
  r.acts = m.acts_issued;
  r.audit_ok = audit_log(res.log, ec).ok();
  return r;
}

ScenarioOutcome run_scenario(const Config& c, const ScenarioOptions& o) {
  ScenarioOutcome outcome;
  Output out(o, outcome);
  if (o.name == "domino") scenario_domino(c, o, out);
  else if (o.name == "security-table") scenario_security(c, o, out);
  else if (o.name == "bw-bound") scenario_bw(c, o, out);
  else if (o.name == "csa-latency") scenario_csa(c, o, out);
  else if (o.name == "simulate") scenario_simulate(c, o, out);
  else if (o.name == "sweep-stride") scenario_sweep(c, o, out);
  else if (o.name == "oracle-check") scenario_oracle(c, o, out);
  else throw std::invalid_argument("unknown scenario '" + o.name + "'");
  return outcome;
}

}  // namespace hammersim::app
