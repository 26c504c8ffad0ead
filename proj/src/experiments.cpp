#include "cqc/experiments.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cqc/adjoint.hpp"
#include "cqc/errors.hpp"
#include "cqc/metrics.hpp"
#include "cqc/simd/kernels.hpp"

namespace cqc {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kMetadataMarker = "# cqc experiment metadata";

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string unquote(const std::string& key, const std::string& raw) {
  if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"') return raw.substr(1, raw.size() - 2);
  if (!raw.empty() && (raw.front() == '"' || raw.back() == '"'))
    throw ParameterError("config: unterminated string for '" + key + "': " + raw);
  return raw;
}

double to_double(const std::string& key, const std::string& raw) {
  const std::string text = trim(raw);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw ParameterError("config: '" + key + "' expects a number, got '" + raw + "'");
  return v;
}

int to_int(const std::string& key, const std::string& raw) {
  const std::string text = trim(raw);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw ParameterError("config: '" + key + "' expects an integer, got '" + raw + "'");
  return v;
}

std::vector<double> to_list(const std::string& key, const std::string& raw) {
  std::string body = trim(raw);
  if (!body.empty() && body.front() == '[') {
    if (body.back() != ']') throw ParameterError("config: unterminated array for '" + key + "'");
    body = body.substr(1, body.size() - 2);
  }
  std::vector<double> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (trim(item).empty()) continue;
    out.push_back(to_double(key, item));
  }
  return out;
}

void apply(ExperimentConfig& cfg, const std::string& key, const std::string& raw) {
  OcpConfig& o = cfg.ocp;
  if (key == "experiment" || key == "generator") return;  // resolved separately
  if (key == "T") o.T = to_double(key, raw);
  else if (key == "dt") o.dt = to_double(key, raw);
  else if (key == "gamma") o.gamma = to_double(key, raw);
  else if (key == "alpha") o.alpha = to_double(key, raw);
  else if (key == "umax") o.u_max = to_double(key, raw);
  else if (key == "beta") o.beta = to_double(key, raw);
  else if (key == "max_iters") o.max_iters = to_int(key, raw);
  else if (key == "dJ_tol") o.dJ_tol = to_double(key, raw);
  else if (key == "grid_points") o.grid_points = to_int(key, raw);
  else if (key == "refine_iters") o.refine_iters = to_int(key, raw);
  else if (key == "max_backtracks") o.max_backtracks = to_int(key, raw);
  else if (key == "scheme") cfg.scheme = parse_scheme(unquote(key, trim(raw)));
  else if (key == "amplitude") cfg.amplitude = to_double(key, raw);
  else if (key == "refine") cfg.refine = to_int(key, raw);
  else if (key == "dts") cfg.dts = to_list(key, raw);
  else if (key == "isa") {
    const std::string name = unquote(key, trim(raw));
    if (name == "avx2") cfg.isa = simd::Isa::Avx2;
    else if (name == "scalar") cfg.isa = simd::Isa::Scalar;
    else throw ParameterError("config: isa must be \"avx2\" or \"scalar\"");
  } else
    throw ParameterError("config: unknown key '" + key + "'");
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("config: cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string{}; }

std::string opt_index(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string{}; }

const Herm2 kInitial = Herm2::excited();
const Herm2 kTarget = Herm2::ground();

struct SchemeRun {
  Trajectory traj;
  CostateSeq costates;
  CostAccumulator z;
  std::vector<StepMetrics> steps;
  RunSummary summary;
};

SchemeRun run_scheme(const ExperimentConfig& cfg, Scheme scheme, const ControlSchedule& u,
                     const Trajectory* reference) {
  SchemeRun r;
  r.traj = propagate(scheme, kInitial, u, cfg.ocp.dt, cfg.ocp.gamma);
  r.costates = backward_sweep(r.traj, kTarget, cfg.ocp.gamma);
  r.z = accumulate_cost(u, cfg.ocp.alpha, cfg.ocp.dt);
  r.steps = step_metrics(r.traj, r.costates, r.z, reference);
  r.summary = summarize(scheme, r.steps, r.traj.diverged_at);
  return r;
}

class CsvFile {
 public:
  CsvFile(const ExperimentConfig& cfg, std::string_view header) {
    body_ << metadata_block(cfg) << header << '\n';
  }
  void row(std::initializer_list<std::string> cells) {
    bool first = true;
    for (const std::string& c : cells) {
      if (!first) body_ << ',';
      body_ << c;
      first = false;
    }
    body_ << '\n';
  }
  fs::path write(const fs::path& dir, const std::string& name) const {
    const fs::path path = dir / name;
    write_file(path, body_.str());
    return path;
  }

 private:
  std::ostringstream body_;
};

constexpr std::string_view kStepHeader = "k,t,scheme,bloch_x,bloch_y,bloch_z,trace_drift,pos_drift,theta,glob_err";
constexpr std::string_view kSummaryHeader =
    "scheme,max_trace_drift,max_pos_drift,max_pos_drift_raw,max_abs_theta,max_glob_err,diverged_at";

void step_rows(CsvFile& csv, const SchemeRun& r) {
  // A zero-step run has no intervals to report.
  if (r.traj.steps() == 0) return;
  const std::string name(scheme_name(r.traj.scheme));
  for (const StepMetrics& m : r.steps) {
    const auto b = r.traj.rho[m.k].bloch();
    csv.row({std::to_string(m.k), format_double(r.traj.time(m.k)), name, format_double(b[0]), format_double(b[1]),
             format_double(b[2]), format_double(m.trace_drift), format_double(m.pos_drift), opt(m.theta),
             opt(m.glob_err)});
  }
}

void summary_row(CsvFile& csv, const RunSummary& s) {
  csv.row({std::string(scheme_name(s.scheme)), format_double(s.max_trace_drift), format_double(s.max_pos_drift),
           format_double(s.max_pos_drift_raw), format_double(s.max_abs_theta), opt(s.max_glob_err),
           opt_index(s.diverged_at)});
}

ControlSchedule pulse(const ExperimentConfig& cfg) {
  return ControlSchedule::sine_pulse(cfg.ocp.steps(), cfg.ocp.dt, cfg.amplitude);
}

fs::path prepare(const ExperimentConfig& cfg) {
  cfg.validate();
  simd::select_isa(cfg.isa);
  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + cfg.out.string() + ": " + ec.message());
  return cfg.out;
}

}  // namespace

std::string_view experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Simulate: return "simulate";
    case ExperimentKind::Compare: return "compare";
    case ExperimentKind::LongHorizon: return "longhorizon";
    case ExperimentKind::Optimize: return "optimize";
    case ExperimentKind::Convergence: return "convergence";
  }
  return "unknown";
}

ExperimentKind parse_experiment(std::string_view name) {
  for (ExperimentKind k : {ExperimentKind::Simulate, ExperimentKind::Compare, ExperimentKind::LongHorizon,
                           ExperimentKind::Optimize, ExperimentKind::Convergence})
    if (experiment_name(k) == name) return k;
  throw ParameterError("unknown experiment '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
  ocp.validate();
  if (refine < 1) throw ParameterError("config: refine must be >= 1");
  if (!std::isfinite(amplitude)) throw ParameterError("config: amplitude must be finite");
  if (kind == ExperimentKind::Optimize && std::abs(amplitude) > ocp.u_max)
    throw ParameterError("config: initial pulse amplitude exceeds umax");
  if (kind == ExperimentKind::Convergence) {
    if (dts.empty()) throw ParameterError("config: convergence needs at least one dt in 'dts'");
    for (double d : dts) {
      OcpConfig probe = ocp;
      probe.dt = d;
      probe.steps();
    }
  }
}

ExperimentConfig default_config(ExperimentKind kind) {
  ExperimentConfig cfg;
  cfg.kind = kind;
  OcpConfig& o = cfg.ocp;
  switch (kind) {
    case ExperimentKind::Simulate:
    case ExperimentKind::Compare:
      o.T = 10.0;
      o.dt = 0.01;
      o.gamma = 1.0;
      break;
    case ExperimentKind::LongHorizon:
      o.T = 100.0;
      o.dt = 0.01;
      o.gamma = 10.0;
      break;
    case ExperimentKind::Optimize:
      o.T = 3.0;
      o.dt = 0.01;
      o.gamma = 1.0;
      break;
    case ExperimentKind::Convergence:
      o.T = 1.0;
      o.dt = 0.01;
      o.gamma = 1.0;
      cfg.refine = 100;
      cfg.dts = {0.02, 0.01, 0.005};
      break;
  }
  return cfg;
}

Overrides parse_config_text(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
  }
  const bool metadata = !lines.empty() && trim(lines.front()) == kMetadataMarker;
  Overrides out;
  for (std::size_t i = metadata ? 1 : 0; i < lines.size(); ++i) {
    std::string line = lines[i];
    if (metadata) {
      if (line.rfind("# ", 0) != 0) break;  // end of the metadata block
      line = line.substr(2);
    } else if (const auto hash = line.find('#'); hash != std::string::npos && line.find('"') == std::string::npos) {
      line = line.substr(0, hash);
    }
    const std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ParameterError("config line " + std::to_string(i + 1) + ": expected 'key = value', got '" + body + "'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ParameterError("config line " + std::to_string(i + 1) + ": empty key or value");
    out[key] = value;
  }
  return out;
}

ExperimentConfig parse_config(std::optional<ExperimentKind> kind, const std::optional<fs::path>& file,
                              const Overrides& flags) {
  Overrides from_file;
  if (file) from_file = parse_config_text(read_file(*file));
  if (!kind) {
    const auto it = from_file.find("experiment");
    if (it == from_file.end()) throw ParameterError("config: no experiment given");
    kind = parse_experiment(unquote("experiment", it->second));
  } else if (const auto it = from_file.find("experiment"); it != from_file.end()) {
    if (parse_experiment(unquote("experiment", it->second)) != *kind)
      throw ParameterError("config: file is for experiment " + unquote("experiment", it->second));
  }
  ExperimentConfig cfg = default_config(*kind);
  for (const auto& [key, value] : from_file) apply(cfg, key, value);
  for (const auto& [key, value] : flags) {
    if (key == "out")
      cfg.out = unquote(key, value);
    else
      apply(cfg, key, value);
  }
  cfg.validate();
  return cfg;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string metadata_block(const ExperimentConfig& cfg) {
  const OcpConfig& o = cfg.ocp;
  std::ostringstream s;
  auto q = [](std::string_view v) { return "\"" + std::string(v) + "\""; };
  std::string dts = "[";
  for (std::size_t i = 0; i < cfg.dts.size(); ++i) dts += (i ? ", " : "") + format_double(cfg.dts[i]);
  dts += "]";
  s << kMetadataMarker << '\n'
    << "# experiment = " << q(experiment_name(cfg.kind)) << '\n'
    << "# T = " << format_double(o.T) << '\n'
    << "# dt = " << format_double(o.dt) << '\n'
    << "# gamma = " << format_double(o.gamma) << '\n'
    << "# alpha = " << format_double(o.alpha) << '\n'
    << "# umax = " << format_double(o.u_max) << '\n'
    << "# beta = " << format_double(o.beta) << '\n'
    << "# max_iters = " << o.max_iters << '\n'
    << "# dJ_tol = " << format_double(o.dJ_tol) << '\n'
    << "# grid_points = " << o.grid_points << '\n'
    << "# refine_iters = " << o.refine_iters << '\n'
    << "# max_backtracks = " << o.max_backtracks << '\n'
    << "# scheme = " << q(scheme_name(cfg.scheme)) << '\n'
    << "# amplitude = " << format_double(cfg.amplitude) << '\n'
    << "# refine = " << cfg.refine << '\n'
    << "# dts = " << dts << '\n'
    << "# isa = " << q(simd::isa_name(cfg.isa)) << '\n';
  return s.str();
}

std::vector<fs::path> run_simulate(const ExperimentConfig& cfg) {
  const fs::path dir = prepare(cfg);
  const ControlSchedule u = pulse(cfg);
  const Trajectory ref = reference_trajectory(kInitial, u, cfg.ocp.dt, cfg.ocp.gamma, cfg.refine);
  const SchemeRun run = run_scheme(cfg, cfg.scheme, u, &ref);
  CsvFile steps(cfg, kStepHeader);
  step_rows(steps, run);
  CsvFile summary(cfg, kSummaryHeader);
  summary_row(summary, run.summary);
  return {steps.write(dir, "simulate_steps.csv"), summary.write(dir, "simulate_summary.csv")};
}

std::vector<fs::path> run_compare(const ExperimentConfig& cfg) {
  const fs::path dir = prepare(cfg);
  const ControlSchedule u = pulse(cfg);
  const Trajectory ref = reference_trajectory(kInitial, u, cfg.ocp.dt, cfg.ocp.gamma, cfg.refine);
  CsvFile steps(cfg, kStepHeader);
  CsvFile summary(cfg, kSummaryHeader);
  for (Scheme s : {Scheme::ContactLgvi, Scheme::Rk2Heun}) {
    const SchemeRun run = run_scheme(cfg, s, u, &ref);
    step_rows(steps, run);
    summary_row(summary, run.summary);
  }
  return {steps.write(dir, "compare_steps.csv"), summary.write(dir, "compare_summary.csv")};
}

std::vector<fs::path> run_longhorizon(const ExperimentConfig& cfg) {
  const fs::path dir = prepare(cfg);
  const ControlSchedule u = pulse(cfg);
  CsvFile steps(cfg, kStepHeader);
  CsvFile summary(cfg, kSummaryHeader);
  for (Scheme s : {Scheme::ContactLgvi, Scheme::Rk2Heun}) {
    const SchemeRun run = run_scheme(cfg, s, u, nullptr);
    step_rows(steps, run);
    summary_row(summary, run.summary);
  }
  return {steps.write(dir, "longhorizon_steps.csv"), summary.write(dir, "longhorizon_summary.csv")};
}

std::vector<fs::path> run_optimize(const ExperimentConfig& cfg) {
  const fs::path dir = prepare(cfg);
  const ControlSchedule u0 = pulse(cfg);
  const ShootResult lgvi = shoot(cfg.ocp, Scheme::ContactLgvi, kInitial, kTarget, u0);
  const ShootResult rk2 = shoot(cfg.ocp, Scheme::Rk2Heun, kInitial, kTarget, u0);

  CsvFile cost(cfg, "iteration,scheme,J,relaxation");
  CsvFile drift(cfg, kStepHeader);
  CsvFile summary(cfg,
                  "scheme,J_initial,J_final,updates,converged,reason,max_trace_drift,max_pos_drift,"
                  "max_pos_drift_raw,max_abs_theta,diverged_at");
  for (const ShootResult* r : {&lgvi, &rk2}) {
    const Scheme s = r->trajectory.scheme;
    const std::string name(scheme_name(s));
    for (std::size_t i = 0; i < r->cost_history.size(); ++i)
      cost.row({std::to_string(i), name, format_double(r->cost_history[i]),
                i == 0 ? std::string{} : format_double(r->relaxation[i - 1])});
    SchemeRun run;
    run.traj = r->trajectory;
    run.steps = step_metrics(r->trajectory, r->costates, r->cost, nullptr);
    step_rows(drift, run);
    const RunSummary sm = summarize(s, run.steps, r->trajectory.diverged_at);
    summary.row({name, r->cost_history.empty() ? "" : format_double(r->cost_history.front()),
                 r->cost_history.empty() ? "" : format_double(r->cost_history.back()),
                 std::to_string(r->relaxation.size()), r->converged ? "true" : "false",
                 std::string(stop_reason_name(r->reason)), format_double(sm.max_trace_drift),
                 format_double(sm.max_pos_drift), format_double(sm.max_pos_drift_raw),
                 format_double(sm.max_abs_theta), opt_index(sm.diverged_at)});
  }

  CsvFile pulses(cfg, "k,t,u_lgvi,u_rk2");
  for (std::size_t k = 0; k < u0.size(); ++k)
    pulses.row({std::to_string(k), format_double(static_cast<double>(k) * cfg.ocp.dt), format_double(lgvi.u[k]),
                format_double(rk2.u[k])});

  return {cost.write(dir, "optimize_cost.csv"), pulses.write(dir, "optimize_pulses.csv"),
          drift.write(dir, "optimize_drift.csv"), summary.write(dir, "optimize_summary.csv")};
}

std::vector<fs::path> run_convergence(const ExperimentConfig& cfg) {
  const fs::path dir = prepare(cfg);
  CsvFile table(cfg, "dt,scheme,err,observed_order");
  for (Scheme s : {Scheme::ContactLgvi, Scheme::Rk2Heun}) {
    std::optional<std::pair<double, double>> prev;  // (dt, err)
    for (double dt : cfg.dts) {
      OcpConfig o = cfg.ocp;
      o.dt = dt;
      const ControlSchedule u = ControlSchedule::sine_pulse(o.steps(), dt, cfg.amplitude);
      const Trajectory traj = propagate(s, kInitial, u, dt, o.gamma);
      const Trajectory ref = reference_trajectory(kInitial, u, dt, o.gamma, cfg.refine);
      const double err = frobenius(traj.rho.back() - ref.rho.back());
      std::string order;
      // Undefined when either error vanishes, as for the exact u = 0 channel.
      if (prev && prev->second > 0.0 && err > 0.0) order = format_double(std::log(prev->second / err) / std::log(prev->first / dt));
      table.row({format_double(dt), std::string(scheme_name(s)), format_double(err), order});
      prev = {dt, err};
    }
  }
  return {table.write(dir, "convergence.csv")};
}

std::vector<fs::path> run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::Simulate: return run_simulate(cfg);
    case ExperimentKind::Compare: return run_compare(cfg);
    case ExperimentKind::LongHorizon: return run_longhorizon(cfg);
    case ExperimentKind::Optimize: return run_optimize(cfg);
    case ExperimentKind::Convergence: return run_convergence(cfg);
  }
  return {};
}

}  // namespace cqc
