// Command-line front end: one subcommand per experiment plus `rerun`, which
// replays the metadata block of a previously written CSV.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "cqc/errors.hpp"
#include "cqc/experiments.hpp"

namespace {

struct Flags {
  std::map<std::string, std::string> values;
  std::string config;
};

void add_common(CLI::App* sub, Flags& f) {
  // Keys match the config file; a flag that was not given stays out of the map.
  const std::pair<const char*, const char*> keys[] = {
      {"T", "horizon"},
      {"dt", "time step"},
      {"gamma", "decay rate"},
      {"alpha", "control penalty"},
      {"umax", "control bound"},
      {"beta", "relaxation"},
      {"max_iters", "shooting iterations"},
      {"dJ_tol", "cost change tolerance"},
      {"grid_points", "maximization grid size"},
      {"refine_iters", "golden-section iterations"},
      {"max_backtracks", "relaxation halvings"},
      {"scheme", "lgvi, rk2 or rkmk2 (simulate)"},
      {"amplitude", "sine pulse amplitude"},
      {"refine", "reference refinement factor"},
      {"dts", "comma-separated step sizes (convergence)"},
      {"isa", "avx2 or scalar"},
      {"out", "output directory"},
  };
  for (const auto& [key, help] : keys) {
    std::string name = std::string("--") + key;
    if (std::string(key) == "max_iters") name += ",--max-iters";
    sub->add_option_function<std::string>(
        name, [&f, k = std::string(key)](const std::string& v) { f.values[k] = v; }, help);
  }
  sub->add_option("--config", f.config, "config file (flat key = value)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contact-geometric integrators and PMP shooting for a driven decaying qubit"};
  app.require_subcommand(1);

  Flags flags;
  std::optional<cqc::ExperimentKind> kind;
  for (cqc::ExperimentKind k : {cqc::ExperimentKind::Compare, cqc::ExperimentKind::LongHorizon,
                                cqc::ExperimentKind::Optimize, cqc::ExperimentKind::Convergence,
                                cqc::ExperimentKind::Simulate}) {
    auto* sub = app.add_subcommand(std::string(cqc::experiment_name(k)));
    add_common(sub, flags);
    sub->callback([&kind, k] { kind = k; });
  }
  std::string rerun_file;
  auto* rerun = app.add_subcommand("rerun", "reproduce a run from the metadata block of an emitted CSV");
  rerun->add_option("file", rerun_file, "CSV written by a previous run")->required()->check(CLI::ExistingFile);
  std::string rerun_out;
  rerun->add_option("--out", rerun_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    cqc::ExperimentConfig cfg;
    if (rerun->parsed()) {
      cqc::Overrides o;
      if (!rerun_out.empty()) o["out"] = rerun_out;
      cfg = cqc::parse_config(std::nullopt, rerun_file, o);
    } else {
      std::optional<std::filesystem::path> file;
      if (!flags.config.empty()) file = flags.config;
      cfg = cqc::parse_config(kind, file, flags.values);
    }
    for (const auto& path : cqc::run_experiment(cfg)) std::cout << path.string() << '\n';
  } catch (const cqc::ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
