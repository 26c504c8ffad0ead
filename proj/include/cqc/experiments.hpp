#pragma once

// Experiment drivers behind the command-line tool. Every driver writes CSV
// files whose leading '#' block records the resolved configuration; feeding
// that block back through parse_config reproduces the files byte for byte.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cqc/integrators.hpp"
#include "cqc/pmp.hpp"
#include "cqc/simd/kernels.hpp"

namespace cqc {

enum class ExperimentKind { Simulate, Compare, LongHorizon, Optimize, Convergence };

std::string_view experiment_name(ExperimentKind kind);
ExperimentKind parse_experiment(std::string_view name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Compare;
  OcpConfig ocp;
  Scheme scheme = Scheme::ContactLgvi;  // simulate only
  double amplitude = 4.0;               // u(t) = amplitude sin(pi t / T)
  int refine = 20;                      // reference step dt / refine
  std::vector<double> dts;              // convergence only
  simd::Isa isa = simd::detected_isa();  // kernel variant for the grid scan
  std::filesystem::path out = ".";

  /// Throws ParameterError with a descriptive message.
  void validate() const;
};

/// Reference parameters for each experiment.
ExperimentConfig default_config(ExperimentKind kind);

/// key -> raw value text, as read from a file or from flags.
using Overrides = std::map<std::string, std::string>;

/// Parses the flat `key = value` format (strings quoted, '#' comments,
/// numeric arrays in brackets). If the text starts with an emitted metadata
/// block, that block is parsed instead. Throws ParameterError on malformed
/// lines.
Overrides parse_config_text(std::string_view text);

/// Resolves defaults < file < flags. The experiment kind comes from `kind`
/// unless the file names one and `kind` is empty. Unknown keys are rejected.
ExperimentConfig parse_config(std::optional<ExperimentKind> kind, const std::optional<std::filesystem::path>& file,
                              const Overrides& flags);

/// Metadata block ('#'-prefixed `key = value` lines) for a resolved config.
std::string metadata_block(const ExperimentConfig& cfg);

/// Shortest decimal text that parses back to the same double; "inf", "-inf"
/// and "nan" for non-finite values.
std::string format_double(double v);

/// Runs the configured experiment, writes its files into cfg.out and
/// returns their paths. Throws std::runtime_error naming the path on I/O
/// failure.
std::vector<std::filesystem::path> run_experiment(const ExperimentConfig& cfg);

std::vector<std::filesystem::path> run_simulate(const ExperimentConfig& cfg);
std::vector<std::filesystem::path> run_compare(const ExperimentConfig& cfg);
std::vector<std::filesystem::path> run_longhorizon(const ExperimentConfig& cfg);
std::vector<std::filesystem::path> run_optimize(const ExperimentConfig& cfg);
std::vector<std::filesystem::path> run_convergence(const ExperimentConfig& cfg);

}  // namespace cqc
