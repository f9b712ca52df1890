#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cyclespan/graph.hpp"
#include "cyclespan/pipeline.hpp"

namespace cyclespan {

/// Edge probability as a function of n: a constant, coefficient * ln n / n,
/// or coefficient / n.
struct DensityRule {
  enum class Kind { constant, log_over_n, over_n };
  Kind kind = Kind::constant;
  double coefficient = 0.0;

  double p(std::size_t n) const;
  /// Canonical spelling: "0.3", "5lnn/n", "2/n".
  std::string text() const;
};

/// Accepts "0.3", "5lnn/n", "5*ln(n)/n", "5 log n / n", "lnn/n", "3/n".
/// Throws InvalidInput otherwise.
DensityRule parse_density_rule(const std::string& text);

/// Expands the letter c in a rule template with each coefficient, so
/// "c*ln(n)/n" with {4, 6} gives 4lnn/n and 6lnn/n. Rules without a c pass
/// through.
std::vector<DensityRule> expand_density_rules(const std::vector<std::string>& rules, const std::vector<double>& cs);

enum class Generator { gnp, near_dirac, hitting_time };

const char* to_string(Generator generator);
Generator parse_generator(const std::string& name);

struct GeneratorSpec {
  Generator generator = Generator::gnp;
  std::size_t n = 0;
  double p = 0.0;
  std::uint64_t seed = 1;
  /// near_dirac: G(n, p) densified to minimum degree ceil(n/2) + offset.
  std::size_t dirac_offset = 2;
  /// hitting_time: random graph process stopped at this minimum degree.
  std::size_t min_degree = 2;
};

Graph generate(const GeneratorSpec& spec);

struct ExperimentSpec {
  std::vector<std::size_t> n_values;
  std::vector<DensityRule> rules;
  std::vector<std::uint64_t> seeds;
  Generator generator = Generator::gnp;
  std::size_t dirac_offset = 2;
  std::size_t min_degree = 2;
  /// Even n is rejected unless the grid is a negative control.
  bool negative_control = false;
  PipelineConfig pipeline;
  /// 0 means the available parallelism.
  std::size_t workers = 0;
  bool timing = false;
};

struct ExperimentRow {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::string p_rule;
  double p = 0.0;
  std::string variant;
  bool success = false;
  std::size_t rank = 0;
  std::size_t target_rank = 0;
  std::size_t iterations = 0;
  std::size_t switcher_retries = 0;
  std::uint64_t posa_rotations = 0;
  double wall_ms = 0.0;
};

/// Throws InvalidInput for an empty grid, seed 0, or even n outside a
/// negative control.
void validate_experiment(const ExperimentSpec& spec);

/// One row per (n, rule, seed), in that nesting order, whatever the worker
/// count. The graph seed and the pipeline seed are both the row's seed.
std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec);

extern const char* const kCsvHeader;
void write_csv(const std::vector<ExperimentRow>& rows, std::ostream& out);

/// Success rate against p, one series per n.
void write_svg(const std::vector<ExperimentRow>& rows, std::ostream& out);

}  // namespace cyclespan
