#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sei/dynamics.hpp"
#include "sei/integrators.hpp"
#include "sei/types.hpp"

namespace sei {

/// Malformed or unreadable configuration, or a field that cannot serve the
/// requested experiment.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Experiment { run, convergence, timing, hamiltonian };

std::string_view to_string(Experiment e);
Experiment experiment_from_string(std::string_view name);

struct InitialCondition {
  std::string label;  // "I", "II" or "custom"
  State8 state;
};

/// Presets "I" and "II"; γ is recomputed from the momentum.
InitialCondition preset_ic(std::string_view name);

struct ExperimentSpec {
  Experiment experiment = Experiment::convergence;
  InitialCondition ic;
  std::vector<double> h_list;
  double T = 1.0;
  std::vector<Method> methods;
  std::string output_path;
  FieldPtr field;
  /// Observer stride for hamiltonian; 0 picks ⌈num_steps / 10000⌉.
  std::int64_t stride = 0;
  /// Wall-clock repetitions per timing row (median reported).
  int repetitions = 5;
};

/// Defaults for an experiment: paper field, IC I, h = 2⁻⁵…2⁻¹⁰ (2⁻⁶ for run
/// and hamiltonian), T = 1 (1000 for hamiltonian), both methods (sei for run).
ExperimentSpec default_spec(Experiment e);

/// Throws UsageError on h ∉ (0,1], T ≤ 0, h not dividing T, empty lists.
void validate(const ExperimentSpec& spec);

/// Integer step count for h over T; throws UsageError if h does not divide T
/// to one part in 10⁹.
std::int64_t step_count(double h, double T);

/// ‖yⁿ − y‖/‖y‖ + ‖uⁿ − u‖/‖u‖ with y = (x, t̄), u = (v, γ).
/// Throws UsageError when either exact block has zero norm.
double err_U(const State8& num, const State8& exact);

/// Least-squares slope of log₂(err) against log₂(h).
double fit_slope(std::span<const double> h, std::span<const double> err);

enum class RowStatus { ok, failed };

std::string_view to_string(RowStatus s);

struct ConvergenceRow {
  Method method = Method::sei;
  std::string ic;
  double h = 0.0;
  double T = 0.0;
  std::int64_t steps = 0;
  std::optional<double> err_u;
  RowStatus status = RowStatus::ok;

  static std::vector<std::string> header();
  std::vector<std::string> fields() const;
  static ConvergenceRow parse(const std::vector<std::string>& f);
  friend bool operator==(const ConvergenceRow&, const ConvergenceRow&) = default;
};

struct HamiltonianRow {
  Method method = Method::sei;
  std::string ic;
  double h = 0.0;
  double tau = 0.0;
  std::optional<double> rel_h_err;
  RowStatus status = RowStatus::ok;

  static std::vector<std::string> header();
  std::vector<std::string> fields() const;
  static HamiltonianRow parse(const std::vector<std::string>& f);
  friend bool operator==(const HamiltonianRow&, const HamiltonianRow&) = default;
};

struct TimingRow {
  Method method = Method::sei;
  std::string ic;
  double h = 0.0;
  double T = 0.0;
  std::int64_t steps = 0;
  std::optional<double> err_u;
  double seconds = 0.0;
  std::int64_t evaluations = 0;
  RowStatus status = RowStatus::ok;

  static std::vector<std::string> header();
  std::vector<std::string> fields() const;
  static TimingRow parse(const std::vector<std::string>& f);
  friend bool operator==(const TimingRow&, const TimingRow&) = default;
};

struct MethodFit {
  std::optional<double> slope;
  /// Every error ≤ 1e-12: the method is exact on this problem, no fit.
  bool exact = false;
  int ok_rows = 0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  std::map<Method, MethodFit> fits;
  double reference_h = 0.0;
  /// err_U between the reference at reference_h and at reference_h / 2.
  double reference_discrepancy = 0.0;
};

struct HamiltonianSummary {
  double max_rel_err = 0.0;
  double final_rel_err = 0.0;
  double final_tau = 0.0;
  bool ok = true;
  std::string failure;
};

struct HamiltonianReport {
  std::vector<HamiltonianRow> rows;
  std::map<Method, HamiltonianSummary> summaries;
  double h0 = 0.0;  // H at τ = 0
};

struct TimingReport {
  std::vector<TimingRow> rows;
};

struct RunResult {
  Method method;
  TrajectorySummary trajectory;
};

ConvergenceReport convergence_study(const ExperimentSpec& spec);
HamiltonianReport hamiltonian_study(const ExperimentSpec& spec);
TimingReport timing_study(const ExperimentSpec& spec);
std::vector<RunResult> run_study(const ExperimentSpec& spec);

/// Slope gate used by the convergence experiment.
inline constexpr double kSlopeMin = 1.85;
inline constexpr double kSlopeMax = 2.15;

/// Worker count for the harness: SEI_THREADS if set to a positive integer,
/// otherwise the hardware concurrency.
unsigned worker_count();

// CSV ----------------------------------------------------------------------

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);
double parse_double(std::string_view s);

std::string csv_join(const std::vector<std::string>& fields);
std::vector<std::vector<std::string>> csv_split(std::string_view text);

template <class Row>
std::string to_csv(std::span<const Row> rows) {
  std::string out = csv_join(Row::header());
  for (const Row& r : rows) out += csv_join(r.fields());
  return out;
}

template <class Row>
std::vector<Row> from_csv(std::string_view text) {
  auto lines = csv_split(text);
  if (lines.empty() || lines.front() != Row::header()) throw ConfigError("csv header mismatch");
  std::vector<Row> rows;
  rows.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) rows.push_back(Row::parse(lines[i]));
  return rows;
}

}  // namespace sei
