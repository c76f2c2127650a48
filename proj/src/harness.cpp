#include "sei/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

namespace sei {

namespace {

constexpr double kExactTolerance = 1e-12;
constexpr std::int64_t kMaxHamiltonianSamples = 10000;

std::string format_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string{};
}

std::optional<double> parse_optional(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_double(s);
}

std::int64_t parse_int(const std::string& s) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw ConfigError("bad integer field '" + s + "'");
  return v;
}

RowStatus parse_status(const std::string& s) {
  if (s == "ok") return RowStatus::ok;
  if (s == "failed") return RowStatus::failed;
  throw ConfigError("bad status field '" + s + "'");
}

void expect_columns(const std::vector<std::string>& f, std::size_t n) {
  if (f.size() != n) throw ConfigError("csv row has " + std::to_string(f.size()) + " fields, expected " + std::to_string(n));
}

double y_norm(const State8& s) { return std::sqrt(dot(s.x, s.x) + s.tbar * s.tbar); }
double u_norm(const State8& s) { return std::sqrt(dot(s.v, s.v) + s.gamma * s.gamma); }

// Runs fn(i) for i in [0, n) on up to worker_count() threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

// Reference step: min(h_list)/32, halved further until it is ≤ 2⁻¹⁴.
double reference_step(const std::vector<double>& h_list) {
  double h = *std::min_element(h_list.begin(), h_list.end()) / 32.0;
  while (h > 0x1p-14) h *= 0.5;
  return h;
}

}  // namespace

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::run:
      return "run";
    case Experiment::convergence:
      return "convergence";
    case Experiment::timing:
      return "timing";
    case Experiment::hamiltonian:
      return "hamiltonian";
  }
  return "unknown";
}

Experiment experiment_from_string(std::string_view name) {
  for (Experiment e : {Experiment::run, Experiment::convergence, Experiment::timing, Experiment::hamiltonian})
    if (to_string(e) == name) return e;
  throw UsageError("unknown experiment '" + std::string(name) + "'");
}

std::string_view to_string(RowStatus s) { return s == RowStatus::ok ? "ok" : "failed"; }

InitialCondition preset_ic(std::string_view name) {
  if (name == "I") return {"I", from_momentum({1.0 / 3.0, 1.0 / 4.0, 1.0 / 2.0}, 0.0, {2.0 / 5.0, 2.0 / 3.0, 1.0})};
  if (name == "II") return {"II", from_momentum({0.0, 1.0, 0.1}, 0.0, {0.09, 0.05, 0.2})};
  throw UsageError("unknown initial condition '" + std::string(name) + "' (expected I or II)");
}

ExperimentSpec default_spec(Experiment e) {
  ExperimentSpec spec;
  spec.experiment = e;
  spec.ic = preset_ic("I");
  spec.field = paper_field();
  switch (e) {
    case Experiment::run:
      spec.h_list = {0x1p-6};
      spec.methods = {Method::sei};
      break;
    case Experiment::hamiltonian:
      spec.ic = preset_ic("II");
      spec.h_list = {0x1p-6};
      spec.T = 1000.0;
      spec.methods = {Method::sei, Method::heun};
      break;
    case Experiment::convergence:
    case Experiment::timing:
      for (int j = 5; j <= 10; ++j) spec.h_list.push_back(std::ldexp(1.0, -j));
      spec.methods = {Method::sei, Method::heun};
      break;
  }
  return spec;
}

std::int64_t step_count(double h, double T) {
  const double ratio = T / h;
  const double n = std::round(ratio);
  if (std::abs(ratio - n) > 1e-9 * std::max(1.0, ratio))
    throw UsageError("h = " + format_double(h) + " does not divide T = " + format_double(T));
  return static_cast<std::int64_t>(n);
}

void validate(const ExperimentSpec& spec) {
  if (!spec.field) throw UsageError("no field model");
  if (spec.h_list.empty()) throw UsageError("h list is empty");
  if (spec.methods.empty()) throw UsageError("method list is empty");
  if (!(spec.T >= 0.0) || !std::isfinite(spec.T)) throw UsageError("T must be finite and >= 0");
  if (spec.stride < 0) throw UsageError("stride must be >= 0");
  if (spec.repetitions < 1) throw UsageError("repetitions must be >= 1");
  for (double h : spec.h_list) {
    if (!(h > 0.0 && h <= 1.0)) throw UsageError("h must be in (0,1]");
    step_count(h, spec.T);
  }
  if (!is_finite(spec.ic.state)) throw UsageError("initial state is not finite");
}

double err_U(const State8& num, const State8& exact) {
  const double ny = y_norm(exact);
  const double nu = u_norm(exact);
  if (!(ny > 0.0) || !(nu > 0.0)) throw UsageError("err_U: exact solution has a zero-norm block");
  const State8 d = num - exact;
  return y_norm(d) / ny + u_norm(d) / nu;
}

double fit_slope(std::span<const double> h, std::span<const double> err) {
  if (h.size() != err.size() || h.size() < 2) throw UsageError("slope fit needs >= 2 matching points");
  const std::size_t n = h.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log2(h[i]);
    const double ly = std::log2(err[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = static_cast<double>(n) * sxx - sx * sx;
  if (denom == 0.0) throw UsageError("slope fit needs distinct step sizes");
  return (static_cast<double>(n) * sxy - sx * sy) / denom;
}

unsigned worker_count() {
  if (const char* env = std::getenv("SEI_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Rows ----------------------------------------------------------------------

std::vector<std::string> ConvergenceRow::header() { return {"method", "ic", "h", "T", "steps", "err_u", "status"}; }

std::vector<std::string> ConvergenceRow::fields() const {
  return {std::string(to_string(method)), ic, format_double(h), format_double(T), std::to_string(steps),
          format_optional(err_u), std::string(to_string(status))};
}

ConvergenceRow ConvergenceRow::parse(const std::vector<std::string>& f) {
  expect_columns(f, 7);
  return {method_from_string(f[0]), f[1], parse_double(f[2]), parse_double(f[3]), parse_int(f[4]),
          parse_optional(f[5]), parse_status(f[6])};
}

std::vector<std::string> HamiltonianRow::header() { return {"method", "ic", "h", "tau", "rel_h_err", "status"}; }

std::vector<std::string> HamiltonianRow::fields() const {
  return {std::string(to_string(method)), ic, format_double(h), format_double(tau), format_optional(rel_h_err),
          std::string(to_string(status))};
}

HamiltonianRow HamiltonianRow::parse(const std::vector<std::string>& f) {
  expect_columns(f, 6);
  return {method_from_string(f[0]), f[1], parse_double(f[2]), parse_double(f[3]), parse_optional(f[4]),
          parse_status(f[5])};
}

std::vector<std::string> TimingRow::header() {
  return {"method", "ic", "h", "T", "steps", "err_u", "seconds", "evaluations", "status"};
}

std::vector<std::string> TimingRow::fields() const {
  return {std::string(to_string(method)), ic, format_double(h), format_double(T), std::to_string(steps),
          format_optional(err_u), format_double(seconds), std::to_string(evaluations),
          std::string(to_string(status))};
}

TimingRow TimingRow::parse(const std::vector<std::string>& f) {
  expect_columns(f, 9);
  return {method_from_string(f[0]), f[1], parse_double(f[2]), parse_double(f[3]), parse_int(f[4]),
          parse_optional(f[5]), parse_double(f[6]), parse_int(f[7]), parse_status(f[8])};
}

// Studies -------------------------------------------------------------------

ConvergenceReport convergence_study(const ExperimentSpec& spec) {
  validate(spec);
  const FieldModel& field = *spec.field;
  const State8& u0 = spec.ic.state;

  ConvergenceReport report;
  report.reference_h = reference_step(spec.h_list);

  std::optional<State8> exact;
  try {
    exact = reference_solve(field, u0, spec.T, report.reference_h);
    const State8 finer = reference_solve(field, u0, spec.T, 0.5 * report.reference_h);
    report.reference_discrepancy = err_U(*exact, finer);
  } catch (const DomainError&) {
    exact.reset();
    report.reference_discrepancy = std::numeric_limits<double>::infinity();
  }

  const std::size_t nh = spec.h_list.size();
  report.rows.resize(spec.methods.size() * nh);
  parallel_for(report.rows.size(), [&](std::size_t k) {
    const Method method = spec.methods[k / nh];
    const double h = spec.h_list[k % nh];
    ConvergenceRow& row = report.rows[k];
    row.method = method;
    row.ic = spec.ic.label;
    row.h = h;
    row.T = spec.T;
    row.steps = step_count(h, spec.T);
    if (!exact) {
      row.status = RowStatus::failed;
      return;
    }
    const StepperConfig cfg(h, row.steps, spec.field, u0.x);
    const TrajectorySummary run = integrate(cfg, u0, method);
    if (!run.ok) {
      row.status = RowStatus::failed;
      return;
    }
    row.err_u = err_U(run.final_state, *exact);
  });

  for (Method m : spec.methods) {
    MethodFit fit;
    std::vector<double> hs;
    std::vector<double> errs;
    bool all_tiny = true;
    for (const ConvergenceRow& r : report.rows) {
      if (r.method != m || r.status != RowStatus::ok) continue;
      ++fit.ok_rows;
      all_tiny = all_tiny && *r.err_u <= kExactTolerance;
      if (*r.err_u > 0.0) {
        hs.push_back(r.h);
        errs.push_back(*r.err_u);
      }
    }
    fit.exact = fit.ok_rows > 0 && all_tiny;
    if (!fit.exact && hs.size() >= 3) fit.slope = fit_slope(hs, errs);
    report.fits[m] = fit;
  }
  return report;
}

HamiltonianReport hamiltonian_study(const ExperimentSpec& spec) {
  validate(spec);
  if (!spec.field->has_potential()) throw ConfigError("field has no potential");
  const FieldModel& field = *spec.field;
  const State8& u0 = spec.ic.state;
  const double h = spec.h_list.front();
  const std::int64_t n = step_count(h, spec.T);
  const std::int64_t stride =
      spec.stride > 0 ? spec.stride : std::max<std::int64_t>(1, (n + kMaxHamiltonianSamples - 1) / kMaxHamiltonianSamples);

  HamiltonianReport report;
  report.h0 = hamiltonian(field, u0);
  if (report.h0 == 0.0) throw UsageError("initial Hamiltonian is zero; relative error undefined");

  for (Method method : spec.methods) {
    HamiltonianSummary summary;
    const StepperConfig cfg(h, n, spec.field, u0.x);
    const Observer observer = [&](std::int64_t step, double tau, const State8& s) {
      const double rel = std::abs((hamiltonian(field, s) - report.h0) / report.h0);
      summary.max_rel_err = std::max(summary.max_rel_err, rel);
      summary.final_rel_err = rel;
      summary.final_tau = tau;
      if (step % stride == 0 || step == n) report.rows.push_back({method, spec.ic.label, h, tau, rel, RowStatus::ok});
    };
    // Domain errors raised by the observer's Hamiltonian evaluation end the
    // run like any other field-domain failure.
    const TrajectorySummary run = integrate(cfg, u0, method, observer);
    if (!run.ok) {
      summary.ok = false;
      summary.failure = run.failure;
      const double tau = static_cast<double>(run.failed_step.value_or(0)) * h;
      report.rows.push_back({method, spec.ic.label, h, tau, std::nullopt, RowStatus::failed});
    }
    report.summaries[method] = summary;
  }
  return report;
}

TimingReport timing_study(const ExperimentSpec& spec) {
  validate(spec);
  const FieldModel& field = *spec.field;
  const State8& u0 = spec.ic.state;

  std::optional<State8> exact;
  try {
    exact = reference_solve(field, u0, spec.T, reference_step(spec.h_list));
  } catch (const DomainError&) {
  }

  TimingReport report;
  for (Method method : spec.methods) {
    for (double h : spec.h_list) {
      TimingRow row;
      row.method = method;
      row.ic = spec.ic.label;
      row.h = h;
      row.T = spec.T;
      row.steps = step_count(h, spec.T);
      const StepperConfig cfg(h, row.steps, spec.field, u0.x);
      std::vector<double> seconds;
      TrajectorySummary run;
      for (int r = 0; r < spec.repetitions; ++r) {
        run = integrate(cfg, u0, method);
        seconds.push_back(run.seconds);
        if (!run.ok) break;
      }
      std::sort(seconds.begin(), seconds.end());
      row.seconds = seconds[seconds.size() / 2];
      row.evaluations = run.field_evaluations;
      if (run.ok && exact) {
        row.err_u = err_U(run.final_state, *exact);
      } else {
        row.status = RowStatus::failed;
      }
      report.rows.push_back(row);
    }
  }
  return report;
}

std::vector<RunResult> run_study(const ExperimentSpec& spec) {
  validate(spec);
  const double h = spec.h_list.front();
  const StepperConfig cfg(h, step_count(h, spec.T), spec.field, spec.ic.state.x);
  std::vector<RunResult> out;
  for (Method m : spec.methods) out.push_back({m, integrate(cfg, spec.ic.state, m)});
  return out;
}

// CSV -----------------------------------------------------------------------

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw ConfigError("bad numeric field '" + std::string(s) + "'");
  return v;
}

std::string csv_join(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += fields[i];
  }
  line += '\n';
  return line;
}

std::vector<std::vector<std::string>> csv_split(std::string_view text) {
  std::vector<std::vector<std::string>> out;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      fields.emplace_back(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    out.push_back(std::move(fields));
  }
  return out;
}

}  // namespace sei
