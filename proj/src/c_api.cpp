#include "sei/sei.h"

#include <fstream>
#include <memory>
#include <new>
#include <string>

#include <nlohmann/json.hpp>

#include "sei/config.hpp"
#include "sei/dynamics.hpp"
#include "sei/harness.hpp"
#include "sei/integrators.hpp"
#include "sei/selftest.hpp"

struct sei_field {
  sei::FieldPtr model;
};

struct sei_report {
  std::string csv;
  std::string summary;
  std::string output_path;
  bool passed = true;
};

namespace {

thread_local std::string g_last_error;

sei_status fail(sei_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

// Maps the library's exception types onto status codes.
template <class Fn>
sei_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return SEI_OK;
  } catch (const sei::UsageError& e) {
    return fail(SEI_E_INVALID_ARGUMENT, e.what());
  } catch (const sei::DomainError& e) {
    return fail(SEI_E_DOMAIN, e.what());
  } catch (const sei::ConfigError& e) {
    return fail(SEI_E_CONFIG, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SEI_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SEI_E_INTERNAL, e.what());
  } catch (...) {
    return fail(SEI_E_INTERNAL, "unknown error");
  }
}

sei::Vec3 vec(const double* a) { return {a[0], a[1], a[2]}; }

sei::State8 to_cpp(const sei_state& s) { return {vec(s.x), s.tbar, vec(s.v), s.gamma}; }

sei_state to_c(const sei::State8& s) {
  return {{s.x.x, s.x.y, s.x.z}, s.tbar, {s.v.x, s.v.y, s.v.z}, s.gamma};
}

void require(bool cond, const char* what) {
  if (!cond) throw sei::UsageError(what);
}

sei_status make_field(sei::FieldPtr model, sei_field** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = new sei_field{std::move(model)};
  });
}

bool slopes_pass(const sei::ConvergenceReport& r) {
  for (const auto& [m, fit] : r.fits)
    if (fit.slope && (*fit.slope < sei::kSlopeMin || *fit.slope > sei::kSlopeMax)) return false;
  return true;
}

template <class Rows>
bool rows_ok(const Rows& rows) {
  for (const auto& row : rows)
    if (row.status != sei::RowStatus::ok) return false;
  return true;
}

}  // namespace

extern "C" {

uint32_t sei_abi_version(void) { return SEI_ABI_VERSION; }

const char* sei_last_error(void) { return g_last_error.c_str(); }

sei_status sei_field_create_paper(sei_field** out) { return make_field(sei::paper_field(), out); }

sei_status sei_field_create_uniform(const double b[3], const double e[3], sei_field** out) {
  if (!b || !e) return fail(SEI_E_INVALID_ARGUMENT, "null field vector");
  return make_field(sei::uniform_field(vec(b), vec(e)), out);
}

sei_status sei_field_create_zero(sei_field** out) { return make_field(sei::zero_field(), out); }

sei_status sei_field_create_json(const char* json, sei_field** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "null argument");
    *out = new sei_field{sei::field_from_json(json)};
  });
}

void sei_field_destroy(sei_field* field) { delete field; }

int sei_field_has_potential(const sei_field* field) { return field && field->model->has_potential() ? 1 : 0; }

sei_status sei_state_from_momentum(const double x[3], double tbar, const double p[3], sei_state* out) {
  return guarded([&] {
    require(x && p && out, "null argument");
    *out = to_c(sei::from_momentum(vec(x), tbar, vec(p)));
  });
}

sei_status sei_state_preset(const char* name, sei_state* out) {
  return guarded([&] {
    require(name && out, "null argument");
    *out = to_c(sei::preset_ic(name).state);
  });
}

sei_status sei_hamiltonian(const sei_field* field, const sei_state* s, double* out) {
  return guarded([&] {
    require(field && s && out, "null argument");
    if (!field->model->has_potential()) throw sei::ConfigError("field has no potential");
    *out = sei::hamiltonian(*field->model, to_cpp(*s));
  });
}

double sei_minkowski_defect(const sei_state* s) { return s ? sei::minkowski_defect(to_cpp(*s)) : 0.0; }

sei_status sei_integrate(const sei_field* field, const sei_state* u0, double h, int64_t num_steps,
                         sei_method method, sei_trajectory* out) {
  return guarded([&] {
    require(field && u0 && out, "null argument");
    require(method == SEI_METHOD_SEI || method == SEI_METHOD_HEUN, "unknown method");
    const sei::State8 start = to_cpp(*u0);
    const sei::StepperConfig cfg(h, num_steps, field->model, start.x);
    const sei::TrajectorySummary t =
        sei::integrate(cfg, start, method == SEI_METHOD_SEI ? sei::Method::sei : sei::Method::heun);
    *out = {to_c(t.final_state), t.steps_completed, t.field_evaluations, t.seconds, t.ok ? 1 : 0};
    if (!t.ok) g_last_error = t.failure;
  });
}

sei_status sei_reference_solve(const sei_field* field, const sei_state* u0, double T, double h_ref,
                               sei_state* out) {
  return guarded([&] {
    require(field && u0 && out, "null argument");
    *out = to_c(sei::reference_solve(*field->model, to_cpp(*u0), T, h_ref));
  });
}

sei_status sei_err_u(const sei_state* num, const sei_state* exact, double* out) {
  return guarded([&] {
    require(num && exact && out, "null argument");
    *out = sei::err_U(to_cpp(*num), to_cpp(*exact));
  });
}

sei_status sei_experiment_run(const char* spec_json, sei_report** out) {
  return guarded([&] {
    require(spec_json && out, "null argument");
    const sei::ExperimentSpec spec = sei::spec_from_json(spec_json);
    auto report = std::make_unique<sei_report>();
    report->output_path = spec.output_path;
    switch (spec.experiment) {
      case sei::Experiment::run: {
        const auto runs = sei::run_study(spec);
        report->summary = sei::summary_json(spec, runs);
        for (const auto& r : runs) report->passed = report->passed && r.trajectory.ok;
        break;
      }
      case sei::Experiment::convergence: {
        const auto r = sei::convergence_study(spec);
        report->csv = sei::to_csv<sei::ConvergenceRow>(r.rows);
        report->summary = sei::summary_json(spec, r);
        report->passed = rows_ok(r.rows) && slopes_pass(r);
        break;
      }
      case sei::Experiment::timing: {
        const auto r = sei::timing_study(spec);
        report->csv = sei::to_csv<sei::TimingRow>(r.rows);
        report->summary = sei::summary_json(spec, r);
        report->passed = rows_ok(r.rows);
        break;
      }
      case sei::Experiment::hamiltonian: {
        const auto r = sei::hamiltonian_study(spec);
        report->csv = sei::to_csv<sei::HamiltonianRow>(r.rows);
        report->summary = sei::summary_json(spec, r);
        report->passed = rows_ok(r.rows);
        break;
      }
    }
    *out = report.release();
  });
}

sei_status sei_selftest(sei_report** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    auto report = std::make_unique<sei_report>();
    nlohmann::json checks = nlohmann::json::array();
    for (const sei::CheckResult& c : sei::run_selftest()) {
      checks.push_back({{"name", c.name}, {"passed", c.passed}, {"worst", c.worst}, {"tolerance", c.tolerance}});
      report->passed = report->passed && c.passed;
    }
    report->summary = nlohmann::json{{"selftest", checks}, {"passed", report->passed}}.dump(2);
    *out = report.release();
  });
}

const char* sei_report_csv(const sei_report* report) { return report ? report->csv.c_str() : ""; }

const char* sei_report_summary(const sei_report* report) { return report ? report->summary.c_str() : ""; }

const char* sei_report_output_path(const sei_report* report) { return report ? report->output_path.c_str() : ""; }

int sei_report_passed(const sei_report* report) { return report && report->passed ? 1 : 0; }

sei_status sei_report_write_csv(const sei_report* report, const char* path) {
  if (!report || !path) return fail(SEI_E_INVALID_ARGUMENT, "null argument");
  std::ofstream file(path, std::ios::binary);
  if (!file) return fail(SEI_E_IO, std::string("cannot open '") + path + "' for writing");
  file << report->csv;
  file.close();
  if (!file) return fail(SEI_E_IO, std::string("failed writing '") + path + "'");
  return SEI_OK;
}

void sei_report_destroy(sei_report* report) { delete report; }

}  // extern "C"
