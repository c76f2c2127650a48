// Command-line driver. Merges an optional JSON config with flag overrides and
// hands the resulting experiment document to the C API.
//
// Exit codes: 0 success, 1 failed trajectory or gate, 2 usage error,
// 3 unreadable/invalid config or unsupported field.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "sei/sei.h"

namespace {

using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitConfig = 3;

struct Overrides {
  std::string config_path;
  std::string ic;
  std::string method;
  std::vector<double> h;
  std::optional<double> T;
  std::string out;
  std::string field;
};

void add_common_flags(CLI::App* cmd, Overrides& o, const char* h_default, const char* T_default,
                      const char* method_default, const char* ic_default) {
  cmd->add_option("--config", o.config_path, "JSON experiment document; flags override its keys")
      ->default_str("none");
  cmd->add_option("--ic", o.ic, "Initial condition preset")->check(CLI::IsMember({"I", "II"}))->default_str(ic_default);
  cmd->add_option("--method", o.method, "Integrator")
      ->check(CLI::IsMember({"sei", "heun", "both"}))
      ->default_str(method_default);
  cmd->add_option("--h", o.h, "Proper-time step size(s), repeatable or comma separated")
      ->delimiter(',')
      ->default_str(h_default);
  cmd->add_option("--T", o.T, "Final proper time")->default_str(T_default);
  cmd->add_option("--out", o.out, "Output file (CSV for studies, JSON for run)")->default_str("stdout");
  cmd->add_option("--field", o.field, "Field model")
      ->check(CLI::IsMember({"paper", "uniform", "zero"}))
      ->default_str("paper");
}

// Returns the merged experiment document, or an exit code on failure.
std::optional<json> build_document(const std::string& experiment, const Overrides& o, int& exit_code) {
  json doc = json::object();
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) {
      std::cerr << "error: cannot read config '" << o.config_path << "'\n";
      exit_code = kExitConfig;
      return std::nullopt;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    doc = json::parse(buf.str(), nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
      std::cerr << "error: config '" << o.config_path << "' is not a JSON object\n";
      exit_code = kExitConfig;
      return std::nullopt;
    }
  }
  doc["experiment"] = experiment;
  if (!o.ic.empty()) doc["ic"] = o.ic;
  if (!o.method.empty()) {
    doc.erase("methods");
    doc["method"] = o.method;
  }
  if (!o.h.empty()) {
    doc.erase("h");
    doc["h_list"] = o.h;
  }
  if (o.T) doc["T"] = *o.T;
  if (!o.out.empty()) doc["output_path"] = o.out;
  if (!o.field.empty()) doc["field"] = o.field;
  return doc;
}

int exit_code_for(sei_status s) {
  switch (s) {
    case SEI_OK:
      return kExitOk;
    case SEI_E_INVALID_ARGUMENT:
      return kExitUsage;
    case SEI_E_CONFIG:
      return kExitConfig;
    default:
      return kExitFailed;
  }
}

bool write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  return static_cast<bool>(f);
}

// One-line reason for a failed gate, read back from the report summary.
std::string gate_diagnostic(const std::string& experiment, const json& summary) {
  if (experiment == "convergence" && summary.contains("fits")) {
    std::string msg;
    for (const auto& [method, fit] : summary["fits"].items()) {
      if (fit["slope"].is_number()) {
        const double slope = fit["slope"].get<double>();
        if (slope < 1.85 || slope > 2.15)
          msg += method + " slope " + std::to_string(slope) + " outside [1.85, 2.15]; ";
      }
    }
    if (!msg.empty()) return "convergence gate failed: " + msg.substr(0, msg.size() - 2);
  }
  return experiment + ": one or more trajectories failed";
}

int run_experiment(const std::string& experiment, const Overrides& o) {
  int code = kExitOk;
  const auto doc = build_document(experiment, o, code);
  if (!doc) return code;

  sei_report* report = nullptr;
  const sei_status st = sei_experiment_run(doc->dump().c_str(), &report);
  if (st != SEI_OK) {
    std::cerr << "error: " << sei_last_error() << "\n";
    return exit_code_for(st);
  }

  const std::string summary = sei_report_summary(report);
  const std::string csv = sei_report_csv(report);
  const std::string path = sei_report_output_path(report);
  const bool passed = sei_report_passed(report) != 0;
  sei_report_destroy(report);

  if (experiment == "run") {
    if (!path.empty() && !write_text(path, summary + "\n")) {
      std::cerr << "error: cannot write '" << path << "'\n";
      return kExitFailed;
    }
    std::cout << summary << "\n";
  } else if (!path.empty()) {
    if (!write_text(path, csv)) {
      std::cerr << "error: cannot write '" << path << "'\n";
      return kExitFailed;
    }
    std::cout << summary << "\n";
  } else {
    std::cout << csv;
    std::cerr << summary << "\n";
  }

  if (!passed) {
    std::cerr << gate_diagnostic(experiment, json::parse(summary)) << "\n";
    return kExitFailed;
  }
  return kExitOk;
}

int run_selftest() {
  sei_report* report = nullptr;
  const sei_status st = sei_selftest(&report);
  if (st != SEI_OK) {
    std::cerr << "error: " << sei_last_error() << "\n";
    return exit_code_for(st);
  }
  const json summary = json::parse(sei_report_summary(report));
  const bool passed = sei_report_passed(report) != 0;
  sei_report_destroy(report);
  for (const json& c : summary["selftest"]) {
    std::printf("%s  %-28s worst %.3e  tol %.0e\n", c["passed"].get<bool>() ? "PASS" : "FAIL",
                c["name"].get<std::string>().c_str(), c["worst"].get<double>(), c["tolerance"].get<double>());
  }
  return passed ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetric exponential integrator for relativistic charged-particle dynamics"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");

  Overrides run_o, conv_o, ham_o, tim_o;
  auto* run = app.add_subcommand("run", "Integrate one trajectory and print the final state as JSON");
  add_common_flags(run, run_o, "0.015625", "1", "sei", "I");
  auto* conv = app.add_subcommand("convergence", "Global error at T against a reference solution, with slope fit");
  add_common_flags(conv, conv_o, "2^-5..2^-10", "1", "both", "I");
  auto* ham = app.add_subcommand("hamiltonian", "Relative Hamiltonian error along a long trajectory");
  add_common_flags(ham, ham_o, "0.015625", "1000", "both", "II");
  auto* tim = app.add_subcommand("timing", "Wall-clock time and field-evaluation counts per method");
  add_common_flags(tim, tim_o, "2^-5..2^-10", "1", "both", "I");
  app.add_subcommand("selftest", "Run the built-in invariant checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (sei_abi_version() != SEI_ABI_VERSION) {
    std::cerr << "error: library ABI mismatch\n";
    return kExitFailed;
  }

  if (run->parsed()) return run_experiment("run", run_o);
  if (conv->parsed()) return run_experiment("convergence", conv_o);
  if (ham->parsed()) return run_experiment("hamiltonian", ham_o);
  if (tim->parsed()) return run_experiment("timing", tim_o);
  return run_selftest();
}
