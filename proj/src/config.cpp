#include "sei/config.hpp"

#include <set>

#include <nlohmann/json.hpp>

namespace sei {

namespace {

using json = nlohmann::json;

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
}

Vec3 vec3(const json& j, const char* key) {
  if (!j.is_array() || j.size() != 3) throw ConfigError(std::string("'") + key + "' must be an array of 3 numbers");
  Vec3 v;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!j[i].is_number()) throw ConfigError(std::string("'") + key + "' must be an array of 3 numbers");
    v[i] = j[i].get<double>();
  }
  return v;
}

double number(const json& j, const char* key) {
  if (!j.is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  return j.get<double>();
}

std::string string(const json& j, const char* key) {
  if (!j.is_string()) throw ConfigError(std::string("'") + key + "' must be a string");
  return j.get<std::string>();
}

FieldPtr field_from_object(const json& doc) {
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
  const std::string kind = doc.contains("field") ? string(doc["field"], "field") : "paper";
  if (kind == "paper") return paper_field();
  if (kind == "zero") return zero_field();
  if (kind == "uniform") {
    const Vec3 b = doc.contains("B") ? vec3(doc["B"], "B") : Vec3{};
    const Vec3 e = doc.contains("E") ? vec3(doc["E"], "E") : Vec3{};
    return uniform_field(b, e);
  }
  throw ConfigError("unknown field '" + kind + "' (expected paper, uniform or zero)");
}

// Unknown names in a document are configuration errors, not usage errors.
template <class Fn>
auto by_name(Fn&& fn) {
  try {
    return fn();
  } catch (const UsageError& e) {
    throw ConfigError(e.what());
  }
}

std::vector<Method> methods_from(const json& doc) {
  if (doc.contains("method")) {
    const std::string m = string(doc["method"], "method");
    if (m == "both") return {Method::sei, Method::heun};
    return {by_name([&] { return method_from_string(m); })};
  }
  const json& list = doc["methods"];
  if (!list.is_array()) throw ConfigError("'methods' must be an array of strings");
  std::vector<Method> out;
  for (const json& m : list) out.push_back(by_name([&] { return method_from_string(string(m, "methods")); }));
  return out;
}

json state_json(const State8& s) {
  return {{"x", {s.x.x, s.x.y, s.x.z}}, {"tbar", s.tbar}, {"v", {s.v.x, s.v.y, s.v.z}}, {"gamma", s.gamma}};
}

json base_summary(const ExperimentSpec& spec) {
  json methods = json::array();
  for (Method m : spec.methods) methods.push_back(std::string(to_string(m)));
  return {{"experiment", std::string(to_string(spec.experiment))},
          {"ic", spec.ic.label},
          {"field", spec.field->name()},
          {"T", spec.T},
          {"h_list", spec.h_list},
          {"methods", methods}};
}

}  // namespace

FieldPtr field_from_json(std::string_view json_text) { return field_from_object(parse(json_text)); }

ExperimentSpec spec_from_json(std::string_view json_text) {
  static const std::set<std::string> known = {"experiment", "ic",    "h_list", "h",     "T", "methods",
                                              "method",     "output_path", "field", "B", "E", "stride",
                                              "repetitions"};
  const json doc = parse(json_text);
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
  for (const auto& [key, value] : doc.items())
    if (!known.contains(key)) throw ConfigError("unknown configuration key '" + key + "'");

  const Experiment experiment =
      doc.contains("experiment")
          ? by_name([&] { return experiment_from_string(string(doc["experiment"], "experiment")); })
          : Experiment::convergence;
  ExperimentSpec spec = default_spec(experiment);
  spec.field = field_from_object(doc);

  if (doc.contains("ic")) {
    const json& ic = doc["ic"];
    if (ic.is_string()) {
      spec.ic = by_name([&] { return preset_ic(ic.get<std::string>()); });
    } else if (ic.is_object()) {
      for (const auto& [key, value] : ic.items())
        if (key != "x" && key != "p" && key != "tbar") throw ConfigError("unknown ic key '" + key + "'");
      if (!ic.contains("x") || !ic.contains("p")) throw ConfigError("custom ic needs 'x' and 'p'");
      const double tbar = ic.contains("tbar") ? number(ic["tbar"], "tbar") : 0.0;
      spec.ic = {"custom", from_momentum(vec3(ic["x"], "x"), tbar, vec3(ic["p"], "p"))};
    } else {
      throw ConfigError("'ic' must be \"I\", \"II\" or an object");
    }
  }
  if (doc.contains("h_list") && doc.contains("h")) throw ConfigError("give either 'h' or 'h_list', not both");
  if (doc.contains("h_list")) {
    const json& list = doc["h_list"];
    if (!list.is_array()) throw ConfigError("'h_list' must be an array of numbers");
    spec.h_list.clear();
    for (const json& h : list) spec.h_list.push_back(number(h, "h_list"));
  }
  if (doc.contains("h")) spec.h_list = {number(doc["h"], "h")};
  if (doc.contains("T")) spec.T = number(doc["T"], "T");
  if (doc.contains("method") || doc.contains("methods")) spec.methods = methods_from(doc);
  if (doc.contains("output_path")) spec.output_path = string(doc["output_path"], "output_path");
  if (doc.contains("stride")) {
    if (!doc["stride"].is_number_integer()) throw ConfigError("'stride' must be an integer");
    spec.stride = doc["stride"].get<std::int64_t>();
  }
  if (doc.contains("repetitions")) {
    if (!doc["repetitions"].is_number_integer()) throw ConfigError("'repetitions' must be an integer");
    spec.repetitions = doc["repetitions"].get<int>();
  }
  validate(spec);
  return spec;
}

std::string summary_json(const ExperimentSpec& spec, const ConvergenceReport& r) {
  json out = base_summary(spec);
  out["reference_h"] = r.reference_h;
  out["reference_discrepancy"] = r.reference_discrepancy;
  json fits = json::object();
  for (const auto& [m, fit] : r.fits) {
    json f = {{"ok_rows", fit.ok_rows}, {"exact", fit.exact}};
    f["slope"] = fit.slope ? json(*fit.slope) : json(nullptr);
    fits[std::string(to_string(m))] = f;
  }
  out["fits"] = fits;
  return out.dump(2);
}

std::string summary_json(const ExperimentSpec& spec, const HamiltonianReport& r) {
  json out = base_summary(spec);
  out["H0"] = r.h0;
  json per = json::object();
  for (const auto& [m, s] : r.summaries) {
    json e = {{"max_rel_err", s.max_rel_err},
              {"final_rel_err", s.final_rel_err},
              {"final_tau", s.final_tau},
              {"status", s.ok ? "ok" : "failed"}};
    if (!s.ok) e["failure"] = s.failure;
    per[std::string(to_string(m))] = e;
  }
  out["methods_summary"] = per;
  return out.dump(2);
}

std::string summary_json(const ExperimentSpec& spec, const TimingReport& r) {
  json out = base_summary(spec);
  json rows = json::array();
  for (const TimingRow& row : r.rows) {
    rows.push_back({{"method", std::string(to_string(row.method))},
                    {"h", row.h},
                    {"seconds", row.seconds},
                    {"evaluations", row.evaluations},
                    {"status", std::string(to_string(row.status))}});
  }
  out["rows"] = rows;
  return out.dump(2);
}

std::string summary_json(const ExperimentSpec& spec, const std::vector<RunResult>& r) {
  json out = base_summary(spec);
  json runs = json::array();
  for (const RunResult& run : r) {
    const TrajectorySummary& t = run.trajectory;
    json e = {{"method", std::string(to_string(run.method))},
              {"h", spec.h_list.front()},
              {"steps", t.steps_completed},
              {"final_state", state_json(t.final_state)},
              {"field_evaluations", t.field_evaluations},
              {"seconds", t.seconds},
              {"minkowski_defect", minkowski_defect(t.final_state)},
              {"status", t.ok ? "ok" : "failed"}};
    if (spec.field->has_potential()) {
      try {
        e["hamiltonian"] = hamiltonian(*spec.field, t.final_state);
      } catch (const DomainError&) {
        e["hamiltonian"] = nullptr;
      }
    }
    if (!t.ok) e["failure"] = t.failure;
    runs.push_back(e);
  }
  out["trajectories"] = runs;
  return out.dump(2);
}

}  // namespace sei
