#include "sei/integrators.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <utility>

namespace sei {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::sei:
      return "sei";
    case Method::heun:
      return "heun";
  }
  return "unknown";
}

Method method_from_string(std::string_view name) {
  if (name == "sei") return Method::sei;
  if (name == "heun") return Method::heun;
  throw UsageError("unknown method '" + std::string(name) + "' (expected sei or heun)");
}

StepperConfig::StepperConfig(double h, std::int64_t num_steps, FieldPtr field, const Vec3& x0)
    : h_(h), num_steps_(num_steps), field_(std::move(field)), x0_(x0) {
  if (!(h > 0.0 && h <= 1.0)) throw UsageError("h must be in (0,1]");
  if (num_steps < 0) throw UsageError("num_steps must be non-negative");
  if (!field_) throw UsageError("no field model given");
  linear_ = LinearPart(field_->magnetic(x0_));
}

PairState sei_map(double h, const FieldModel& field, const LinearPart& lp, const PairState& p) {
  const State8 f = eval_F(field, lp, p.current);
  const State8 next = exp_hL_apply(2.0 * h, lp, p.previous) + (2.0 * h) * exp_hL_apply(h, lp, f);
  return {next, p.current};
}

PairState sei_start(const StepperConfig& cfg, const State8& u0) {
  const double h = cfg.h();
  const State8 f = eval_F(cfg.field(), cfg.linear(), u0);
  return {exp_hL_apply(h, cfg.linear(), u0 + h * f), u0};
}

PairState sei_step(const StepperConfig& cfg, const PairState& p) {
  return sei_map(cfg.h(), cfg.field(), cfg.linear(), p);
}

State8 vector_field(const FieldModel& field, const State8& s) {
  const Vec3 b = field.magnetic(s.x);
  const Vec3 e = field.electric(s.x);
  return {s.v, s.gamma, cross(s.v, b) + s.gamma * e, dot(e, s.v)};
}

State8 heun_step(const FieldModel& field, const State8& s, double h) {
  const State8 k1 = vector_field(field, s);
  const State8 k2 = vector_field(field, s + h * k1);
  return s + (0.5 * h) * (k1 + k2);
}

State8 reference_solve(const FieldModel& field, const State8& u0, double T, double h_ref) {
  if (!(h_ref > 0.0 && h_ref <= 0x1p-14)) throw UsageError("reference step must be in (0, 2^-14]");
  if (!(T >= 0.0) || !std::isfinite(T)) throw UsageError("reference horizon must be finite and >= 0");
  if (T == 0.0) return u0;
  const auto n = static_cast<std::int64_t>(std::ceil(T / h_ref * (1.0 - 1e-12)));
  const double h = T / static_cast<double>(n);
  State8 s = u0;
  // Kahan-compensated accumulation of the increments.
  std::array<double, 8> comp{};
  for (std::int64_t i = 0; i < n; ++i) {
    const State8 k1 = vector_field(field, s);
    const State8 k2 = vector_field(field, s + (0.5 * h) * k1);
    const State8 k3 = vector_field(field, s + (0.5 * h) * k2);
    const State8 k4 = vector_field(field, s + h * k3);
    const auto inc = ((h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)).to_array();
    auto acc = s.to_array();
    for (std::size_t k = 0; k < 8; ++k) {
      const double y = inc[k] - comp[k];
      const double t = acc[k] + y;
      comp[k] = (t - acc[k]) - y;
      acc[k] = t;
    }
    s = State8::from_array(acc);
  }
  return s;
}

TrajectorySummary integrate(const StepperConfig& cfg, const State8& u0, Method method,
                            const Observer& observer, std::int64_t stride) {
  if (stride < 1) throw UsageError("observer stride must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  const std::int64_t n = cfg.num_steps();
  const double h = cfg.h();

  TrajectorySummary out;
  out.final_state = u0;

  auto emit = [&](std::int64_t step, const State8& s) {
    if (observer && (step % stride == 0 || step == n)) observer(step, static_cast<double>(step) * h, s);
  };
  emit(0, u0);

  PairState pair{u0, u0};
  State8 state = u0;
  std::int64_t step = 0;
  try {
    for (step = 1; step <= n; ++step) {
      if (method == Method::sei) {
        pair = step == 1 ? sei_start(cfg, u0) : sei_step(cfg, pair);
        out.field_evaluations += 1;
        state = pair.current;
      } else {
        state = heun_step(cfg.field(), state, h);
        out.field_evaluations += 2;
      }
      if (!is_finite(state)) {
        out.ok = false;
        out.failed_step = step;
        out.failure = "non-finite state at step " + std::to_string(step);
        break;
      }
      out.final_state = state;
      out.steps_completed = step;
      emit(step, state);
    }
  } catch (const DomainError& e) {
    out.ok = false;
    out.failed_step = step;
    out.failure = std::string(e.what()) + " at step " + std::to_string(step);
  }

  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace sei
