#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "sei/dynamics.hpp"
#include "sei/so3kernels.hpp"
#include "sei/types.hpp"

namespace sei {

enum class Method { sei, heun };

std::string_view to_string(Method m);
Method method_from_string(std::string_view name);

/// Two-step state (Uⁿ⁺¹, Uⁿ) driving the symmetric recursion.
struct PairState {
  State8 current;
  State8 previous;
};

/// Fixed-step configuration. The linear part L is frozen at x0 for the whole
/// integration.
class StepperConfig {
 public:
  /// Throws UsageError unless h ∈ (0, 1] and num_steps ≥ 0.
  StepperConfig(double h, std::int64_t num_steps, FieldPtr field, const Vec3& x0);

  double h() const { return h_; }
  std::int64_t num_steps() const { return num_steps_; }
  const FieldModel& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  const Vec3& x0() const { return x0_; }
  const LinearPart& linear() const { return linear_; }

 private:
  double h_;
  std::int64_t num_steps_;
  FieldPtr field_;
  Vec3 x0_;
  LinearPart linear_;
};

/// Φ_h for an arbitrary finite (possibly negative) h:
///   Uⁿ⁺¹ = e^{2hL}Uⁿ⁻¹ + 2h·e^{hL}F(Uⁿ),  returned as (Uⁿ⁺¹, Uⁿ).
PairState sei_map(double h, const FieldModel& field, const LinearPart& lp, const PairState& p);

/// Starter U¹ = e^{hL}(U⁰ + h·F(U⁰)); returns (U¹, U⁰).
PairState sei_start(const StepperConfig& cfg, const State8& u0);

/// One step of the symmetric exponential integrator.
PairState sei_step(const StepperConfig& cfg, const PairState& p);

/// Full vector field f(U) = L·U + F(U) = (v, γ, v × B(x) + γE(x), E(x)·v).
/// Independent of the linearization point.
State8 vector_field(const FieldModel& field, const State8& s);

/// Explicit trapezoidal RK2 on f; two vector-field evaluations.
State8 heun_step(const FieldModel& field, const State8& s, double h);

/// Classical RK4 on f with step ≤ h_ref, used as the exact-solution oracle.
/// Throws UsageError if h_ref > 2⁻¹⁴ or T < 0.
State8 reference_solve(const FieldModel& field, const State8& u0, double T, double h_ref);

/// Called with (step index, proper time, state).
using Observer = std::function<void(std::int64_t, double, const State8&)>;

struct TrajectorySummary {
  State8 final_state;
  std::int64_t steps_completed = 0;
  /// Nonlinear field evaluations: F for sei, f for heun.
  std::int64_t field_evaluations = 0;
  double seconds = 0.0;
  bool ok = true;
  std::optional<std::int64_t> failed_step;
  std::string failure;
};

/// Runs cfg.num_steps() steps. The observer sees step 0, every `stride`-th
/// step and the final step. Field-domain errors and non-finite states end the
/// run with ok == false; the last good state is kept in final_state.
TrajectorySummary integrate(const StepperConfig& cfg, const State8& u0, Method method,
                            const Observer& observer = {}, std::int64_t stride = 1);

}  // namespace sei
