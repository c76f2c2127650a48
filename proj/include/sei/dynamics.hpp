#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "sei/so3kernels.hpp"
#include "sei/types.hpp"

namespace sei {

/// Field evaluated outside its domain (e.g. on the singular axis of the
/// benchmark potential).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Caller violated a precondition or supplied an invalid configuration.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Builds a physical state: v = p, γ = √(1 + |p|²).
State8 from_momentum(const Vec3& x, double tbar, const Vec3& p);

/// Static electromagnetic field. Implementations must be pure so a single
/// instance can be shared by concurrent trajectories.
class FieldModel {
 public:
  virtual ~FieldModel() = default;

  virtual Vec3 magnetic(const Vec3& x) const = 0;
  virtual Vec3 electric(const Vec3& x) const = 0;

  /// True when potential() is available and electric() == -∇potential().
  virtual bool has_potential() const { return false; }
  virtual double potential(const Vec3& x) const;

  virtual std::string name() const = 0;
};

using FieldPtr = std::shared_ptr<const FieldModel>;

/// Benchmark field:
///   B(x) = (cos x₂ − x₁, 1 + sin x₃, cos x₁ + x₃),
///   V(x) = (x₁² + x₂²)^{-1/2},  E = −∇V.
/// V and E throw DomainError when x₁² + x₂² < 1e-24.
FieldPtr paper_field();

/// Constant B and E. Carries no scalar potential.
FieldPtr uniform_field(const Vec3& b, const Vec3& e);

/// B ≡ 0, E ≡ 0, V ≡ 0.
FieldPtr zero_field();

/// Nonlinear remainder F(U) = (0, 0, G(x)u) in real coordinates:
/// velocity part v × (B(x) − B(x0)) + γE(x), γ part E(x)·v.
State8 eval_F(const FieldModel& field, const Vec3& x0, const State8& s);

/// Same as above with B(x0) taken from the frozen linear part.
State8 eval_F(const FieldModel& field, const LinearPart& lp, const State8& s);

/// H = V(x) + γ. Throws UsageError when the field has no potential.
double hamiltonian(const FieldModel& field, const State8& s);

/// γ² − |v|² − 1; zero along exact trajectories.
double minkowski_defect(const State8& s);

}  // namespace sei
