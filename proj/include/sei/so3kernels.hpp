#pragma once

#include "sei/types.hpp"

namespace sei {

/// Below this value of |tθ| the Rodrigues coefficients are evaluated from
/// their Taylor expansions instead of sin/cos.
inline constexpr double kSmallAngle = 1e-4;

/// Skew generator with rows (0, b3, -b2), (-b3, 0, b1), (b2, -b1, 0), so that
/// hat(b) * v == cross(v, b).
Mat3 hat(const Vec3& b);

/// Frozen linearization data for the linear part L, built from the magnetic
/// field at the linearization point. Immutable once constructed.
class LinearPart {
 public:
  LinearPart() : LinearPart(Vec3{}) {}
  explicit LinearPart(const Vec3& b0);

  const Vec3& b0() const { return b0_; }
  double theta() const { return theta_; }
  const Mat3& s() const { return s_; }
  const Mat3& s2() const { return s2_; }

 private:
  Vec3 b0_;
  double theta_;
  Mat3 s_;
  Mat3 s2_;
};

/// exp(tS) via the Rodrigues formula.
Mat3 exp_so3(double t, const LinearPart& lp);

/// φ₁(tS) = ∫₀¹ exp(σtS) dσ in closed form.
Mat3 phi1_so3(double t, const LinearPart& lp);

/// Applies the block exponential e^{hL} to a state without forming the 8x8
/// matrix:
///   x ← x + h·φ₁(hS)·v,   t̄ ← t̄ + h·γ,   v ← e^{hS}·v,   γ ← γ.
State8 exp_hL_apply(double h, const LinearPart& lp, const State8& u);

/// L·U for the same frozen linear part: (v, γ, S·v, 0).
State8 apply_L(const LinearPart& lp, const State8& u);

}  // namespace sei
