#include "sei/so3kernels.hpp"

#include <cmath>

namespace sei {

namespace {

// Coefficients (a, b) of I + a·S + b·S².
struct Coeffs {
  double a;
  double b;
};

Mat3 combine(const LinearPart& lp, Coeffs c) {
  return Mat3::identity() + c.a * lp.s() + c.b * lp.s2();
}

}  // namespace

Mat3 hat(const Vec3& b) {
  return Mat3{{0.0, b.z, -b.y,
               -b.z, 0.0, b.x,
               b.y, -b.x, 0.0}};
}

LinearPart::LinearPart(const Vec3& b0)
    : b0_(b0), theta_(std::sqrt(dot(b0, b0))), s_(hat(b0)), s2_(s_ * s_) {}

Mat3 exp_so3(double t, const LinearPart& lp) {
  const double theta = lp.theta();
  const double angle = t * theta;
  if (std::abs(angle) < kSmallAngle) {
    const double a2 = angle * angle;
    return combine(lp, {t * (1.0 - a2 / 6.0 + a2 * a2 / 120.0),
                        t * t * (0.5 - a2 / 24.0 + a2 * a2 / 720.0)});
  }
  // 1 - cos(x) = 2 sin²(x/2) avoids cancellation near the threshold.
  const double half = std::sin(0.5 * angle);
  return combine(lp, {std::sin(angle) / theta, 2.0 * half * half / (theta * theta)});
}

Mat3 phi1_so3(double t, const LinearPart& lp) {
  const double theta = lp.theta();
  const double angle = t * theta;
  if (std::abs(angle) < kSmallAngle) {
    const double a2 = angle * angle;
    return combine(lp, {t * (0.5 - a2 / 24.0 + a2 * a2 / 720.0),
                        t * t * (1.0 / 6.0 - a2 / 120.0 + a2 * a2 / 5040.0)});
  }
  const double half = std::sin(0.5 * angle);
  const double theta2 = theta * theta;
  return combine(lp, {2.0 * half * half / (t * theta2),
                      (1.0 - std::sin(angle) / angle) / theta2});
}

State8 exp_hL_apply(double h, const LinearPart& lp, const State8& u) {
  const Mat3 rot = exp_so3(h, lp);
  const Mat3 phi = phi1_so3(h, lp);
  State8 out;
  out.x = u.x + h * (phi * u.v);
  out.tbar = u.tbar + h * u.gamma;
  out.v = rot * u.v;
  out.gamma = u.gamma;
  return out;
}

State8 apply_L(const LinearPart& lp, const State8& u) {
  return {u.v, u.gamma, lp.s() * u.v, 0.0};
}

}  // namespace sei
