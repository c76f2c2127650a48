#pragma once

#include <array>
#include <complex>

#include "sei/dynamics.hpp"
#include "sei/types.hpp"

// Independent reference routes used by the self-test and the test suites.
// Nothing in here is called by the integrators.
namespace sei::oracle {

using cplx = std::complex<double>;
using CMat4 = std::array<std::array<cplx, 4>, 4>;

/// exp(t·A) by scaling and squaring a truncated Taylor series.
Mat3 exp_series(double t, const Mat3& a, int terms = 30);

/// State in the original complex spacetime variables (x, t, v, w).
struct ComplexState8 {
  std::array<cplx, 8> c{};
};

/// t = i·t̄, w = i·γ.
ComplexState8 to_complex(const State8& s);

/// Inverse of to_complex; takes real parts of x, v and imaginary parts of t, w.
State8 from_complex(const ComplexState8& z);

/// B̂(x) as the 4x4 matrix acting on (v, w).
CMat4 b_hat(const Vec3& b);

/// Ê(x) as the 4x4 matrix acting on (v, w), with the ±i entries.
CMat4 e_hat(const Vec3& e);

/// F(U) = (0, 0, G(x)u) with G(x) = B̂(x) − B̂(x0) + Ê(x), all complex.
ComplexState8 complex_F(const FieldModel& field, const Vec3& x0, const ComplexState8& u);

/// Complex right-hand side of the 4D equations of motion.
ComplexState8 complex_rhs(const FieldModel& field, const ComplexState8& u);

/// Classical RK4 on the complex system with n equal steps.
ComplexState8 complex_rk4(const FieldModel& field, const ComplexState8& u0, double T, long n);

}  // namespace sei::oracle
