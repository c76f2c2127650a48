#include "sei/oracle.hpp"

#include <cmath>

namespace sei::oracle {

namespace {

constexpr cplx kI{0.0, 1.0};

std::array<cplx, 4> mat_vec(const CMat4& m, const std::array<cplx, 4>& u) {
  std::array<cplx, 4> r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i] += m[i][j] * u[j];
  return r;
}

ComplexState8 axpy(double a, const ComplexState8& x, const ComplexState8& y) {
  ComplexState8 r;
  for (int k = 0; k < 8; ++k) r.c[k] = a * x.c[k] + y.c[k];
  return r;
}

}  // namespace

Mat3 exp_series(double t, const Mat3& a, int terms) {
  Mat3 scaled = t * a;
  double size = 0.0;
  for (double e : scaled.m) size = std::max(size, std::abs(e));
  int squarings = 0;
  while (3.0 * size > 0.5) {
    size *= 0.5;
    ++squarings;
  }
  scaled = std::ldexp(1.0, -squarings) * scaled;

  // Horner evaluation of Σ_{k<terms} A^k / k!.
  Mat3 r = Mat3::identity();
  for (int k = terms - 1; k >= 1; --k) r = Mat3::identity() + (1.0 / k) * (scaled * r);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

ComplexState8 to_complex(const State8& s) {
  ComplexState8 z;
  z.c = {s.x.x, s.x.y, s.x.z, kI * s.tbar, s.v.x, s.v.y, s.v.z, kI * s.gamma};
  return z;
}

State8 from_complex(const ComplexState8& z) {
  return {{z.c[0].real(), z.c[1].real(), z.c[2].real()},
          z.c[3].imag(),
          {z.c[4].real(), z.c[5].real(), z.c[6].real()},
          z.c[7].imag()};
}

CMat4 b_hat(const Vec3& b) {
  CMat4 m{};
  m[0] = {0.0, b.z, -b.y, 0.0};
  m[1] = {-b.z, 0.0, b.x, 0.0};
  m[2] = {b.y, -b.x, 0.0, 0.0};
  m[3] = {0.0, 0.0, 0.0, 0.0};
  return m;
}

CMat4 e_hat(const Vec3& e) {
  CMat4 m{};
  m[0][3] = -kI * e.x;
  m[1][3] = -kI * e.y;
  m[2][3] = -kI * e.z;
  m[3][0] = kI * e.x;
  m[3][1] = kI * e.y;
  m[3][2] = kI * e.z;
  return m;
}

ComplexState8 complex_F(const FieldModel& field, const Vec3& x0, const ComplexState8& u) {
  const Vec3 x{u.c[0].real(), u.c[1].real(), u.c[2].real()};
  const CMat4 bx = b_hat(field.magnetic(x));
  const CMat4 b0 = b_hat(field.magnetic(x0));
  const CMat4 ex = e_hat(field.electric(x));
  CMat4 g{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g[i][j] = bx[i][j] - b0[i][j] + ex[i][j];
  const auto gu = mat_vec(g, {u.c[4], u.c[5], u.c[6], u.c[7]});
  ComplexState8 r;
  for (int k = 0; k < 4; ++k) r.c[4 + k] = gu[k];
  return r;
}

ComplexState8 complex_rhs(const FieldModel& field, const ComplexState8& u) {
  const Vec3 x{u.c[0].real(), u.c[1].real(), u.c[2].real()};
  CMat4 g = b_hat(field.magnetic(x));
  const CMat4 ex = e_hat(field.electric(x));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g[i][j] += ex[i][j];
  const auto du = mat_vec(g, {u.c[4], u.c[5], u.c[6], u.c[7]});
  ComplexState8 r;
  for (int k = 0; k < 4; ++k) {
    r.c[k] = u.c[4 + k];
    r.c[4 + k] = du[k];
  }
  return r;
}

ComplexState8 complex_rk4(const FieldModel& field, const ComplexState8& u0, double T, long n) {
  const double h = T / static_cast<double>(n);
  ComplexState8 u = u0;
  for (long i = 0; i < n; ++i) {
    const ComplexState8 k1 = complex_rhs(field, u);
    const ComplexState8 k2 = complex_rhs(field, axpy(0.5 * h, k1, u));
    const ComplexState8 k3 = complex_rhs(field, axpy(0.5 * h, k2, u));
    const ComplexState8 k4 = complex_rhs(field, axpy(h, k3, u));
    for (int k = 0; k < 8; ++k)
      u.c[k] += (h / 6.0) * (k1.c[k] + 2.0 * k2.c[k] + 2.0 * k3.c[k] + k4.c[k]);
  }
  return u;
}

}  // namespace sei::oracle
