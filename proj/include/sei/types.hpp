#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace sei {

/// Real 3-vector used for positions, momenta and field values.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr double& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }

  friend constexpr Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// 3x3 real matrix, row-major.
struct Mat3 {
  std::array<double, 9> m{};

  static constexpr Mat3 zero() { return {}; }
  static constexpr Mat3 identity() { return Mat3{{1, 0, 0, 0, 1, 0, 0, 0, 1}}; }

  constexpr double operator()(std::size_t i, std::size_t j) const { return m[3 * i + j]; }
  constexpr double& operator()(std::size_t i, std::size_t j) { return m[3 * i + j]; }

  constexpr Mat3 transposed() const {
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
    return r;
  }

  friend constexpr Mat3 operator+(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (std::size_t k = 0; k < 9; ++k) r.m[k] = a.m[k] + b.m[k];
    return r;
  }
  friend constexpr Mat3 operator-(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (std::size_t k = 0; k < 9; ++k) r.m[k] = a.m[k] - b.m[k];
    return r;
  }
  friend constexpr Mat3 operator*(double s, const Mat3& a) {
    Mat3 r;
    for (std::size_t k = 0; k < 9; ++k) r.m[k] = s * a.m[k];
    return r;
  }
  friend constexpr Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
    return r;
  }
  friend constexpr Vec3 operator*(const Mat3& a, const Vec3& v) {
    return {a(0, 0) * v.x + a(0, 1) * v.y + a(0, 2) * v.z,
            a(1, 0) * v.x + a(1, 1) * v.y + a(1, 2) * v.z,
            a(2, 0) * v.x + a(2, 1) * v.y + a(2, 2) * v.z};
  }
  friend constexpr bool operator==(const Mat3&, const Mat3&) = default;
};

inline double frobenius_norm(const Mat3& a) {
  double s = 0.0;
  for (double e : a.m) s += e * e;
  return std::sqrt(s);
}

/// Real-coordinate spacetime state (x, t̄, v, γ).
///
/// The complex 4-position (x, t) and 4-velocity (v, w) are carried through
/// t = i·t̄ and w = i·γ, so every component here is real. `v` is the
/// relativistic momentum p and `gamma` the Lorentz factor; on an exact
/// trajectory gamma² − |v|² = 1.
struct State8 {
  Vec3 x;
  double tbar = 0.0;
  Vec3 v;
  double gamma = 0.0;

  std::array<double, 8> to_array() const { return {x.x, x.y, x.z, tbar, v.x, v.y, v.z, gamma}; }
  static State8 from_array(const std::array<double, 8>& a) {
    return {{a[0], a[1], a[2]}, a[3], {a[4], a[5], a[6]}, a[7]};
  }

  friend State8 operator+(const State8& a, const State8& b) {
    return {a.x + b.x, a.tbar + b.tbar, a.v + b.v, a.gamma + b.gamma};
  }
  friend State8 operator-(const State8& a, const State8& b) {
    return {a.x - b.x, a.tbar - b.tbar, a.v - b.v, a.gamma - b.gamma};
  }
  friend State8 operator*(double s, const State8& a) {
    return {s * a.x, s * a.tbar, s * a.v, s * a.gamma};
  }
  friend bool operator==(const State8&, const State8&) = default;
};

/// Euclidean norm over all eight real components.
inline double norm(const State8& s) {
  double acc = 0.0;
  for (double c : s.to_array()) acc += c * c;
  return std::sqrt(acc);
}

inline bool is_finite(const State8& s) {
  for (double c : s.to_array())
    if (!std::isfinite(c)) return false;
  return true;
}

}  // namespace sei
