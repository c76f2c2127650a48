#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "sei/dynamics.hpp"
#include "sei/oracle.hpp"
#include "sei/so3kernels.hpp"
#include "sei/types.hpp"

namespace sei::testing {

inline Vec3 random_vec(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> d(-scale, scale);
  return {d(rng), d(rng), d(rng)};
}

/// Uniform in the ball of the given radius.
inline Vec3 random_in_ball(std::mt19937_64& rng, double radius) {
  while (true) {
    const Vec3 v = random_vec(rng, 1.0);
    if (dot(v, v) <= 1.0) return radius * v;
  }
}

/// Physical state away from the singular axis of the benchmark field.
inline State8 random_physical_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> radius(0.5, 2.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::acos(-1.0));
  std::uniform_real_distribution<double> z(-1.0, 1.0);
  const double r = radius(rng);
  const double a = angle(rng);
  return from_momentum({r * std::cos(a), r * std::sin(a), z(rng)}, z(rng), random_vec(rng, 1.0));
}

/// Arbitrary 8-vector with Euclidean norm ≤ radius.
inline State8 random_raw_state(std::mt19937_64& rng, double radius) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::array<double, 8> a{};
  for (double& c : a) c = n(rng);
  const State8 s = State8::from_array(a);
  const double scale = radius * std::pow(u(rng), 1.0 / 8.0) / norm(s);
  return scale * s;
}

inline double max_abs_diff(const Mat3& a, const Mat3& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < 9; ++k) m = std::max(m, std::abs(a.m[k] - b.m[k]));
  return m;
}

inline double max_abs_diff(const State8& a, const State8& b) {
  const auto x = a.to_array();
  const auto y = b.to_array();
  double m = 0.0;
  for (std::size_t k = 0; k < 8; ++k) m = std::max(m, std::abs(x[k] - y[k]));
  return m;
}

/// ∫₀¹ exp(σtS) dσ by composite 4-point Gauss–Legendre on 16 panels (64
/// nodes), with the integrand from the series exponential.
inline Mat3 phi1_quadrature(double t, const Mat3& s) {
  constexpr std::array<double, 4> nodes = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                           0.8611363115940526};
  constexpr std::array<double, 4> weights = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                             0.3478548451374538};
  constexpr int panels = 16;
  const double width = 1.0 / panels;
  Mat3 acc;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * width;
    for (int k = 0; k < 4; ++k) {
      const double sigma = mid + 0.5 * width * nodes[k];
      acc = acc + (0.5 * width * weights[k]) * oracle::exp_series(sigma * t, s);
    }
  }
  return acc;
}

/// Spectral norm of a dense n×n matrix by power iteration on AᵀA.
template <std::size_t N>
double spectral_norm(const std::array<std::array<double, N>, N>& a, int iterations = 200) {
  std::array<double, N> x{};
  for (std::size_t i = 0; i < N; ++i) x[i] = 1.0 + 0.1 * static_cast<double>(i);
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    std::array<double, N> y{};
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) y[i] += a[i][j] * x[j];
    std::array<double, N> z{};
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) z[j] += a[i][j] * y[i];
    double nz = 0.0;
    for (double c : z) nz += c * c;
    nz = std::sqrt(nz);
    if (nz == 0.0) return 0.0;
    lambda = nz;
    double nx = 0.0;
    for (double c : x) nx += c * c;
    lambda /= std::sqrt(nx);
    for (std::size_t i = 0; i < N; ++i) x[i] = z[i] / nz;
  }
  return std::sqrt(lambda);
}

inline std::array<std::array<double, 3>, 3> dense(const Mat3& m) {
  std::array<std::array<double, 3>, 3> a{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) a[i][j] = m(i, j);
  return a;
}

/// Materializes e^{hL} column by column from the blockwise application.
inline std::array<std::array<double, 8>, 8> dense_exp_hL(double h, const LinearPart& lp) {
  std::array<std::array<double, 8>, 8> a{};
  for (std::size_t j = 0; j < 8; ++j) {
    std::array<double, 8> e{};
    e[j] = 1.0;
    const auto col = exp_hL_apply(h, lp, State8::from_array(e)).to_array();
    for (std::size_t i = 0; i < 8; ++i) a[i][j] = col[i];
  }
  return a;
}

}  // namespace sei::testing
