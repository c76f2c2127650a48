#include "sei/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sei/dynamics.hpp"
#include "sei/integrators.hpp"
#include "sei/oracle.hpp"
#include "sei/so3kernels.hpp"

namespace sei {

namespace {

Vec3 random_vec(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> d(-scale, scale);
  return {d(rng), d(rng), d(rng)};
}

// Physical state with x₁² + x₂² ≥ 0.25 so the benchmark field is regular.
State8 random_physical_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> radius(0.5, 2.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::acos(-1.0));
  std::uniform_real_distribution<double> z(-1.0, 1.0);
  const double r = radius(rng);
  const double a = angle(rng);
  return from_momentum({r * std::cos(a), r * std::sin(a), z(rng)}, z(rng), random_vec(rng, 1.0));
}

double max_abs_diff(const Mat3& a, const Mat3& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < 9; ++k) m = std::max(m, std::abs(a.m[k] - b.m[k]));
  return m;
}

}  // namespace

std::vector<CheckResult> run_selftest(int samples) {
  std::mt19937_64 rng(20240607);
  std::uniform_real_distribution<double> unit_h(1e-3, 1.0);
  const FieldPtr field = paper_field();

  CheckResult orth{"rodrigues orthogonality", true, 0.0, 1e-12};
  CheckResult series{"rodrigues vs series", true, 0.0, 1e-12};
  CheckResult reverse{"time reversibility", true, 0.0, 1e-12};
  CheckResult complex_f{"real/complex F equivalence", true, 0.0, 1e-13};

  for (int i = 0; i < samples; ++i) {
    const LinearPart lp(random_vec(rng, 2.0));
    const double t = unit_h(rng);
    const Mat3 r = exp_so3(t, lp);
    orth.worst = std::max(orth.worst, frobenius_norm(r.transposed() * r - Mat3::identity()));
    series.worst = std::max(series.worst, max_abs_diff(r, oracle::exp_series(t, lp.s())));

    const State8 a = random_physical_state(rng);
    const State8 b = random_physical_state(rng);
    const LinearPart lin(field->magnetic(a.x));
    const double h = (i % 2 == 0) ? 0x1p-4 : 0x1p-8;
    const PairState fwd = sei_map(h, *field, lin, {b, a});
    const PairState back = sei_map(-h, *field, lin, {fwd.previous, fwd.current});
    reverse.worst = std::max(reverse.worst, norm(back.current - a) / norm(a));

    const State8 real_f = eval_F(*field, a.x, b);
    const oracle::ComplexState8 cf = oracle::complex_F(*field, a.x, oracle::to_complex(b));
    const State8 from_c = oracle::from_complex(cf);
    double diff = 0.0;
    const auto ra = real_f.to_array();
    const auto ca = from_c.to_array();
    for (std::size_t k = 0; k < 8; ++k) diff = std::max(diff, std::abs(ra[k] - ca[k]));
    // Imaginary parts of the velocity block and real part of w must vanish.
    for (int k = 4; k < 7; ++k) diff = std::max(diff, std::abs(cf.c[k].imag()));
    diff = std::max(diff, std::abs(cf.c[7].real()));
    complex_f.worst = std::max(complex_f.worst, diff);
  }

  std::vector<CheckResult> out{orth, series, reverse, complex_f};
  for (CheckResult& c : out) c.passed = c.worst <= c.tolerance;
  return out;
}

}  // namespace sei
