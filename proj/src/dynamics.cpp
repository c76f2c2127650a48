#include "sei/dynamics.hpp"

#include <cmath>

namespace sei {

namespace {

constexpr double kAxisRadiusSquared = 1e-24;

class PaperField final : public FieldModel {
 public:
  Vec3 magnetic(const Vec3& x) const override {
    return {std::cos(x.y) - x.x, 1.0 + std::sin(x.z), std::cos(x.x) + x.z};
  }

  Vec3 electric(const Vec3& x) const override {
    const double r2 = radius_squared(x);
    const double inv_r3 = 1.0 / (r2 * std::sqrt(r2));
    return {x.x * inv_r3, x.y * inv_r3, 0.0};
  }

  bool has_potential() const override { return true; }

  double potential(const Vec3& x) const override { return 1.0 / std::sqrt(radius_squared(x)); }

  std::string name() const override { return "paper"; }

 private:
  static double radius_squared(const Vec3& x) {
    const double r2 = x.x * x.x + x.y * x.y;
    if (!(r2 >= kAxisRadiusSquared))
      throw DomainError("field evaluated on the singular axis x1 = x2 = 0");
    return r2;
  }
};

class UniformField final : public FieldModel {
 public:
  UniformField(const Vec3& b, const Vec3& e) : b_(b), e_(e) {}

  Vec3 magnetic(const Vec3&) const override { return b_; }
  Vec3 electric(const Vec3&) const override { return e_; }
  std::string name() const override { return "uniform"; }

 private:
  Vec3 b_;
  Vec3 e_;
};

class ZeroField final : public FieldModel {
 public:
  Vec3 magnetic(const Vec3&) const override { return {}; }
  Vec3 electric(const Vec3&) const override { return {}; }
  bool has_potential() const override { return true; }
  double potential(const Vec3&) const override { return 0.0; }
  std::string name() const override { return "zero"; }
};

}  // namespace

double FieldModel::potential(const Vec3&) const {
  throw UsageError("field has no potential");
}

State8 from_momentum(const Vec3& x, double tbar, const Vec3& p) {
  return {x, tbar, p, std::sqrt(1.0 + dot(p, p))};
}

FieldPtr paper_field() { return std::make_shared<const PaperField>(); }

FieldPtr uniform_field(const Vec3& b, const Vec3& e) {
  return std::make_shared<const UniformField>(b, e);
}

FieldPtr zero_field() { return std::make_shared<const ZeroField>(); }

State8 eval_F(const FieldModel& field, const Vec3& x0, const State8& s) {
  return eval_F(field, LinearPart(field.magnetic(x0)), s);
}

State8 eval_F(const FieldModel& field, const LinearPart& lp, const State8& s) {
  const Vec3 db = field.magnetic(s.x) - lp.b0();
  const Vec3 e = field.electric(s.x);
  return {{}, 0.0, cross(s.v, db) + s.gamma * e, dot(e, s.v)};
}

double hamiltonian(const FieldModel& field, const State8& s) {
  if (!field.has_potential()) throw UsageError("field has no potential");
  return field.potential(s.x) + s.gamma;
}

double minkowski_defect(const State8& s) {
  return s.gamma * s.gamma - dot(s.v, s.v) - 1.0;
}

}  // namespace sei
