#pragma once

// Invariant R-divisors as per-ray rational coefficients and the piecewise
// linear functions they induce on a fan.

#include <memory>
#include <string>
#include <vector>

#include "toric/fan.hpp"

namespace toric {

// coefficient of the invariant divisor on each ray of the fan
using RDivisor = std::vector<Rational>;

inline RDivisor constant_divisor(const Fan& fan, const Rational& c) {
  return RDivisor(static_cast<std::size_t>(fan.ray_count()), c);
}

inline RDivisor negate(const RDivisor& d) {
  RDivisor out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = -d[i];
  return out;
}

inline RDivisor add(const RDivisor& a, const RDivisor& b) {
  RDivisor out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

// Piecewise linear function on the support of a fan: one rational linear
// functional per maximal cone, interpolating prescribed values on rays.
class PLFunction {
 public:
  PLFunction() = default;
  PLFunction(std::shared_ptr<const Fan> fan, std::vector<QVector> functionals,
             std::vector<Rational> ray_values)
      : fan_(std::move(fan)), functionals_(std::move(functionals)),
        ray_values_(std::move(ray_values)) {}

  const Fan& fan() const { return *fan_; }
  const QVector& functional(int max_cone_index) const { return functionals_[max_cone_index]; }
  const std::vector<Rational>& ray_values() const { return ray_values_; }

  Rational eval(const LatticeVector& v) const {
    for (std::size_t i = 0; i < fan_->max_cones().size(); ++i)
      if (fan_->cone_contains(fan_->max_cones()[i], v)) return dot(functionals_[i], v);
    fail(ErrorCode::OutsideSupport, "PLFunction::eval outside the fan support");
  }

  bool defined() const { return fan_ != nullptr; }

 private:
  std::shared_ptr<const Fan> fan_;
  std::vector<QVector> functionals_;  // aligned with fan.max_cones()
  std::vector<Rational> ray_values_;
};

// Interpolate prescribed ray values by a linear functional on every maximal
// cone. Fails with NotRCartier when a non-simplicial cone admits none.
inline PLFunction pl_function(std::shared_ptr<const Fan> fan, const std::vector<Rational>& values) {
  if (static_cast<int>(values.size()) != fan->ray_count())
    fail(ErrorCode::BadArgument, "pl_function: one value per ray required");
  std::vector<QVector> functionals;
  for (std::size_t ci = 0; ci < fan->max_cones().size(); ++ci) {
    const Cone& c = fan->max_cones()[ci];
    std::vector<LatticeVector> rows;
    std::vector<Rational> rhs;
    for (int i : c.rays) {
      rows.push_back(fan->ray(i));
      rhs.push_back(values[i]);
    }
    QVector m;
    if (!solve_rational(rows, rhs, fan->dim(), m))
      fail(ErrorCode::NotRCartier, "pl_function: NotRCartier(cone " + std::to_string(ci) + ")");
    functionals.push_back(std::move(m));
  }
  return PLFunction(std::move(fan), std::move(functionals), values);
}

inline PLFunction pl_function(const Fan& fan, const std::vector<Rational>& values) {
  return pl_function(std::make_shared<Fan>(fan), values);
}

}  // namespace toric
