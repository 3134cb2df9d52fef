#pragma once

#include <span>
#include <vector>

#include "jgeo/chart.hpp"
#include "jgeo/expr.hpp"

namespace jgeo {

/// A check passes when max_abs <= abs + rel * scale, where scale is the
/// largest magnitude seen on either side of the compared identity.
struct Tolerance {
  double abs = 1e-9;
  double rel = 1e-9;
  double threshold(double scale) const noexcept { return abs + rel * scale; }
};

/// Result of sampling an identity lhs == rhs (or a field that should vanish).
/// NaN anywhere makes max_abs NaN, which never passes.
struct Measurement {
  double max_abs = 0.0;
  double scale = 0.0;

  bool passes(const Tolerance& tol) const noexcept;
  void observe(double lhs, double rhs) noexcept;
  void merge(const Measurement& other) noexcept;
};

/// max |f(p)| over points and fields; scale = same maximum.
Measurement measure(std::span<const ScalarField> fields, std::span<const Point> points);

/// max |lhs_k(p) - rhs_k(p)|; scale = max(|lhs|, |rhs|).
Measurement measure_difference(std::span<const ScalarField> lhs, std::span<const ScalarField> rhs,
                               std::span<const Point> points);

/// Maximum absolute value of the fields over the sampler's points.
double max_defect(std::span<const ScalarField> fields, const Sampler& s);

}  // namespace jgeo
