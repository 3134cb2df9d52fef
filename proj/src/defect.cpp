#include "jgeo/defect.hpp"

#include <cmath>
#include <limits>

#include "jgeo/error.hpp"

namespace jgeo {

bool Measurement::passes(const Tolerance& tol) const noexcept {
  if (std::isnan(max_abs) || std::isnan(scale)) return false;
  return max_abs <= tol.threshold(scale);
}

void Measurement::observe(double lhs, double rhs) noexcept {
  double d = std::abs(lhs - rhs);
  if (std::isnan(d) || std::isnan(max_abs)) {
    max_abs = std::numeric_limits<double>::quiet_NaN();
  } else if (d > max_abs) {
    max_abs = d;
  }
  double s = std::max(std::abs(lhs), std::abs(rhs));
  if (std::isnan(s)) {
    scale = std::numeric_limits<double>::quiet_NaN();
  } else if (s > scale) {
    scale = s;
  }
}

void Measurement::merge(const Measurement& other) noexcept {
  if (std::isnan(other.max_abs) || std::isnan(max_abs)) {
    max_abs = std::numeric_limits<double>::quiet_NaN();
  } else {
    max_abs = std::max(max_abs, other.max_abs);
  }
  if (std::isnan(other.scale) || std::isnan(scale)) {
    scale = std::numeric_limits<double>::quiet_NaN();
  } else {
    scale = std::max(scale, other.scale);
  }
}

Measurement measure(std::span<const ScalarField> fields, std::span<const Point> points) {
  Measurement m;
  for (const auto& p : points) {
    Evaluator ev(p);
    for (const auto& f : fields) m.observe(ev(f), 0.0);
  }
  return m;
}

Measurement measure_difference(std::span<const ScalarField> lhs, std::span<const ScalarField> rhs,
                               std::span<const Point> points) {
  if (lhs.size() != rhs.size()) throw DimensionError("compared field lists differ in length");
  Measurement m;
  for (const auto& p : points) {
    Evaluator ev(p);
    for (std::size_t k = 0; k < lhs.size(); ++k) m.observe(ev(lhs[k]), ev(rhs[k]));
  }
  return m;
}

double max_defect(std::span<const ScalarField> fields, const Sampler& s) {
  auto pts = sample_points(s);
  return measure(fields, pts).max_abs;
}

}  // namespace jgeo
