#pragma once

#include <span>
#include <vector>

#include "jgeo/chart.hpp"
#include "jgeo/defect.hpp"
#include "jgeo/matrix.hpp"
#include "jgeo/parse.hpp"
#include "jgeo/tensor.hpp"

namespace testing_helpers {

using namespace jgeo;

inline Measurement measure_scalar(const ScalarField& f, std::span<const Point> pts) {
  std::vector<ScalarField> v = {f};
  return measure(v, pts);
}

inline bool zero_scalar(const ScalarField& f, std::span<const Point> pts, Tolerance tol = {}) {
  return measure_scalar(f, pts).passes(tol);
}

inline bool zero_field(const TensorField& t, std::span<const Point> pts, Tolerance tol = {}) {
  return measure_tensor(t, pts).passes(tol);
}

inline bool same_field(const TensorField& a, const TensorField& b, std::span<const Point> pts, Tolerance tol = {}) {
  return measure_tensor(a, b, pts).passes(tol);
}

inline bool same_matrix(const MatrixField& a, const MatrixField& b, std::span<const Point> pts, Tolerance tol = {}) {
  return measure_matrix(a, b, pts).passes(tol);
}

/// Chart with coordinate fields, basis fields and the default sample points.
struct Coords {
  explicit Coords(std::vector<std::string> names) : chart(make_chart(std::move(names))) {
    pts = sample_points({chart, 32, 42});
    for (int i = 0; i < chart->dim(); ++i) {
      x.push_back(ScalarField::coordinate(i));
      d.push_back(TensorField::basis_form(chart, i));
      p.push_back(TensorField::basis_vector(chart, i));
    }
  }
  ScalarField parse(const char* s) const { return parse_scalar(s, *chart); }

  ChartPtr chart;
  std::vector<Point> pts;
  std::vector<ScalarField> x;
  std::vector<TensorField> d;  // dx^i
  std::vector<TensorField> p;  // d/dx^i
};

}  // namespace testing_helpers
