#include "jgeo/random_fields.hpp"

#include <map>

#include "jgeo/error.hpp"

namespace jgeo {
namespace {

double quarter(Rng& rng, int max_numerator) {
  int k = 0;
  while (k == 0) k = rng.integer(-max_numerator, max_numerator);
  return k / 4.0;
}

void monomials(int dim, int degree, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  out.push_back(cur);
  if (static_cast<int>(cur.size()) == degree) return;
  for (int i = start; i < dim; ++i) {
    cur.push_back(i);
    monomials(dim, degree, i, cur, out);
    cur.pop_back();
  }
}

ScalarField random_poly(int dim, Rng& rng, int degree, int max_numerator) {
  std::vector<std::vector<int>> monos;
  std::vector<int> cur;
  monomials(dim, degree, 0, cur, monos);
  ScalarField f;
  for (const auto& m : monos) {
    if (rng.integer(0, 1) == 0) continue;
    ScalarField term = ScalarField::constant(quarter(rng, max_numerator));
    for (int v : m) term = term * ScalarField::coordinate(v);
    f += term;
  }
  return f;
}

std::vector<ScalarField> random_list(int n, int dim, Rng& rng, int degree) {
  std::vector<ScalarField> c(n);
  for (auto& x : c) x = random_poly(dim, rng, degree, 4);
  return c;
}

TensorField random_skew2(const ChartPtr& chart, Rng& rng, int degree, Slot dir) {
  std::map<std::vector<int>, ScalarField> m;
  for (int i = 0; i < chart->dim(); ++i) {
    for (int j = i + 1; j < chart->dim(); ++j) m[{i, j}] = random_poly(chart->dim(), rng, degree, 4);
  }
  return TensorField::skew_from(chart, dir, 2, m);
}

}  // namespace

ScalarField random_scalar(const Chart& chart, Rng& rng, int degree) {
  return random_poly(chart.dim(), rng, degree, 4);
}

TensorField random_vector(const ChartPtr& chart, Rng& rng, int degree) {
  return TensorField::vector(chart, random_list(chart->dim(), chart->dim(), rng, degree));
}

TensorField random_one_form(const ChartPtr& chart, Rng& rng, int degree) {
  return TensorField::one_form(chart, random_list(chart->dim(), chart->dim(), rng, degree));
}

TensorField random_bivector(const ChartPtr& chart, Rng& rng, int degree) {
  return random_skew2(chart, rng, degree, Slot::Up);
}

TensorField random_two_form(const ChartPtr& chart, Rng& rng, int degree) {
  return random_skew2(chart, rng, degree, Slot::Down);
}

TensorField random_nondegenerate_two_form(const ChartPtr& chart, Rng& rng) {
  const int n = chart->dim();
  if (n % 2 != 0) throw DimensionError("nondegenerate 2-forms need an even chart");
  // Each perturbation entry is bounded by 1/16 * (number of monomials) on the
  // unit box, which keeps the Pfaffian away from zero for n <= 4.
  std::map<std::vector<int>, ScalarField> m;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      ScalarField p = (1.0 / 16.0) * random_poly(n, rng, 1, 1);
      if (j == i + 1 && i % 2 == 0) p = 1.0 + p;
      m[{i, j}] = p;
    }
  }
  return TensorField::skew_from(chart, Slot::Down, 2, m);
}

MatrixField random_metric(const ChartPtr& chart, Rng& rng) {
  const int n = chart->dim();
  std::vector<std::vector<ScalarField>> b(n, std::vector<ScalarField>(n));
  for (auto& row : b) {
    for (auto& x : row) x = 0.5 * random_poly(n, rng, 1, 2);
  }
  std::vector<std::vector<ScalarField>> g(n, std::vector<ScalarField>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      ScalarField s = i == j ? ScalarField::constant(1.0) : ScalarField();
      for (int k = 0; k < n; ++k) s += b[k][i] * b[k][j];
      g[i][j] = s;
      g[j][i] = s;
    }
  }
  return MatrixField(chart, std::move(g), MatrixRole::Metric);
}

}  // namespace jgeo
