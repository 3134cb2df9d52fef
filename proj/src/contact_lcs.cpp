#include "jgeo/contact_lcs.hpp"

#include <cmath>
#include <map>

#include "jgeo/error.hpp"

namespace jgeo {
namespace {

// Bivector with entries (S^T M S)(i,j), built from the upper triangle.
TensorField congruence_bivector(const MatrixField& s, const MatrixField& m) {
  MatrixField p = transpose(s) * m * s;
  std::map<std::vector<int>, ScalarField> up;
  for (int i = 0; i < p.size(); ++i) {
    for (int j = i + 1; j < p.size(); ++j) up[{i, j}] = p(i, j);
  }
  return TensorField::skew_from(s.chart(), Slot::Up, 2, up);
}

}  // namespace

ContactStructure::ContactStructure(TensorField e) : eta(std::move(e)) {
  if (!eta.is_one_form()) throw DimensionError("contact form must be a 1-form");
  if (eta.dim() < 3 || eta.dim() % 2 == 0) {
    throw DimensionError("contact structures need an odd-dimensional chart of dimension >= 3");
  }
}

LcsStructure::LcsStructure(TensorField w, TensorField t) : omega(std::move(w)), theta(std::move(t)) {
  if (omega.rank() != 2 || !omega.is_skew() || omega.variance()[0] != Slot::Down) {
    throw DimensionError("omega must be a 2-form");
  }
  if (!theta.is_one_form()) throw DimensionError("theta must be a 1-form");
  require_same_chart(omega, theta, "lcs structure");
  if (omega.dim() % 2 != 0) throw DimensionError("lcs structures need an even-dimensional chart");
}

VolumeCheck contact_volume_defect(const ContactStructure& c, std::span<const Point> points, double threshold) {
  const int n = (c.eta.dim() - 1) / 2;
  TensorField deta = exterior_derivative(c.eta);
  TensorField top = c.eta;
  for (int k = 0; k < n; ++k) top = wedge(top, deta);
  std::vector<int> idx(c.eta.dim());
  for (int i = 0; i < c.eta.dim(); ++i) idx[i] = i;
  ScalarField comp = top.at(idx);
  bool ok = true;
  for (const auto& p : points) {
    double v = eval_scalar(comp, p);
    if (!(std::abs(v) > threshold)) ok = false;
  }
  return {comp, ok};
}

MatrixField flat_eta_matrix(const ContactStructure& c) {
  const int n = c.eta.dim();
  TensorField deta = exterior_derivative(c.eta);
  std::vector<std::vector<ScalarField>> rows(n, std::vector<ScalarField>(n));
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) rows[k][j] = c.eta[j] * c.eta[k] - deta({j, k});
  }
  return MatrixField(c.chart(), std::move(rows), MatrixRole::Flat);
}

MatrixField sharp_eta_matrix(const ContactStructure& c, std::span<const Point> points) {
  return matrix_inverse(flat_eta_matrix(c), points);
}

TensorField flat_eta(const ContactStructure& c, const TensorField& x) { return apply(flat_eta_matrix(c), x); }

TensorField sharp_eta(const ContactStructure& c, const TensorField& alpha, std::span<const Point> points) {
  return apply(sharp_eta_matrix(c, points), alpha);
}

TensorField reeb_field(const ContactStructure& c, std::span<const Point> points) {
  return sharp_eta(c, c.eta, points);
}

JacobiPair contact_jacobi(const ContactStructure& c, std::span<const Point> points) {
  MatrixField s = sharp_eta_matrix(c, points);
  MatrixField d = MatrixField::from_tensor(exterior_derivative(c.eta), MatrixRole::Generic);
  return JacobiPair(congruence_bivector(s.with_role(MatrixRole::Generic), d), apply(s, c.eta));
}

LcsDefect lcs_defect(const LcsStructure& s) {
  return {exterior_derivative(s.omega) + wedge(s.theta, s.omega), exterior_derivative(s.theta)};
}

MatrixField flat_omega_matrix(const LcsStructure& s) { return matrix_of_two_form(s.omega); }

MatrixField sharp_omega_matrix(const LcsStructure& s, std::span<const Point> points) {
  return matrix_inverse(flat_omega_matrix(s), points);
}

JacobiPair lcs_jacobi(const LcsStructure& s, std::span<const Point> points) {
  MatrixField sh = sharp_omega_matrix(s, points);
  MatrixField w = MatrixField::from_tensor(s.omega, MatrixRole::Generic);
  return JacobiPair(congruence_bivector(sh.with_role(MatrixRole::Generic), w), apply(sh, s.theta));
}

LcsTransferDefect lcs_transfer_defect(const LcsStructure& s, const JacobiPair& pair, const TensorField& a,
                             const TensorField& b, const TensorField& c) {
  TensorField x = sharp_pi(pair.pi, a);
  TensorField y = sharp_pi(pair.pi, b);
  TensorField z = sharp_pi(pair.pi, c);
  LcsDefect d = lcs_defect(s);
  TensorField jac = 0.5 * schouten_bb(pair.pi) - wedge(pair.xi, pair.pi);
  ScalarField closure = evaluate(d.closure, {x, y, z}) - evaluate(jac, {a, b, c});
  ScalarField lie = evaluate(lie_derivative(pair.xi, s.omega), {x, y}) +
                    evaluate(lie_derivative(pair.xi, pair.pi), {a, b});
  return {closure, lie};
}

}  // namespace jgeo
