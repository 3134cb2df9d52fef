#include "jgeo/jacobi.hpp"

#include "jgeo/error.hpp"

namespace jgeo {
namespace {

void require_bivector(const TensorField& pi) {
  if (pi.rank() != 2 || !pi.is_skew() || pi.variance()[0] != Slot::Up) {
    throw DimensionError("expected a bivector field");
  }
}

void require_one_form(const TensorField& a, const char* what) {
  if (!a.is_one_form()) throw DimensionError(std::string(what) + " must be a 1-form");
}

}  // namespace

JacobiPair::JacobiPair(TensorField p, TensorField x) : pi(std::move(p)), xi(std::move(x)) {
  require_bivector(pi);
  if (!xi.is_vector()) throw DimensionError("xi must be a vector field");
  require_same_chart(pi, xi, "Jacobi pair");
}

JacobiPair JacobiPair::poisson(TensorField pi) {
  TensorField zero = TensorField::zero(pi.chart(), {Slot::Up}, true);
  return JacobiPair(std::move(pi), std::move(zero));
}

AlgebroidData::AlgebroidData(JacobiPair p, TensorField l) : pair(std::move(p)), lambda(std::move(l)) {
  require_one_form(lambda, "lambda");
  require_same_chart(pair.pi, lambda, "algebroid data");
}

TensorField sharp_pi(const TensorField& pi, const TensorField& alpha) {
  require_bivector(pi);
  require_one_form(alpha, "argument of sharp");
  return contract_first(pi, alpha);
}

TensorField sharp_pi_xi(const JacobiPair& pair, const TensorField& alpha) {
  return sharp_pi(pair.pi, alpha) + pairing(alpha, pair.xi) * pair.xi;
}

MatrixField anchor_matrix(const JacobiPair& pair) {
  const int n = pair.pi.dim();
  std::vector<std::vector<ScalarField>> rows(n, std::vector<ScalarField>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) rows[i][j] = pair.pi({j, i}) + pair.xi[i] * pair.xi[j];
  }
  return MatrixField(pair.chart(), std::move(rows), MatrixRole::Sharp);
}

TensorField koszul_bracket(const TensorField& pi, const TensorField& a, const TensorField& b) {
  require_one_form(a, "bracket argument");
  require_one_form(b, "bracket argument");
  ScalarField pab = evaluate(pi, {a, b});
  return lie_derivative(sharp_pi(pi, a), b) - lie_derivative(sharp_pi(pi, b), a) -
         differential(pi.chart(), pab);
}

TensorField lambda_bracket(const AlgebroidData& data, const TensorField& a, const TensorField& b) {
  const TensorField& pi = data.pair.pi;
  const TensorField& xi = data.pair.xi;
  TensorField out = koszul_bracket(pi, a, b);
  ScalarField ax = pairing(a, xi);
  ScalarField bx = pairing(b, xi);
  if (!ax.is_zero()) out = out + ax * (lie_derivative(xi, b) - b);
  if (!bx.is_zero()) out = out - bx * (lie_derivative(xi, a) - a);
  return out - evaluate(pi, {a, b}) * data.lambda;
}

JacobiDefect jacobi_defect(const JacobiPair& pair) {
  return {schouten_bb(pair.pi) - 2.0 * wedge(pair.xi, pair.pi), lie_derivative(pair.xi, pair.pi)};
}

TorsionDefect torsion_defect(const AlgebroidData& data, const TensorField& a, const TensorField& b) {
  const JacobiPair& p = data.pair;
  TensorField d1 = sharp_pi_xi(p, lambda_bracket(data, a, b)) - lie_bracket(sharp_pi_xi(p, a), sharp_pi_xi(p, b));
  TensorField d2 = d1 - evaluate(p.pi, {a, b}) * (p.xi - sharp_pi_xi(p, data.lambda));
  return {d1, d2};
}

TensorField jacobiator_defect(const AlgebroidData& data, const TensorField& a, const TensorField& b,
                              const TensorField& c) {
  return lambda_bracket(data, lambda_bracket(data, a, b), c) + lambda_bracket(data, lambda_bracket(data, b, c), a) +
         lambda_bracket(data, lambda_bracket(data, c, a), b);
}

ScalarField calibration_defect(const TensorField& pi, const TensorField& a, const TensorField& b,
                               const TensorField& c) {
  ScalarField lhs = pairing(c, sharp_pi(pi, koszul_bracket(pi, a, b)));
  ScalarField rhs = pairing(c, lie_bracket(sharp_pi(pi, a), sharp_pi(pi, b)));
  return lhs - rhs - 0.5 * evaluate(schouten_bb(pi), {a, b, c});
}

TensorField leibniz_defect(const AlgebroidData& data, const TensorField& a, const ScalarField& f,
                           const TensorField& b) {
  return lambda_bracket(data, a, f * b) - f * lambda_bracket(data, a, b) -
         directional(sharp_pi_xi(data.pair, a), f) * b;
}

}  // namespace jgeo
