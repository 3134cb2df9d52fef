#pragma once

// Jacobi pairs (pi, xi) and the skew algebroid (T*M, sharp_{pi,xi}, [.,.]^lambda).

#include "jgeo/matrix.hpp"
#include "jgeo/tensor.hpp"

namespace jgeo {

struct JacobiPair {
  TensorField pi;  // bivector
  TensorField xi;  // vector field, zero for a Poisson structure

  JacobiPair(TensorField pi, TensorField xi);
  /// (pi, 0).
  static JacobiPair poisson(TensorField pi);
  const ChartPtr& chart() const noexcept { return pi.chart(); }
};

struct AlgebroidData {
  JacobiPair pair;
  TensorField lambda;  // 1-form

  AlgebroidData(JacobiPair pair, TensorField lambda);
  const ChartPtr& chart() const noexcept { return pair.chart(); }
};

/// beta(sharp_pi alpha) = pi(alpha, beta).
TensorField sharp_pi(const TensorField& pi, const TensorField& alpha);
/// sharp_pi(alpha) + alpha(xi) xi.
TensorField sharp_pi_xi(const JacobiPair& pair, const TensorField& alpha);
/// Matrix of sharp_{pi,xi}: A(i,j) = pi^{ji} + xi^i xi^j.
MatrixField anchor_matrix(const JacobiPair& pair);

/// [a,b]_pi = L_{sharp a} b - L_{sharp b} a - d(pi(a,b)).
TensorField koszul_bracket(const TensorField& pi, const TensorField& a, const TensorField& b);
/// [a,b]_pi + a(xi)(L_xi b - b) - b(xi)(L_xi a - a) - pi(a,b) lambda.
TensorField lambda_bracket(const AlgebroidData& data, const TensorField& a, const TensorField& b);

struct JacobiDefect {
  TensorField schouten;  // [pi,pi] - 2 xi ^ pi
  TensorField lie;       // L_xi pi
};
JacobiDefect jacobi_defect(const JacobiPair& pair);

struct TorsionDefect {
  TensorField d1;  // sharp([a,b]^lambda) - [sharp a, sharp b]
  TensorField d2;  // d1 - pi(a,b)(xi - sharp(lambda))
};
TorsionDefect torsion_defect(const AlgebroidData& data, const TensorField& a, const TensorField& b);

/// Cyclic sum [[a,b],c] + [[b,c],a] + [[c,a],b] of lambda brackets.
TensorField jacobiator_defect(const AlgebroidData& data, const TensorField& a, const TensorField& b,
                              const TensorField& c);

/// c(sharp_pi [a,b]_pi) - c([sharp_pi a, sharp_pi b]) - 1/2 [pi,pi](a,b,c).
/// Vanishes for every bivector; pins the normalization of [pi,pi].
ScalarField calibration_defect(const TensorField& pi, const TensorField& a, const TensorField& b,
                               const TensorField& c);

/// [a, f b] - f [a,b] - sharp_{pi,xi}(a)(f) b.
TensorField leibniz_defect(const AlgebroidData& data, const TensorField& a, const ScalarField& f,
                           const TensorField& b);

}  // namespace jgeo
