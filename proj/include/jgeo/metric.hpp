#pragma once

// Metrics, the Levi-Civita connection, and the contravariant derivative D
// attached to a triple (pi, xi, g).

#include <span>
#include <vector>

#include "jgeo/jacobi.hpp"
#include "jgeo/matrix.hpp"
#include "jgeo/tensor.hpp"

namespace jgeo {

struct MetricStructure {
  MatrixField g;      // role Metric
  MatrixField g_inv;  // the cometric g*, role Sharp
  ScalarField det;
  std::vector<MatrixField> dg;      // d_l g
  std::vector<MatrixField> dg_inv;  // d_l g* = -g* (d_l g) g*

  /// Certifies det g != 0 on `points` (empty span: no check).
  static MetricStructure make(const MatrixField& g, std::span<const Point> points = {});
  const ChartPtr& chart() const noexcept { return g.chart(); }
  int dim() const noexcept { return g.size(); }
};

ScalarField metric(const MetricStructure& m, const TensorField& x, const TensorField& y);
ScalarField cometric(const MetricStructure& m, const TensorField& a, const TensorField& b);
/// V(g*(a,b)), differentiating g* through d_l g* = -g*(d_l g)g*.
ScalarField cometric_directional(const MetricStructure& m, const TensorField& v, const TensorField& a,
                                 const TensorField& b);
TensorField flat_g(const MetricStructure& m, const TensorField& x);
TensorField sharp_g(const MetricStructure& m, const TensorField& a);

struct Endomorphisms {
  MatrixField J;       // g(J sharp_g a, sharp_g b) = pi(a,b); J = -P G
  MatrixField J_star;  // g*(J* a, b) = pi(a,b);             J* = -G P
};
Endomorphisms build_J(const TensorField& pi, const MetricStructure& m);

struct ConnectionPack {
  MetricStructure metric;
  std::vector<ScalarField> gamma;  // Gamma^k_{ij} at index (k*n + i)*n + j

  const ScalarField& operator()(int k, int i, int j) const {
    const int n = metric.dim();
    return gamma[static_cast<std::size_t>((k * n + i) * n + j)];
  }
};
ConnectionPack christoffel(const MetricStructure& m);

/// nabla_X T for a tensor field of any variance.
TensorField covariant_derivative(const ConnectionPack& cp, const TensorField& x, const TensorField& t);
/// (nabla_X A)(Y) = nabla_X(AY) - A(nabla_X Y) for an endomorphism matrix.
MatrixField covariant_derivative(const ConnectionPack& cp, const TensorField& x, const MatrixField& a);

struct ContravariantPack {
  JacobiPair pair;
  MetricStructure metric;
  MatrixField J;
  MatrixField J_star;
  TensorField lambda_g;
  AlgebroidData data;  // (pi, xi, lambda_g)

  ContravariantPack(JacobiPair pair, MetricStructure metric);
  const ChartPtr& chart() const noexcept { return pair.chart(); }
};

/// g(xi,xi) flat_g(xi) - flat_g(J xi).
TensorField lambda_g(const JacobiPair& pair, const MetricStructure& m, const MatrixField& J);

/// D_a b from the contravariant Koszul formula with anchor sharp_{pi,xi} and
/// bracket [.,.]^{lambda_g}.
TensorField contravariant_D(const ContravariantPack& p, const TensorField& a, const TensorField& b);

/// (D pi)(a,b,c) = sharp(a)(pi(b,c)) - pi(D_a b, c) - pi(b, D_a c).
ScalarField D_tensor_pi(const ContravariantPack& p, const TensorField& a, const TensorField& b,
                        const TensorField& c);

/// (D_a J*) b = D_a(J* b) - J*(D_a b).
TensorField D_J_star(const ContravariantPack& p, const TensorField& a, const TensorField& b);

/// sharp(a)(g*(b,c)) - g*(D_a b, c) - g*(b, D_a c).
ScalarField metric_compatibility_defect(const ContravariantPack& p, const TensorField& a, const TensorField& b,
                                        const TensorField& c);
/// D_a b - D_b a - [a,b]^{lambda_g}.
TensorField symmetry_defect(const ContravariantPack& p, const TensorField& a, const TensorField& b);

/// sharp(D_a b) - nabla_{sharp a} sharp b, with sharp = sharp_{pi,xi}.
TensorField anchor_intertwine_defect(const ContravariantPack& p, const ConnectionPack& cp, const TensorField& a,
                                     const TensorField& b);

/// g(sharp a, sharp b) - g*(a,b).
ScalarField isometry_defect(const JacobiPair& pair, const MetricStructure& m, const TensorField& a,
                            const TensorField& b);

}  // namespace jgeo
