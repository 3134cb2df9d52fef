#pragma once

// Almost contact metric structures, the compatibility condition for a triple
// (pi, xi, g), 1/2-Kenmotsu, Hermitian checks and the conformal rescaling
// identities used for conformally Kaehler structures.
//
// Defects that are tensors are returned as tensors so that callers can
// measure them on the coordinate frame and on random frames.

#include "jgeo/contact_lcs.hpp"
#include "jgeo/metric.hpp"

namespace jgeo {

struct AlmostContactMetric {
  MatrixField phi;  // endomorphism, phi(i,j) = Phi^i_j
  TensorField xi;
  TensorField eta;
  MetricStructure g;

  AlmostContactMetric(MatrixField phi, TensorField xi, TensorField eta, MetricStructure g);
  const ChartPtr& chart() const noexcept { return xi.chart(); }
};

struct AlmostContactDefect {
  MatrixField phi_squared;  // Phi^2 + Id - eta (x) xi
  ScalarField eta_xi;       // eta(xi) - 1
  TensorField phi_xi;       // Phi xi
  TensorField eta_phi;      // eta o Phi
};
AlmostContactDefect almost_contact_defect(const AlmostContactMetric& s);

struct AcsMetricDefect {
  TensorField associated;  // g(PhiX, PhiY) - g(X,Y) + eta(X)eta(Y)
  TensorField flat_xi;     // flat_g(xi) - eta
};
AcsMetricDefect acs_metric_defect(const AlmostContactMetric& s);

struct AcsBivector {
  JacobiPair pair;       // pi(a,b) = g(sharp_g a, Phi sharp_g b), taken from the upper triangle
  TensorField symmetric; // pi(a,b) + pi(b,a) before antisymmetrizing; zero for associated metrics
};
AcsBivector acs_bivector(const AlmostContactMetric& s);

/// g(X, Phi Y) - d eta(X,Y).
TensorField contact_metric_defect(const AlmostContactMetric& s);

/// D pi(a,b,c) - 1/2(c(xi)pi(a,b) - b(xi)pi(a,c) - J*c(xi) g*(a,b) + J*b(xi) g*(a,c)).
ScalarField compatibility_pi_defect(const ContravariantPack& p, const TensorField& a, const TensorField& b,
                                     const TensorField& c);
/// (D_a J*)b - 1/2(pi(a,b) flat_g(xi) - b(xi) J*a + g*(a,b) J* flat_g(xi) + J*b(xi) a).
TensorField compatibility_defect(const ContravariantPack& p, const TensorField& a, const TensorField& b);

/// T(X,Y) = (nabla_X Phi)Y - factor (g(PhiX,Y) xi - eta(Y) PhiX), variance (up, down, down)
/// with slots ordered (output, X, Y).
TensorField half_kenmotsu_defect(const AlmostContactMetric& s, const ConnectionPack& cp, double factor = 0.5);

/// sharp((D_a J*)b) + (nabla_{sharp a} Phi)(sharp b), sharp = sharp_{pi,xi}.
TensorField derivative_transfer_defect(const ContravariantPack& p, const ConnectionPack& cp, const MatrixField& phi,
                           const TensorField& a, const TensorField& b);

/// sharp o J* + Phi o sharp as a matrix field.
MatrixField acs_intertwine_defect(const ContravariantPack& p, const MatrixField& phi);

struct HermitianDefect {
  MatrixField J;           // J of the pair associated with omega
  TensorField associated;  // omega(X,Y) - g(JX,Y)
  MatrixField square;      // J^2 + Id
  TensorField nijenhuis;   // N_J(X,Y), slots (output, X, Y)
};
/// J comes from the bivector pi(a,b) = omega(sharp_omega a, sharp_omega b) and g.
HermitianDefect hermitian_defects(const TensorField& omega, const MetricStructure& m,
                                  std::span<const Point> points = {});

/// N_J(X,Y) = [JX,JY] - J[JX,Y] - J[X,JY] + J^2[X,Y].
TensorField nijenhuis(const MatrixField& J);

/// J o sharp - sharp o J*.
MatrixField j_intertwine_defect(const JacobiPair& pair, const MetricStructure& m);

struct ConformalDefect {
  TensorField connection;  // Gamma of e^f g minus the conformal-change formula, slots (k, i, j)
  TensorField lambda;      // Lambda_f, three down slots
  TensorField bridge;      // nabla^f(e^f omega) - e^f Lambda_f
  TensorField nabla_omega; // nabla omega(X,Y,Z) = (nabla_X omega)(Y,Z)
};
ConformalDefect conformal_machinery(const TensorField& omega, const MetricStructure& m, const ScalarField& f,
                                    std::span<const Point> points = {});

/// (nabla_a omega)_{bc} as a tensor with three down slots.
TensorField nabla_tensor(const ConnectionPack& cp, const TensorField& omega);

}  // namespace jgeo
