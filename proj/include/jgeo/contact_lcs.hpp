#pragma once

// Contact forms and locally conformally symplectic structures together with
// their associated Jacobi pairs.
//
// Functions that invert a matrix field take the sample points on which
// nondegeneracy is certified; an empty span skips the certification.

#include <span>

#include "jgeo/jacobi.hpp"
#include "jgeo/matrix.hpp"
#include "jgeo/tensor.hpp"

namespace jgeo {

struct ContactStructure {
  TensorField eta;
  explicit ContactStructure(TensorField eta);
  const ChartPtr& chart() const noexcept { return eta.chart(); }
};

struct LcsStructure {
  TensorField omega;
  TensorField theta;
  LcsStructure(TensorField omega, TensorField theta);
  const ChartPtr& chart() const noexcept { return omega.chart(); }
};

struct VolumeCheck {
  ScalarField component;  // coefficient of dx^0 ^ ... ^ dx^{2n} in eta ^ (d eta)^n
  bool nonvanishing;      // |component| > threshold at every point
};
VolumeCheck contact_volume_defect(const ContactStructure& c, std::span<const Point> points,
                                  double threshold = 1e-9);

/// Matrix of flat_eta(X) = -i_X d eta + eta(X) eta.
MatrixField flat_eta_matrix(const ContactStructure& c);
MatrixField sharp_eta_matrix(const ContactStructure& c, std::span<const Point> points = {});
TensorField flat_eta(const ContactStructure& c, const TensorField& x);
TensorField sharp_eta(const ContactStructure& c, const TensorField& alpha, std::span<const Point> points = {});

/// xi = sharp_eta(eta).
TensorField reeb_field(const ContactStructure& c, std::span<const Point> points = {});

/// pi(a,b) = d eta(sharp_eta a, sharp_eta b), xi = Reeb field.
JacobiPair contact_jacobi(const ContactStructure& c, std::span<const Point> points = {});

struct LcsDefect {
  TensorField closure;  // d omega + theta ^ omega
  TensorField dtheta;   // d theta
};
LcsDefect lcs_defect(const LcsStructure& s);

/// Matrix of flat_omega(X) = -i_X omega, and its inverse.
MatrixField flat_omega_matrix(const LcsStructure& s);
MatrixField sharp_omega_matrix(const LcsStructure& s, std::span<const Point> points = {});

/// pi(a,b) = omega(sharp_omega a, sharp_omega b), xi = sharp_omega(theta).
JacobiPair lcs_jacobi(const LcsStructure& s, std::span<const Point> points = {});

struct LcsTransferDefect {
  ScalarField closure;  // (d omega + theta^omega)(X,Y,Z) - (1/2[pi,pi] - xi^pi)(a,b,c)
  ScalarField lie;      // (L_xi omega)(X,Y) + (L_xi pi)(a,b)
};
/// X = sharp_pi(a) and so on, with (pi, xi) = lcs_jacobi(s). Holds for any
/// nondegenerate omega and any theta.
LcsTransferDefect lcs_transfer_defect(const LcsStructure& s, const JacobiPair& pair, const TensorField& a,
                             const TensorField& b, const TensorField& c);

}  // namespace jgeo
