#pragma once

// Random polynomial fields for property tests. Coefficients are multiples of
// 1/4 so that every generated field is exactly representable.

#include "jgeo/chart.hpp"
#include "jgeo/expr.hpp"
#include "jgeo/matrix.hpp"
#include "jgeo/tensor.hpp"

namespace jgeo {

/// Polynomial of total degree <= `degree`; about half the monomials appear.
ScalarField random_scalar(const Chart& chart, Rng& rng, int degree = 2);

TensorField random_vector(const ChartPtr& chart, Rng& rng, int degree = 2);
TensorField random_one_form(const ChartPtr& chart, Rng& rng, int degree = 2);
TensorField random_bivector(const ChartPtr& chart, Rng& rng, int degree = 2);
TensorField random_two_form(const ChartPtr& chart, Rng& rng, int degree = 2);

/// Standard symplectic form on an even chart plus a small polynomial
/// perturbation, nondegenerate on [-1,1]^dim.
TensorField random_nondegenerate_two_form(const ChartPtr& chart, Rng& rng);

/// I + B^T B with B a random affine matrix: positive definite everywhere.
MatrixField random_metric(const ChartPtr& chart, Rng& rng);

}  // namespace jgeo
