#pragma once

// Square matrices of scalar fields. Column-vector convention throughout:
// applying M to v gives (Mv)_i = sum_j M(i,j) v_j.

#include <span>
#include <vector>

#include "jgeo/chart.hpp"
#include "jgeo/defect.hpp"
#include "jgeo/expr.hpp"
#include "jgeo/tensor.hpp"

namespace jgeo {

/// What the matrix maps, which fixes the variance of its input and output.
enum class MatrixRole {
  Generic,         // same variance in and out
  Metric,          // vectors -> 1-forms, symmetric
  Flat,            // vectors -> 1-forms
  Sharp,           // 1-forms -> vectors
  Endomorphism,    // vectors -> vectors
  CoEndomorphism,  // 1-forms -> 1-forms
};

class MatrixField {
 public:
  MatrixField(ChartPtr chart, std::vector<std::vector<ScalarField>> rows, MatrixRole role = MatrixRole::Generic);

  static MatrixField identity(ChartPtr chart, MatrixRole role = MatrixRole::Endomorphism);
  static MatrixField zero(ChartPtr chart, MatrixRole role = MatrixRole::Generic);
  /// Entry (i,j) = T(i,j) of a rank-2 tensor.
  static MatrixField from_tensor(const TensorField& t, MatrixRole role);

  const ChartPtr& chart() const noexcept { return chart_; }
  int size() const noexcept { return n_; }
  MatrixRole role() const noexcept { return role_; }
  const ScalarField& operator()(int i, int j) const { return e_[static_cast<std::size_t>(i * n_ + j)]; }
  const std::vector<ScalarField>& entries() const noexcept { return e_; }
  MatrixField with_role(MatrixRole role) const;

  bool is_diagonal() const;
  bool is_structurally_symmetric() const;

 private:
  MatrixField(ChartPtr chart, int n, std::vector<ScalarField> flat, MatrixRole role);
  friend MatrixField operator*(const MatrixField&, const MatrixField&);
  friend MatrixField operator+(const MatrixField&, const MatrixField&);
  friend MatrixField operator-(const MatrixField&, const MatrixField&);
  friend MatrixField operator*(const ScalarField&, const MatrixField&);
  friend MatrixField transpose(const MatrixField&);
  friend MatrixField adjugate(const MatrixField&);
  friend MatrixField matrix_inverse(const MatrixField&);

  ChartPtr chart_;
  int n_;
  std::vector<ScalarField> e_;
  MatrixRole role_;
};

/// Products compose roles where that makes sense, otherwise Generic.
MatrixField operator*(const MatrixField& a, const MatrixField& b);
MatrixField operator+(const MatrixField& a, const MatrixField& b);
MatrixField operator-(const MatrixField& a, const MatrixField& b);
MatrixField operator-(const MatrixField& a);
MatrixField operator*(const ScalarField& f, const MatrixField& m);
MatrixField operator*(double c, const MatrixField& m);
MatrixField transpose(const MatrixField& m);

ScalarField determinant(const MatrixField& m);
MatrixField adjugate(const MatrixField& m);

/// Symbolic inverse adj(M)/det(M). The inverse of a Flat is a Sharp and vice
/// versa; an inverse metric is a Sharp (the cometric).
MatrixField matrix_inverse(const MatrixField& m);
/// Same, after certifying |det M| > 1e-12 at every point; throws
/// SingularError carrying the first bad point.
MatrixField matrix_inverse(const MatrixField& m, std::span<const Point> points);

/// Applies the matrix to a vector field or 1-form; the role decides which
/// input variance is accepted and what comes out.
TensorField apply(const MatrixField& m, const TensorField& v);

/// Rank-2 tensor with the same entries; variance follows the role
/// (Metric/Flat: down-down, Sharp: up-up, Endomorphism: up-down,
/// CoEndomorphism: down-up).
TensorField to_tensor(const MatrixField& m);

/// Entrywise comparison over the points.
Measurement measure_matrix(const MatrixField& lhs, const MatrixField& rhs, std::span<const Point> points);

/// Matrix of a 2-form: W(i,j) = w_{ij}. As a Flat it is X -> -i_X w.
MatrixField matrix_of_two_form(const TensorField& w);

/// Bivector with components P(i,j) (the antisymmetric part is not taken;
/// callers pass antisymmetric matrices).
TensorField bivector_from_matrix(const MatrixField& p);

}  // namespace jgeo
