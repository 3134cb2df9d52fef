#pragma once

// Tensor fields with dense component storage on one chart.
//
// Conventions (the determinant convention, no 1/p! factors):
//   (a ^ b)(X,Y)  = a(X) b(Y) - a(Y) b(X), graded by shuffles
//   d a(X,Y)      = X(a(Y)) - Y(a(X)) - a([X,Y])
//   sharp_pi(a)^i = sum_j a_j pi^{ji}, so b(sharp_pi a) = pi(a, b)
//   [pi,pi]       normalized so that
//                 g(sharp[a,b]_pi) - g([sharp a, sharp b]) = 1/2 [pi,pi](a,b,g)

#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <vector>

#include "jgeo/chart.hpp"
#include "jgeo/defect.hpp"
#include "jgeo/expr.hpp"

namespace jgeo {

enum class Slot : std::uint8_t { Up, Down };

class TensorField {
 public:
  /// `components` is the full table in row-major multi-index order.
  TensorField(ChartPtr chart, std::vector<Slot> variance, bool skew, std::vector<ScalarField> components);

  static TensorField zero(ChartPtr chart, std::vector<Slot> variance, bool skew);
  static TensorField scalar(ChartPtr chart, ScalarField f);
  static TensorField vector(ChartPtr chart, std::vector<ScalarField> components);
  static TensorField one_form(ChartPtr chart, std::vector<ScalarField> components);
  /// Coordinate vector field d/dx^i.
  static TensorField basis_vector(ChartPtr chart, int i);
  /// Coordinate differential dx^i.
  static TensorField basis_form(ChartPtr chart, int i);
  /// Antisymmetric tensor given on strictly increasing multi-indices; missing
  /// entries are zero, the rest is filled by antisymmetry.
  static TensorField skew_from(ChartPtr chart, Slot direction, int degree,
                               const std::map<std::vector<int>, ScalarField>& increasing);

  const ChartPtr& chart() const noexcept { return chart_; }
  int dim() const noexcept { return dim_; }
  int rank() const noexcept { return static_cast<int>(variance_.size()); }
  const std::vector<Slot>& variance() const noexcept { return variance_; }
  bool is_skew() const noexcept { return skew_; }
  bool is_scalar() const noexcept { return variance_.empty(); }
  bool is_vector() const noexcept { return variance_.size() == 1 && variance_[0] == Slot::Up; }
  bool is_one_form() const noexcept { return variance_.size() == 1 && variance_[0] == Slot::Down; }

  const std::vector<ScalarField>& components() const noexcept { return comps_; }
  const ScalarField& at(std::span<const int> index) const;
  const ScalarField& operator()(std::initializer_list<int> index) const;
  const ScalarField& operator[](int i) const;  // rank-1 shorthand
  ScalarField as_scalar() const;

  std::size_t flat_index(std::span<const int> index) const;

 private:
  ChartPtr chart_;
  int dim_;
  std::vector<Slot> variance_;
  bool skew_;
  std::vector<ScalarField> comps_;
};

TensorField operator+(const TensorField& a, const TensorField& b);
TensorField operator-(const TensorField& a, const TensorField& b);
TensorField operator-(const TensorField& a);
TensorField operator*(const ScalarField& f, const TensorField& t);
TensorField operator*(double c, const TensorField& t);

/// Calls fn(index) for every multi-index of the given rank, row-major.
template <typename Fn>
void for_each_index(int dim, int rank, Fn&& fn) {
  std::vector<int> idx(rank, 0);
  for (;;) {
    fn(std::span<const int>(idx));
    int k = rank - 1;
    while (k >= 0 && ++idx[k] == dim) idx[k--] = 0;
    if (k < 0) return;
  }
}

/// a(X) for a 1-form and a vector field.
ScalarField pairing(const TensorField& form, const TensorField& vec);

/// Full contraction T(arg_0, ..., arg_{r-1}); vectors feed Down slots and
/// 1-forms feed Up slots.
ScalarField evaluate(const TensorField& t, std::span<const TensorField> args);
ScalarField evaluate(const TensorField& t, std::initializer_list<TensorField> args);

/// Inserts `arg` into the first slot.
TensorField contract_first(const TensorField& t, const TensorField& arg);

/// X(f).
ScalarField directional(const TensorField& vec, const ScalarField& f);

/// df as a 1-form.
TensorField differential(const ChartPtr& chart, const ScalarField& f);

TensorField wedge(const TensorField& a, const TensorField& b);
TensorField exterior_derivative(const TensorField& a);
TensorField interior_product(const TensorField& vec, const TensorField& form);
TensorField lie_bracket(const TensorField& x, const TensorField& y);
TensorField lie_derivative(const TensorField& vec, const TensorField& t);
/// Schouten-Nijenhuis bracket [pi,pi] of a bivector field.
TensorField schouten_bb(const TensorField& pi);

/// Compares two tensors of the same shape at every point, on the coordinate
/// frame and on `random_frames` random numeric frames per point.
Measurement measure_tensor(const TensorField& lhs, const TensorField& rhs, std::span<const Point> points,
                           int random_frames = 5, std::uint64_t frame_seed = 0x5eed);
/// Same with rhs = 0.
Measurement measure_tensor(const TensorField& defect, std::span<const Point> points, int random_frames = 5,
                           std::uint64_t frame_seed = 0x5eed);

void require_same_chart(const TensorField& a, const TensorField& b, const char* where);

}  // namespace jgeo
