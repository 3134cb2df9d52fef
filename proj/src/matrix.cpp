#include "jgeo/matrix.hpp"

#include <cmath>
#include <bit>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>

#include "jgeo/error.hpp"

namespace jgeo {
namespace {

struct Mapping {
  Slot in;
  Slot out;
};

std::optional<Mapping> mapping_of(MatrixRole r) {
  switch (r) {
    case MatrixRole::Metric:
    case MatrixRole::Flat:
      return Mapping{Slot::Up, Slot::Down};
    case MatrixRole::Sharp:
      return Mapping{Slot::Down, Slot::Up};
    case MatrixRole::Endomorphism:
      return Mapping{Slot::Up, Slot::Up};
    case MatrixRole::CoEndomorphism:
      return Mapping{Slot::Down, Slot::Down};
    case MatrixRole::Generic:
      break;
  }
  return std::nullopt;
}

MatrixRole role_of(Mapping m) {
  if (m.in == Slot::Up) return m.out == Slot::Down ? MatrixRole::Flat : MatrixRole::Endomorphism;
  return m.out == Slot::Up ? MatrixRole::Sharp : MatrixRole::CoEndomorphism;
}

void require_same(const MatrixField& a, const MatrixField& b, const char* where) {
  if (a.size() != b.size()) throw DimensionError(std::string(where) + ": matrix sizes differ");
  if (a.chart() != b.chart() && a.chart()->coords() != b.chart()->coords()) {
    throw DimensionError(std::string(where) + ": matrices live on different charts");
  }
}

// Determinant of the submatrix on rows [n-k, n) and the columns in `cols`,
// expanded along its first row; memoized by column set.
class Minors {
 public:
  Minors(const MatrixField& m, std::vector<int> rows) : m_(m), rows_(std::move(rows)) {}

  ScalarField det(unsigned cols) {
    const int k = std::popcount(cols);
    if (k == 0) return ScalarField::constant(1.0);
    if (auto it = memo_.find(cols); it != memo_.end()) return it->second;
    const int row = rows_[rows_.size() - k];
    ScalarField sum;
    int sign = 1;
    for (int c = 0; c < m_.size(); ++c) {
      if (!(cols & (1u << c))) continue;
      const ScalarField& a = m_(row, c);
      if (!a.is_zero()) {
        ScalarField term = a * det(cols & ~(1u << c));
        sum = sign > 0 ? sum + term : sum - term;
      }
      sign = -sign;
    }
    memo_.emplace(cols, sum);
    return sum;
  }

 private:
  const MatrixField& m_;
  std::vector<int> rows_;
  std::unordered_map<unsigned, ScalarField> memo_;
};

}  // namespace

MatrixField::MatrixField(ChartPtr chart, int n, std::vector<ScalarField> flat, MatrixRole role)
    : chart_(std::move(chart)), n_(n), e_(std::move(flat)), role_(role) {}

MatrixField::MatrixField(ChartPtr chart, std::vector<std::vector<ScalarField>> rows, MatrixRole role)
    : chart_(std::move(chart)), n_(static_cast<int>(rows.size())), role_(role) {
  if (!chart_) throw DimensionError("matrix field without chart");
  if (n_ != chart_->dim()) {
    throw DimensionError("matrix has " + std::to_string(n_) + " rows on a " + std::to_string(chart_->dim()) +
                         "-dimensional chart");
  }
  e_.reserve(static_cast<std::size_t>(n_) * n_);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n_) throw DimensionError("matrix is not square");
    for (const auto& x : r) {
      if (x.max_var() >= n_) throw DimensionError("matrix entry references a coordinate outside the chart");
      e_.push_back(x);
    }
  }
  if (role_ == MatrixRole::Metric && !is_structurally_symmetric()) {
    throw DimensionError("metric matrix is not symmetric");
  }
}

MatrixField MatrixField::identity(ChartPtr chart, MatrixRole role) {
  const int n = chart->dim();
  std::vector<ScalarField> e(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) e[i * n + i] = ScalarField::constant(1.0);
  return MatrixField(std::move(chart), n, std::move(e), role);
}

MatrixField MatrixField::zero(ChartPtr chart, MatrixRole role) {
  const int n = chart->dim();
  return MatrixField(std::move(chart), n, std::vector<ScalarField>(static_cast<std::size_t>(n) * n), role);
}

MatrixField MatrixField::from_tensor(const TensorField& t, MatrixRole role) {
  if (t.rank() != 2) throw DimensionError("matrix from a tensor of rank " + std::to_string(t.rank()));
  MatrixField m(t.chart(), t.dim(), t.components(), role);
  if (role == MatrixRole::Metric && !m.is_structurally_symmetric()) {
    throw DimensionError("metric matrix is not symmetric");
  }
  return m;
}

MatrixField MatrixField::with_role(MatrixRole role) const { return MatrixField(chart_, n_, e_, role); }

bool MatrixField::is_diagonal() const {
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      if (i != j && !(*this)(i, j).is_zero()) return false;
    }
  }
  return true;
}

bool MatrixField::is_structurally_symmetric() const {
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      if (!(*this)(i, j).same((*this)(j, i))) return false;
    }
  }
  return true;
}

MatrixField operator*(const MatrixField& a, const MatrixField& b) {
  require_same(a, b, "matrix product");
  const int n = a.n_;
  std::vector<ScalarField> e(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      ScalarField s;
      for (int k = 0; k < n; ++k) {
        if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
        s += a(i, k) * b(k, j);
      }
      e[i * n + j] = s;
    }
  }
  MatrixRole role = MatrixRole::Generic;
  auto ma = mapping_of(a.role_);
  auto mb = mapping_of(b.role_);
  if (ma && mb && ma->in == mb->out) role = role_of({mb->in, ma->out});
  return MatrixField(a.chart_, n, std::move(e), role);
}

MatrixField operator+(const MatrixField& a, const MatrixField& b) {
  require_same(a, b, "matrix sum");
  std::vector<ScalarField> e(a.e_.size());
  for (std::size_t k = 0; k < e.size(); ++k) e[k] = a.e_[k] + b.e_[k];
  return MatrixField(a.chart_, a.n_, std::move(e), a.role_ == b.role_ ? a.role_ : MatrixRole::Generic);
}

MatrixField operator-(const MatrixField& a, const MatrixField& b) {
  require_same(a, b, "matrix difference");
  std::vector<ScalarField> e(a.e_.size());
  for (std::size_t k = 0; k < e.size(); ++k) e[k] = a.e_[k] - b.e_[k];
  return MatrixField(a.chart_, a.n_, std::move(e), a.role_ == b.role_ ? a.role_ : MatrixRole::Generic);
}

MatrixField operator-(const MatrixField& a) { return ScalarField::constant(-1.0) * a; }

MatrixField operator*(const ScalarField& f, const MatrixField& m) {
  std::vector<ScalarField> e(m.e_.size());
  for (std::size_t k = 0; k < e.size(); ++k) e[k] = f * m.e_[k];
  return MatrixField(m.chart_, m.n_, std::move(e), m.role_);
}

MatrixField transpose(const MatrixField& m) {
  const int n = m.n_;
  std::vector<ScalarField> e(m.e_.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) e[j * n + i] = m(i, j);
  }
  return MatrixField(m.chart_, n, std::move(e), m.role_);
}

ScalarField determinant(const MatrixField& m) {
  const int n = m.size();
  if (m.is_diagonal()) {
    ScalarField p = ScalarField::constant(1.0);
    for (int i = 0; i < n; ++i) p = p * m(i, i);
    return p;
  }
  std::vector<int> rows(n);
  for (int i = 0; i < n; ++i) rows[i] = i;
  return Minors(m, rows).det((1u << n) - 1);
}

MatrixField adjugate(const MatrixField& m) {
  const int n = m.n_;
  std::vector<ScalarField> e(m.e_.size());
  if (n == 1) {
    e[0] = ScalarField::constant(1.0);
    return MatrixField(m.chart_, n, std::move(e), m.role_);
  }
  const unsigned all = (1u << n) - 1;
  for (int i = 0; i < n; ++i) {
    // minors with row i deleted share one memo table
    std::vector<int> rows;
    for (int r = 0; r < n; ++r) {
      if (r != i) rows.push_back(r);
    }
    Minors minors(m, rows);
    for (int j = 0; j < n; ++j) {
      ScalarField c = minors.det(all & ~(1u << j));
      // adj(M)(j,i) = (-1)^{i+j} det M without row i and column j
      e[j * n + i] = ((i + j) % 2 == 0) ? c : -c;
    }
  }
  return MatrixField(m.chart_, n, std::move(e), m.role_);
}

MatrixField matrix_inverse(const MatrixField& m) {
  MatrixRole role = MatrixRole::Generic;
  if (auto mp = mapping_of(m.role_)) role = role_of({mp->out, mp->in});
  const int n = m.n_;
  std::vector<ScalarField> e(m.e_.size());
  if (m.is_diagonal()) {
    for (int i = 0; i < n; ++i) e[i * n + i] = ScalarField::constant(1.0) / m(i, i);
    return MatrixField(m.chart_, n, std::move(e), role);
  }
  ScalarField det = determinant(m);
  if (det.is_zero()) throw SingularError("matrix field is identically singular", {});
  MatrixField adj = adjugate(m);
  for (std::size_t k = 0; k < e.size(); ++k) e[k] = adj.e_[k].is_zero() ? ScalarField() : adj.e_[k] / det;
  return MatrixField(m.chart_, n, std::move(e), role);
}

MatrixField matrix_inverse(const MatrixField& m, std::span<const Point> points) {
  ScalarField det = determinant(m);
  for (const auto& p : points) {
    double d = eval_scalar(det, p);
    if (!(std::abs(d) > 1e-12)) {
      std::string where;
      for (std::size_t i = 0; i < p.size(); ++i) {
        where += (i ? ", " : "") + m.chart()->coords()[i] + "=" + std::to_string(p[i]);
      }
      throw SingularError("matrix field is singular at (" + where + ")", p);
    }
  }
  return matrix_inverse(m);
}

TensorField apply(const MatrixField& m, const TensorField& v) {
  if (v.rank() != 1) throw DimensionError("matrices act on vector fields and 1-forms");
  if (m.size() != v.dim()) throw DimensionError("matrix and argument dimensions differ");
  Slot in = v.variance()[0];
  Slot out = in;
  if (auto mp = mapping_of(m.role())) {
    if (mp->in != in) throw DimensionError("matrix applied to an argument of the wrong variance");
    out = mp->out;
  }
  const int n = m.size();
  std::vector<ScalarField> c(n);
  for (int i = 0; i < n; ++i) {
    ScalarField s;
    for (int j = 0; j < n; ++j) {
      if (m(i, j).is_zero() || v[j].is_zero()) continue;
      s += m(i, j) * v[j];
    }
    c[i] = s;
  }
  return TensorField(v.chart(), {out}, true, std::move(c));
}

TensorField to_tensor(const MatrixField& m) {
  std::vector<Slot> var;
  switch (m.role()) {
    case MatrixRole::Metric:
    case MatrixRole::Flat:
      var = {Slot::Down, Slot::Down};
      break;
    case MatrixRole::Sharp:
      var = {Slot::Up, Slot::Up};
      break;
    case MatrixRole::Endomorphism:
      var = {Slot::Up, Slot::Down};
      break;
    case MatrixRole::CoEndomorphism:
      var = {Slot::Down, Slot::Up};
      break;
    case MatrixRole::Generic:
      throw DimensionError("generic matrix has no tensor variance");
  }
  return TensorField(m.chart(), std::move(var), false, m.entries());
}

Measurement measure_matrix(const MatrixField& lhs, const MatrixField& rhs, std::span<const Point> points) {
  require_same(lhs, rhs, "measure_matrix");
  return measure_difference(lhs.entries(), rhs.entries(), points);
}

MatrixField matrix_of_two_form(const TensorField& w) {
  if (w.rank() != 2 || !w.is_skew() || w.variance()[0] != Slot::Down) {
    throw DimensionError("expected a 2-form");
  }
  return MatrixField::from_tensor(w, MatrixRole::Flat);
}

TensorField bivector_from_matrix(const MatrixField& p) {
  return TensorField(p.chart(), {Slot::Up, Slot::Up}, true, p.entries());
}

}  // namespace jgeo

namespace jgeo {
MatrixField operator*(double c, const MatrixField& m) { return ScalarField::constant(c) * m; }
}  // namespace jgeo
