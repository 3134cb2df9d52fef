#include "jgeo/tensor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "jgeo/error.hpp"

namespace jgeo {
namespace {

std::size_t ipow(int base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

// Sign of the permutation sorting `idx`, 0 if it has a repeated entry.
int sort_sign(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] > idx[j]; --j) {
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < idx.size(); ++i) {
    if (idx[i] == idx[i - 1]) return 0;
  }
  return sign;
}

bool all_same_direction(const std::vector<Slot>& v) {
  return std::all_of(v.begin(), v.end(), [&](Slot s) { return s == v.front(); });
}

// Builds a skew tensor from a function of strictly increasing multi-indices.
template <typename Fn>
TensorField build_skew(const ChartPtr& chart, Slot dir, int degree, Fn&& value_at) {
  const int n = chart->dim();
  std::vector<ScalarField> comps(ipow(n, degree));
  if (degree <= n) {
    std::map<std::vector<int>, ScalarField> cache;
    std::size_t flat = 0;
    for_each_index(n, degree, [&](std::span<const int> idx) {
      std::vector<int> sorted(idx.begin(), idx.end());
      int sign = sort_sign(sorted);
      if (sign != 0) {
        auto it = cache.find(sorted);
        if (it == cache.end()) it = cache.emplace(sorted, value_at(std::span<const int>(sorted))).first;
        comps[flat] = sign > 0 ? it->second : -it->second;
      }
      ++flat;
    });
  }
  return TensorField(chart, std::vector<Slot>(degree, dir), true, std::move(comps));
}

}  // namespace

void require_same_chart(const TensorField& a, const TensorField& b, const char* where) {
  if (a.chart() == b.chart()) return;
  if (a.chart()->coords() == b.chart()->coords()) return;
  throw DimensionError(std::string(where) + ": operands live on different charts");
}

TensorField::TensorField(ChartPtr chart, std::vector<Slot> variance, bool skew,
                         std::vector<ScalarField> components)
    : chart_(std::move(chart)), dim_(chart_ ? chart_->dim() : 0), variance_(std::move(variance)),
      skew_(skew), comps_(std::move(components)) {
  if (!chart_) throw DimensionError("tensor field without chart");
  if (comps_.size() != ipow(dim_, rank())) {
    throw DimensionError("tensor field has " + std::to_string(comps_.size()) + " components, expected " +
                         std::to_string(ipow(dim_, rank())));
  }
  if (skew_ && !all_same_direction(variance_)) {
    throw DimensionError("antisymmetric tensor with mixed variance");
  }
  for (const auto& c : comps_) {
    if (c.max_var() >= dim_) throw DimensionError("component references a coordinate outside the chart");
  }
}

TensorField TensorField::zero(ChartPtr chart, std::vector<Slot> variance, bool skew) {
  const std::size_t n = ipow(chart->dim(), static_cast<int>(variance.size()));
  return TensorField(std::move(chart), std::move(variance), skew, std::vector<ScalarField>(n));
}

TensorField TensorField::scalar(ChartPtr chart, ScalarField f) {
  return TensorField(std::move(chart), {}, true, {f});
}

TensorField TensorField::vector(ChartPtr chart, std::vector<ScalarField> components) {
  return TensorField(std::move(chart), {Slot::Up}, true, std::move(components));
}

TensorField TensorField::one_form(ChartPtr chart, std::vector<ScalarField> components) {
  return TensorField(std::move(chart), {Slot::Down}, true, std::move(components));
}

TensorField TensorField::basis_vector(ChartPtr chart, int i) {
  std::vector<ScalarField> c(chart->dim());
  c.at(i) = ScalarField::constant(1.0);
  return vector(std::move(chart), std::move(c));
}

TensorField TensorField::basis_form(ChartPtr chart, int i) {
  std::vector<ScalarField> c(chart->dim());
  c.at(i) = ScalarField::constant(1.0);
  return one_form(std::move(chart), std::move(c));
}

TensorField TensorField::skew_from(ChartPtr chart, Slot direction, int degree,
                                   const std::map<std::vector<int>, ScalarField>& increasing) {
  for (const auto& [idx, f] : increasing) {
    if (static_cast<int>(idx.size()) != degree) throw DimensionError("index word has the wrong degree");
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (idx[k] < 0 || idx[k] >= chart->dim()) throw DimensionError("index outside the chart");
      if (k > 0 && idx[k - 1] >= idx[k]) throw DimensionError("index word is not strictly increasing");
    }
  }
  return build_skew(chart, direction, degree, [&](std::span<const int> idx) {
    auto it = increasing.find(std::vector<int>(idx.begin(), idx.end()));
    return it == increasing.end() ? ScalarField() : it->second;
  });
}

std::size_t TensorField::flat_index(std::span<const int> index) const {
  if (static_cast<int>(index.size()) != rank()) throw DimensionError("index rank mismatch");
  std::size_t flat = 0;
  for (int i : index) {
    if (i < 0 || i >= dim_) throw DimensionError("index outside the chart");
    flat = flat * dim_ + static_cast<std::size_t>(i);
  }
  return flat;
}

const ScalarField& TensorField::at(std::span<const int> index) const { return comps_[flat_index(index)]; }

const ScalarField& TensorField::operator()(std::initializer_list<int> index) const {
  return at(std::span<const int>(index.begin(), index.size()));
}

const ScalarField& TensorField::operator[](int i) const {
  if (rank() != 1) throw DimensionError("operator[] needs a rank-1 tensor");
  return comps_.at(i);
}

ScalarField TensorField::as_scalar() const {
  if (rank() != 0) throw DimensionError("tensor is not a scalar");
  return comps_[0];
}

TensorField operator+(const TensorField& a, const TensorField& b) {
  require_same_chart(a, b, "tensor sum");
  if (a.variance() != b.variance()) throw DimensionError("tensor sum: variance mismatch");
  std::vector<ScalarField> c(a.components().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.components()[i] + b.components()[i];
  return TensorField(a.chart(), a.variance(), a.is_skew() && b.is_skew(), std::move(c));
}

TensorField operator-(const TensorField& a, const TensorField& b) {
  require_same_chart(a, b, "tensor difference");
  if (a.variance() != b.variance()) throw DimensionError("tensor difference: variance mismatch");
  std::vector<ScalarField> c(a.components().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.components()[i] - b.components()[i];
  return TensorField(a.chart(), a.variance(), a.is_skew() && b.is_skew(), std::move(c));
}

TensorField operator-(const TensorField& a) {
  std::vector<ScalarField> c(a.components().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -a.components()[i];
  return TensorField(a.chart(), a.variance(), a.is_skew(), std::move(c));
}

TensorField operator*(const ScalarField& f, const TensorField& t) {
  std::vector<ScalarField> c(t.components().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f * t.components()[i];
  return TensorField(t.chart(), t.variance(), t.is_skew(), std::move(c));
}

TensorField operator*(double c, const TensorField& t) { return ScalarField::constant(c) * t; }

ScalarField pairing(const TensorField& form, const TensorField& vec) {
  if (!form.is_one_form() || !vec.is_vector()) throw DimensionError("pairing needs a 1-form and a vector");
  require_same_chart(form, vec, "pairing");
  ScalarField s;
  for (int i = 0; i < form.dim(); ++i) s += form[i] * vec[i];
  return s;
}

ScalarField evaluate(const TensorField& t, std::span<const TensorField> args) {
  if (static_cast<int>(args.size()) != t.rank()) throw DimensionError("evaluate: wrong number of arguments");
  for (int k = 0; k < t.rank(); ++k) {
    require_same_chart(t, args[k], "evaluate");
    bool ok = t.variance()[k] == Slot::Down ? args[k].is_vector() : args[k].is_one_form();
    if (!ok) throw DimensionError("evaluate: argument " + std::to_string(k) + " has the wrong variance");
  }
  ScalarField sum;
  std::size_t flat = 0;
  for_each_index(t.dim(), t.rank(), [&](std::span<const int> idx) {
    const ScalarField& c = t.components()[flat++];
    if (c.is_zero()) return;
    ScalarField term = c;
    for (int k = 0; k < t.rank() && !term.is_zero(); ++k) term = term * args[k][idx[k]];
    sum += term;
  });
  return sum;
}

ScalarField evaluate(const TensorField& t, std::initializer_list<TensorField> args) {
  return evaluate(t, std::span<const TensorField>(args.begin(), args.size()));
}

TensorField contract_first(const TensorField& t, const TensorField& arg) {
  if (t.rank() < 1) throw DimensionError("contract_first: scalar input");
  require_same_chart(t, arg, "contract_first");
  bool ok = t.variance()[0] == Slot::Down ? arg.is_vector() : arg.is_one_form();
  if (!ok) throw DimensionError("contract_first: argument has the wrong variance");
  const int n = t.dim();
  std::vector<Slot> rest(t.variance().begin() + 1, t.variance().end());
  const std::size_t stride = ipow(n, t.rank() - 1);
  std::vector<ScalarField> c(stride);
  for (std::size_t j = 0; j < stride; ++j) {
    ScalarField s;
    for (int l = 0; l < n; ++l) s += arg[l] * t.components()[l * stride + j];
    c[j] = s;
  }
  return TensorField(t.chart(), std::move(rest), t.is_skew(), std::move(c));
}

ScalarField directional(const TensorField& vec, const ScalarField& f) {
  if (!vec.is_vector()) throw DimensionError("directional derivative needs a vector field");
  ScalarField s;
  for (int l = 0; l < vec.dim(); ++l) {
    if (vec[l].is_zero()) continue;
    s += vec[l] * partial(f, l);
  }
  return s;
}

TensorField differential(const ChartPtr& chart, const ScalarField& f) {
  std::vector<ScalarField> c(chart->dim());
  for (int i = 0; i < chart->dim(); ++i) c[i] = partial(f, i);
  return TensorField::one_form(chart, std::move(c));
}

TensorField wedge(const TensorField& a, const TensorField& b) {
  require_same_chart(a, b, "wedge");
  if (!a.is_skew() || !b.is_skew()) throw DimensionError("wedge needs antisymmetric operands");
  if (a.is_scalar()) return a.as_scalar() * b;
  if (b.is_scalar()) return b.as_scalar() * a;
  if (a.variance().front() != b.variance().front()) throw DimensionError("wedge: mixed variance");
  const Slot dir = a.variance().front();
  const int p = a.rank();
  const int q = b.rank();
  return build_skew(a.chart(), dir, p + q, [&](std::span<const int> idx) {
    // sum over (p,q)-shuffles: choose which positions of idx go to `a`
    ScalarField sum;
    std::vector<int> ia(p), ib(q);
    const int total = p + q;
    for (unsigned mask = 0; mask < (1u << total); ++mask) {
      if (std::popcount(mask) != p) continue;
      int na = 0;
      int nb = 0;
      int inversions = 0;
      for (int k = 0; k < total; ++k) {
        if (mask & (1u << k)) {
          inversions += k - na;
          ia[na++] = idx[k];
        } else {
          ib[nb++] = idx[k];
        }
      }
      ScalarField term = a.at(ia) * b.at(ib);
      sum = (inversions % 2 == 0) ? sum + term : sum - term;
    }
    return sum;
  });
}

TensorField exterior_derivative(const TensorField& a) {
  if (!a.is_scalar() && !(a.is_skew() && a.variance().front() == Slot::Down)) {
    throw DimensionError("exterior derivative needs a differential form");
  }
  const int p = a.rank();
  return build_skew(a.chart(), Slot::Down, p + 1, [&](std::span<const int> idx) {
    ScalarField sum;
    std::vector<int> rest(p);
    for (int k = 0; k <= p; ++k) {
      for (int j = 0, r = 0; j <= p; ++j) {
        if (j != k) rest[r++] = idx[j];
      }
      ScalarField term = partial(a.at(rest), idx[k]);
      sum = (k % 2 == 0) ? sum + term : sum - term;
    }
    return sum;
  });
}

TensorField interior_product(const TensorField& vec, const TensorField& form) {
  if (!vec.is_vector()) throw DimensionError("interior product needs a vector field");
  if (form.rank() < 1) throw DimensionError("interior product of a degree-0 form");
  if (!form.is_skew() || form.variance().front() != Slot::Down) {
    throw DimensionError("interior product needs a differential form");
  }
  return contract_first(form, vec);
}

TensorField lie_bracket(const TensorField& x, const TensorField& y) {
  if (!x.is_vector() || !y.is_vector()) throw DimensionError("Lie bracket needs vector fields");
  require_same_chart(x, y, "Lie bracket");
  const int n = x.dim();
  std::vector<ScalarField> c(n);
  for (int i = 0; i < n; ++i) c[i] = directional(x, y[i]) - directional(y, x[i]);
  return TensorField::vector(x.chart(), std::move(c));
}

TensorField lie_derivative(const TensorField& vec, const TensorField& t) {
  if (!vec.is_vector()) throw DimensionError("Lie derivative along a non-vector");
  require_same_chart(vec, t, "Lie derivative");
  const int n = t.dim();
  const int r = t.rank();
  // dX[l][i] = d_l X^i
  std::vector<std::vector<ScalarField>> dX(n, std::vector<ScalarField>(n));
  for (int l = 0; l < n; ++l) {
    for (int i = 0; i < n; ++i) dX[l][i] = partial(vec[i], l);
  }
  std::vector<ScalarField> c(t.components().size());
  std::size_t flat = 0;
  std::vector<int> j;
  for_each_index(n, r, [&](std::span<const int> idx) {
    ScalarField s = directional(vec, t.components()[flat]);
    j.assign(idx.begin(), idx.end());
    for (int k = 0; k < r; ++k) {
      const int orig = idx[k];
      for (int l = 0; l < n; ++l) {
        j[k] = l;
        const ScalarField& tc = t.at(j);
        if (tc.is_zero()) continue;
        if (t.variance()[k] == Slot::Up) {
          s -= tc * dX[l][orig];
        } else {
          s += tc * dX[orig][l];
        }
      }
      j[k] = orig;
    }
    c[flat++] = s;
  });
  return TensorField(t.chart(), t.variance(), t.is_skew(), std::move(c));
}

TensorField schouten_bb(const TensorField& pi) {
  if (pi.rank() != 2 || !pi.is_skew() || pi.variance().front() != Slot::Up) {
    throw DimensionError("Schouten bracket needs a bivector field");
  }
  const int n = pi.dim();
  return build_skew(pi.chart(), Slot::Up, 3, [&](std::span<const int> idx) {
    const int i = idx[0], j = idx[1], k = idx[2];
    ScalarField s;
    for (int l = 0; l < n; ++l) {
      s += pi({i, l}) * partial(pi({j, k}), l);
      s += pi({j, l}) * partial(pi({k, i}), l);
      s += pi({k, l}) * partial(pi({i, j}), l);
    }
    return -2.0 * s;
  });
}

Measurement measure_tensor(const TensorField& lhs, const TensorField& rhs, std::span<const Point> points,
                           int random_frames, std::uint64_t frame_seed) {
  require_same_chart(lhs, rhs, "measure_tensor");
  if (lhs.variance() != rhs.variance()) throw DimensionError("measure_tensor: variance mismatch");
  const int n = lhs.dim();
  const int r = lhs.rank();
  const std::size_t m = lhs.components().size();
  Rng rng(frame_seed);
  Measurement out;
  std::vector<double> L(m), R(m);
  std::vector<std::vector<double>> frame(r, std::vector<double>(n));
  for (const auto& p : points) {
    Evaluator ev(p);
    for (std::size_t k = 0; k < m; ++k) {
      L[k] = ev(lhs.components()[k]);
      R[k] = ev(rhs.components()[k]);
      out.observe(L[k], R[k]);
    }
    if (r == 0) continue;
    for (int f = 0; f < random_frames; ++f) {
      for (auto& v : frame) {
        for (auto& x : v) x = rng.uniform(-1.0, 1.0);
      }
      double sl = 0.0;
      double sr = 0.0;
      std::size_t flat = 0;
      for_each_index(n, r, [&](std::span<const int> idx) {
        double w = 1.0;
        for (int s = 0; s < r; ++s) w *= frame[s][idx[s]];
        sl += w * L[flat];
        sr += w * R[flat];
        ++flat;
      });
      out.observe(sl, sr);
    }
  }
  return out;
}

Measurement measure_tensor(const TensorField& defect, std::span<const Point> points, int random_frames,
                           std::uint64_t frame_seed) {
  return measure_tensor(defect, TensorField::zero(defect.chart(), defect.variance(), defect.is_skew()), points,
                        random_frames, frame_seed);
}

}  // namespace jgeo
