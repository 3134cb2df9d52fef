#include "jgeo/metric.hpp"

#include "jgeo/error.hpp"

namespace jgeo {
namespace {

ScalarField bilinear(const MatrixField& m, const TensorField& a, const TensorField& b) {
  const int n = m.size();
  ScalarField s;
  for (int i = 0; i < n; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < n; ++j) {
      if (b[j].is_zero() || m(i, j).is_zero()) continue;
      s += a[i] * m(i, j) * b[j];
    }
  }
  return s;
}

}  // namespace

MetricStructure MetricStructure::make(const MatrixField& g, std::span<const Point> points) {
  if (!g.is_structurally_symmetric()) throw DimensionError("metric matrix is not symmetric");
  MatrixField gm = g.with_role(MatrixRole::Metric);
  MatrixField inv = matrix_inverse(gm, points);
  const int n = g.size();
  std::vector<MatrixField> dg, dinv;
  for (int l = 0; l < n; ++l) {
    std::vector<std::vector<ScalarField>> rows(n, std::vector<ScalarField>(n));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) rows[i][j] = partial(g(i, j), l);
    }
    MatrixField d(g.chart(), std::move(rows), MatrixRole::Flat);
    dinv.push_back(-(inv * d * inv));
    dg.push_back(std::move(d));
  }
  return MetricStructure{gm, inv, determinant(gm), std::move(dg), std::move(dinv)};
}

ScalarField metric(const MetricStructure& m, const TensorField& x, const TensorField& y) {
  if (!x.is_vector() || !y.is_vector()) throw DimensionError("g takes vector fields");
  return bilinear(m.g, x, y);
}

ScalarField cometric(const MetricStructure& m, const TensorField& a, const TensorField& b) {
  if (!a.is_one_form() || !b.is_one_form()) throw DimensionError("g* takes 1-forms");
  return bilinear(m.g_inv, a, b);
}

ScalarField cometric_directional(const MetricStructure& m, const TensorField& v, const TensorField& a,
                                 const TensorField& b) {
  const int n = m.dim();
  ScalarField s;
  for (int l = 0; l < n; ++l) {
    if (v[l].is_zero()) continue;
    std::vector<ScalarField> da(n), db(n);
    for (int i = 0; i < n; ++i) {
      da[i] = partial(a[i], l);
      db[i] = partial(b[i], l);
    }
    TensorField ta = TensorField::one_form(a.chart(), std::move(da));
    TensorField tb = TensorField::one_form(b.chart(), std::move(db));
    ScalarField t = bilinear(m.g_inv, ta, b) + bilinear(m.g_inv, a, tb) + bilinear(m.dg_inv[l], a, b);
    s += v[l] * t;
  }
  return s;
}

TensorField flat_g(const MetricStructure& m, const TensorField& x) { return apply(m.g, x); }
TensorField sharp_g(const MetricStructure& m, const TensorField& a) { return apply(m.g_inv, a); }

Endomorphisms build_J(const TensorField& pi, const MetricStructure& m) {
  MatrixField p = MatrixField::from_tensor(pi, MatrixRole::Sharp);
  MatrixField J = -(p * m.g);
  MatrixField Js = -(m.g * p);
  return {J.with_role(MatrixRole::Endomorphism), Js.with_role(MatrixRole::CoEndomorphism)};
}

ConnectionPack christoffel(const MetricStructure& m) {
  const int n = m.dim();
  // first kind: [ij,l] = 1/2 (d_i g_jl + d_j g_il - d_l g_ij)
  std::vector<ScalarField> first(static_cast<std::size_t>(n) * n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < n; ++l) {
        ScalarField s = m.dg[i](j, l) + m.dg[j](i, l) - m.dg[l](i, j);
        first[(i * n + j) * n + l] = s.is_zero() ? s : 0.5 * s;
      }
    }
  }
  std::vector<ScalarField> gamma(first.size());
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        ScalarField s;
        for (int l = 0; l < n; ++l) {
          const ScalarField& f = first[(i * n + j) * n + l];
          if (f.is_zero() || m.g_inv(k, l).is_zero()) continue;
          s += m.g_inv(k, l) * f;
        }
        gamma[(k * n + i) * n + j] = s;
        gamma[(k * n + j) * n + i] = s;
      }
    }
  }
  return ConnectionPack{m, std::move(gamma)};
}

TensorField covariant_derivative(const ConnectionPack& cp, const TensorField& x, const TensorField& t) {
  if (!x.is_vector()) throw DimensionError("covariant derivative along a non-vector");
  require_same_chart(x, t, "covariant derivative");
  const int n = t.dim();
  const int r = t.rank();
  // A(a,m) = sum_l X^l Gamma^a_{l m}
  std::vector<ScalarField> A(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int mi = 0; mi < n; ++mi) {
      ScalarField s;
      for (int l = 0; l < n; ++l) {
        if (x[l].is_zero() || cp(a, l, mi).is_zero()) continue;
        s += x[l] * cp(a, l, mi);
      }
      A[a * n + mi] = s;
    }
  }
  std::vector<ScalarField> c(t.components().size());
  std::size_t flat = 0;
  std::vector<int> j;
  for_each_index(n, r, [&](std::span<const int> idx) {
    ScalarField s = directional(x, t.components()[flat]);
    j.assign(idx.begin(), idx.end());
    for (int k = 0; k < r; ++k) {
      const int orig = idx[k];
      for (int mi = 0; mi < n; ++mi) {
        j[k] = mi;
        const ScalarField& tc = t.at(j);
        if (tc.is_zero()) continue;
        if (t.variance()[k] == Slot::Up) {
          if (!A[orig * n + mi].is_zero()) s += A[orig * n + mi] * tc;
        } else {
          if (!A[mi * n + orig].is_zero()) s -= A[mi * n + orig] * tc;
        }
      }
      j[k] = orig;
    }
    c[flat++] = s;
  });
  return TensorField(t.chart(), t.variance(), t.is_skew(), std::move(c));
}

MatrixField covariant_derivative(const ConnectionPack& cp, const TensorField& x, const MatrixField& a) {
  if (a.role() != MatrixRole::Endomorphism) throw DimensionError("expected an endomorphism field");
  TensorField d = covariant_derivative(cp, x, to_tensor(a));
  return MatrixField::from_tensor(d, MatrixRole::Endomorphism);
}

TensorField lambda_g(const JacobiPair& pair, const MetricStructure& m, const MatrixField& J) {
  const TensorField& xi = pair.xi;
  return metric(m, xi, xi) * flat_g(m, xi) - flat_g(m, apply(J, xi));
}

namespace {
Endomorphisms checked_J(const JacobiPair& pair, const MetricStructure& m) {
  if (m.dim() != pair.pi.dim()) throw DimensionError("metric and pair dimensions differ");
  return build_J(pair.pi, m);
}
}  // namespace

ContravariantPack::ContravariantPack(JacobiPair p, MetricStructure m)
    : pair(std::move(p)),
      metric(std::move(m)),
      J(checked_J(pair, metric).J),
      J_star(build_J(pair.pi, metric).J_star),
      lambda_g(jgeo::lambda_g(pair, metric, J)),
      data(pair, lambda_g) {}

TensorField contravariant_D(const ContravariantPack& p, const TensorField& a, const TensorField& b) {
  const int n = p.metric.dim();
  const ChartPtr& chart = p.chart();
  const MetricStructure& m = p.metric;
  TensorField sa = sharp_pi_xi(p.pair, a);
  TensorField sb = sharp_pi_xi(p.pair, b);
  TensorField ab = lambda_bracket(p.data, a, b);
  std::vector<ScalarField> c(n);
  for (int k = 0; k < n; ++k) {
    TensorField dk = TensorField::basis_form(chart, k);
    TensorField sk = sharp_pi_xi(p.pair, dk);
    ScalarField s = cometric_directional(m, sa, b, dk) + cometric_directional(m, sb, a, dk) -
                    cometric_directional(m, sk, a, b) - cometric(m, lambda_bracket(p.data, b, dk), a) -
                    cometric(m, lambda_bracket(p.data, a, dk), b) + cometric(m, ab, dk);
    c[k] = 0.5 * s;
  }
  return flat_g(m, TensorField::vector(chart, std::move(c)));
}

ScalarField D_tensor_pi(const ContravariantPack& p, const TensorField& a, const TensorField& b,
                        const TensorField& c) {
  const TensorField& pi = p.pair.pi;
  return directional(sharp_pi_xi(p.pair, a), evaluate(pi, {b, c})) - evaluate(pi, {contravariant_D(p, a, b), c}) -
         evaluate(pi, {b, contravariant_D(p, a, c)});
}

TensorField D_J_star(const ContravariantPack& p, const TensorField& a, const TensorField& b) {
  return contravariant_D(p, a, apply(p.J_star, b)) - apply(p.J_star, contravariant_D(p, a, b));
}

ScalarField metric_compatibility_defect(const ContravariantPack& p, const TensorField& a, const TensorField& b,
                                        const TensorField& c) {
  const MetricStructure& m = p.metric;
  return cometric_directional(m, sharp_pi_xi(p.pair, a), b, c) - cometric(m, contravariant_D(p, a, b), c) -
         cometric(m, b, contravariant_D(p, a, c));
}

TensorField symmetry_defect(const ContravariantPack& p, const TensorField& a, const TensorField& b) {
  return contravariant_D(p, a, b) - contravariant_D(p, b, a) - lambda_bracket(p.data, a, b);
}

TensorField anchor_intertwine_defect(const ContravariantPack& p, const ConnectionPack& cp, const TensorField& a,
                                     const TensorField& b) {
  return sharp_pi_xi(p.pair, contravariant_D(p, a, b)) -
         covariant_derivative(cp, sharp_pi_xi(p.pair, a), sharp_pi_xi(p.pair, b));
}

ScalarField isometry_defect(const JacobiPair& pair, const MetricStructure& m, const TensorField& a,
                            const TensorField& b) {
  return metric(m, sharp_pi_xi(pair, a), sharp_pi_xi(pair, b)) - cometric(m, a, b);
}

}  // namespace jgeo
