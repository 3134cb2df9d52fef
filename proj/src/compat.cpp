#include "jgeo/compat.hpp"

#include "jgeo/error.hpp"

namespace jgeo {
namespace {

TensorField down_down(const MatrixField& m) { return to_tensor(m.with_role(MatrixRole::Flat)); }

TensorField column(const MatrixField& m, int j) {
  std::vector<ScalarField> c(m.size());
  for (int i = 0; i < m.size(); ++i) c[i] = m(i, j);
  return TensorField::vector(m.chart(), std::move(c));
}

MatrixField outer(const TensorField& col, const TensorField& row, MatrixRole role) {
  const int n = col.dim();
  std::vector<std::vector<ScalarField>> r(n, std::vector<ScalarField>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!col[i].is_zero() && !row[j].is_zero()) r[i][j] = col[i] * row[j];
    }
  }
  return MatrixField(col.chart(), std::move(r), role);
}

std::size_t idx3(int n, int a, int b, int c) { return static_cast<std::size_t>((a * n + b) * n + c); }

}  // namespace

AlmostContactMetric::AlmostContactMetric(MatrixField p, TensorField x, TensorField e, MetricStructure m)
    : phi(p.with_role(MatrixRole::Endomorphism)), xi(std::move(x)), eta(std::move(e)), g(std::move(m)) {
  if (!xi.is_vector()) throw DimensionError("xi must be a vector field");
  if (!eta.is_one_form()) throw DimensionError("eta must be a 1-form");
  require_same_chart(xi, eta, "almost contact structure");
  if (phi.size() != xi.dim() || g.dim() != xi.dim()) throw DimensionError("almost contact structure: sizes differ");
}

AlmostContactDefect almost_contact_defect(const AlmostContactMetric& s) {
  MatrixField id = MatrixField::identity(s.chart());
  MatrixField sq = s.phi * s.phi + id - outer(s.xi, s.eta, MatrixRole::Endomorphism);
  MatrixField phi_co = transpose(s.phi).with_role(MatrixRole::CoEndomorphism);
  return {sq, pairing(s.eta, s.xi) - 1.0, apply(s.phi, s.xi), apply(phi_co, s.eta)};
}

AcsMetricDefect acs_metric_defect(const AlmostContactMetric& s) {
  const MatrixField& G = s.g.g;
  MatrixField assoc = transpose(s.phi) * G * s.phi - G + outer(s.eta, s.eta, MatrixRole::Generic);
  return {down_down(assoc), flat_g(s.g, s.xi) - s.eta};
}

AcsBivector acs_bivector(const AlmostContactMetric& s) {
  MatrixField p = s.phi * s.g.g_inv;  // pi^{ij} = (Phi G^{-1})(i,j)
  const int n = p.size();
  std::map<std::vector<int>, ScalarField> up;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) up[{i, j}] = p(i, j);
  }
  TensorField pi = TensorField::skew_from(s.chart(), Slot::Up, 2, up);
  MatrixField sym = p + transpose(p);
  return {JacobiPair(pi, s.xi), to_tensor(sym.with_role(MatrixRole::Sharp))};
}

TensorField contact_metric_defect(const AlmostContactMetric& s) {
  MatrixField lhs = s.g.g * s.phi;
  TensorField deta = exterior_derivative(s.eta);
  return down_down(lhs) - TensorField(s.chart(), {Slot::Down, Slot::Down}, false, deta.components());
}

ScalarField compatibility_pi_defect(const ContravariantPack& p, const TensorField& a, const TensorField& b,
                              const TensorField& c) {
  const TensorField& pi = p.pair.pi;
  const TensorField& xi = p.pair.xi;
  const MetricStructure& m = p.metric;
  ScalarField rhs = pairing(c, xi) * evaluate(pi, {a, b}) - pairing(b, xi) * evaluate(pi, {a, c}) -
                    pairing(apply(p.J_star, c), xi) * cometric(m, a, b) +
                    pairing(apply(p.J_star, b), xi) * cometric(m, a, c);
  return D_tensor_pi(p, a, b, c) - 0.5 * rhs;
}

TensorField compatibility_defect(const ContravariantPack& p, const TensorField& a, const TensorField& b) {
  const TensorField& pi = p.pair.pi;
  const TensorField& xi = p.pair.xi;
  const MetricStructure& m = p.metric;
  TensorField fxi = flat_g(m, xi);
  TensorField rhs = evaluate(pi, {a, b}) * fxi - pairing(b, xi) * apply(p.J_star, a) +
                    cometric(m, a, b) * apply(p.J_star, fxi) + pairing(apply(p.J_star, b), xi) * a;
  return D_J_star(p, a, b) - 0.5 * rhs;
}

TensorField half_kenmotsu_defect(const AlmostContactMetric& s, const ConnectionPack& cp, double factor) {
  const int n = s.phi.size();
  const MatrixField& G = s.g.g;
  std::vector<ScalarField> comps(static_cast<std::size_t>(n) * n * n);
  for (int a = 0; a < n; ++a) {
    MatrixField na = covariant_derivative(cp, TensorField::basis_vector(s.chart(), a), s.phi);
    for (int b = 0; b < n; ++b) {
      ScalarField g_phia_b;
      for (int k = 0; k < n; ++k) {
        if (!s.phi(k, a).is_zero() && !G(k, b).is_zero()) g_phia_b += s.phi(k, a) * G(k, b);
      }
      for (int i = 0; i < n; ++i) {
        ScalarField rhs = g_phia_b * s.xi[i] - s.eta[b] * s.phi(i, a);
        comps[idx3(n, i, a, b)] = na(i, b) - factor * rhs;
      }
    }
  }
  return TensorField(s.chart(), {Slot::Up, Slot::Down, Slot::Down}, false, std::move(comps));
}

TensorField derivative_transfer_defect(const ContravariantPack& p, const ConnectionPack& cp, const MatrixField& phi,
                           const TensorField& a, const TensorField& b) {
  MatrixField nphi = covariant_derivative(cp, sharp_pi_xi(p.pair, a), phi.with_role(MatrixRole::Endomorphism));
  return sharp_pi_xi(p.pair, D_J_star(p, a, b)) + apply(nphi, sharp_pi_xi(p.pair, b));
}

MatrixField acs_intertwine_defect(const ContravariantPack& p, const MatrixField& phi) {
  MatrixField A = anchor_matrix(p.pair);
  return A * p.J_star + phi.with_role(MatrixRole::Endomorphism) * A;
}

TensorField nijenhuis(const MatrixField& J) {
  const int n = J.size();
  const ChartPtr& chart = J.chart();
  MatrixField Je = J.with_role(MatrixRole::Endomorphism);
  std::vector<ScalarField> comps(static_cast<std::size_t>(n) * n * n);
  for (int a = 0; a < n; ++a) {
    TensorField ea = TensorField::basis_vector(chart, a);
    TensorField ja = column(Je, a);
    for (int b = 0; b < n; ++b) {
      TensorField eb = TensorField::basis_vector(chart, b);
      TensorField jb = column(Je, b);
      // [e_a, e_b] = 0 for coordinate fields
      TensorField v = lie_bracket(ja, jb) - apply(Je, lie_bracket(ja, eb)) - apply(Je, lie_bracket(ea, jb));
      for (int i = 0; i < n; ++i) comps[idx3(n, i, a, b)] = v[i];
    }
  }
  return TensorField(chart, {Slot::Up, Slot::Down, Slot::Down}, false, std::move(comps));
}

HermitianDefect hermitian_defects(const TensorField& omega, const MetricStructure& m, std::span<const Point> points) {
  LcsStructure s(omega, TensorField::zero(omega.chart(), {Slot::Down}, true));
  JacobiPair pair = lcs_jacobi(s, points);
  MatrixField J = build_J(pair.pi, m).J;
  MatrixField W = MatrixField::from_tensor(omega, MatrixRole::Generic);
  MatrixField assoc = W - transpose(J) * m.g;
  MatrixField square = J * J + MatrixField::identity(omega.chart());
  return {J, down_down(assoc), square, nijenhuis(J)};
}

MatrixField j_intertwine_defect(const JacobiPair& pair, const MetricStructure& m) {
  Endomorphisms e = build_J(pair.pi, m);
  MatrixField A = anchor_matrix(pair);
  return e.J * A - A * e.J_star;
}

TensorField nabla_tensor(const ConnectionPack& cp, const TensorField& omega) {
  const int n = omega.dim();
  if (omega.rank() != 2) throw DimensionError("nabla_tensor expects a 2-form");
  std::vector<ScalarField> comps(static_cast<std::size_t>(n) * n * n);
  for (int a = 0; a < n; ++a) {
    TensorField d = covariant_derivative(cp, TensorField::basis_vector(omega.chart(), a), omega);
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) comps[idx3(n, a, b, c)] = d({b, c});
    }
  }
  return TensorField(omega.chart(), {Slot::Down, Slot::Down, Slot::Down}, false, std::move(comps));
}

ConformalDefect conformal_machinery(const TensorField& omega, const MetricStructure& m, const ScalarField& f,
                                    std::span<const Point> points) {
  const int n = m.dim();
  const ChartPtr& chart = m.chart();
  ScalarField ef = exp(f);
  MetricStructure mf = MetricStructure::make(ef * m.g, points);
  ConnectionPack cp = christoffel(m);
  ConnectionPack cpf = christoffel(mf);
  TensorField df = differential(chart, f);
  TensorField grad = sharp_g(m, df);
  const MatrixField& G = m.g;

  std::vector<ScalarField> conn(static_cast<std::size_t>(n) * n * n);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        ScalarField rhs = -(G(i, j) * grad[k]);
        if (k == j) rhs += df[i];
        if (k == i) rhs += df[j];
        conn[idx3(n, k, i, j)] = cpf(k, i, j) - cp(k, i, j) - 0.5 * rhs;
      }
    }
  }
  TensorField connection(chart, {Slot::Up, Slot::Down, Slot::Down}, false, std::move(conn));

  TensorField nw = nabla_tensor(cp, omega);
  TensorField w_grad = interior_product(grad, omega);  // omega(grad f, .)
  std::vector<ScalarField> lam(static_cast<std::size_t>(n) * n * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        ScalarField t1 = df[b] * omega({a, c}) - df[c] * omega({a, b});
        ScalarField t2 = G(a, b) * w_grad[c] - G(a, c) * w_grad[b];
        lam[idx3(n, a, b, c)] = nw({a, b, c}) - 0.5 * t1 + 0.5 * t2;
      }
    }
  }
  TensorField lambda(chart, {Slot::Down, Slot::Down, Slot::Down}, false, std::move(lam));
  TensorField bridge = nabla_tensor(cpf, ef * omega) - ef * lambda;
  return {connection, lambda, bridge, nw};
}

}  // namespace jgeo
