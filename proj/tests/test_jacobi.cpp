#include <gtest/gtest.h>

#include "helpers.hpp"
#include "jgeo/jacobi.hpp"
#include "jgeo/random_fields.hpp"

using namespace jgeo;
using namespace testing_helpers;

namespace {

// contact-r3: pi = dx^dy - y dy^dz (as bivector), xi = d/dz, eta = dz - y dx
struct Contact {
  Coords c{{"x", "y", "z"}};
  TensorField pi = wedge(c.p[0], c.p[1]) - c.x[1] * wedge(c.p[1], c.p[2]);
  TensorField xi = c.p[2];
  TensorField eta = c.d[2] - c.x[1] * c.d[0];
  JacobiPair pair{pi, xi};
};

TensorField zero_form(const ChartPtr& c) { return TensorField::zero(c, {Slot::Down}, true); }

}  // namespace

TEST(Sharp, Examples) {
  Coords r2({"x", "y"});
  TensorField pi = wedge(r2.p[0], r2.p[1]);
  EXPECT_TRUE(same_field(sharp_pi(pi, r2.d[0]), r2.p[1], r2.pts));
  EXPECT_TRUE(zero_field(sharp_pi(TensorField::zero(r2.chart, {Slot::Up, Slot::Up}, true), r2.d[0]), r2.pts));

  Contact k;
  EXPECT_TRUE(same_field(sharp_pi(k.pi, k.c.d[2]), k.c.x[1] * k.c.p[1], k.c.pts));
  EXPECT_TRUE(same_field(sharp_pi_xi(k.pair, k.c.d[2]), k.c.x[1] * k.c.p[1] + k.c.p[2], k.c.pts));
  EXPECT_TRUE(same_field(sharp_pi_xi(k.pair, k.eta), k.xi, k.c.pts));

  Rng rng(1);
  TensorField a = random_one_form(k.c.chart, rng);
  EXPECT_TRUE(same_field(sharp_pi_xi(JacobiPair::poisson(k.pi), a), sharp_pi(k.pi, a), k.c.pts));
  // b(sharp a) = pi(a, b) and the matrix form agrees
  TensorField b = random_one_form(k.c.chart, rng);
  EXPECT_TRUE(zero_scalar(pairing(b, sharp_pi(k.pi, a)) - evaluate(k.pi, {a, b}), k.c.pts));
  EXPECT_TRUE(same_field(apply(anchor_matrix(k.pair), a), sharp_pi_xi(k.pair, a), k.c.pts));
}

TEST(Koszul, Examples) {
  Coords r2({"x", "y"});
  TensorField pi = wedge(r2.p[0], r2.p[1]);
  EXPECT_TRUE(zero_field(koszul_bracket(pi, r2.d[0], r2.d[1]), r2.pts));
  EXPECT_TRUE(zero_field(koszul_bracket(pi, r2.d[0], r2.x[0] * r2.d[1]), r2.pts));

  Coords r3({"x", "y", "z"});
  TensorField zpi = r3.x[2] * wedge(r3.p[0], r3.p[1]);
  EXPECT_TRUE(same_field(koszul_bracket(zpi, r3.d[0], r3.d[1]), r3.d[2], r3.pts));
}

TEST(LambdaBracket, Examples) {
  Contact k;
  AlgebroidData data(k.pair, k.eta);
  EXPECT_TRUE(zero_field(lambda_bracket(data, k.eta, k.eta), k.c.pts));
  EXPECT_TRUE(same_field(lambda_bracket(data, k.c.d[0], k.c.d[2]), k.c.d[0], k.c.pts));

  Rng rng(2);
  TensorField pi = random_bivector(k.c.chart, rng);
  AlgebroidData plain(JacobiPair::poisson(pi), zero_form(k.c.chart));
  for (int i = 0; i < 3; ++i) {
    TensorField a = random_one_form(k.c.chart, rng), b = random_one_form(k.c.chart, rng);
    EXPECT_TRUE(same_field(lambda_bracket(plain, a, b), koszul_bracket(pi, a, b), k.c.pts));
  }
}

TEST(LambdaBracket, AntisymmetricAndLeibniz) {
  Coords c({"x", "y", "u", "v"});
  Rng rng(3);
  for (int i = 0; i < 4; ++i) {
    AlgebroidData data(JacobiPair(random_bivector(c.chart, rng), random_vector(c.chart, rng, 1)),
                       random_one_form(c.chart, rng, 1));
    TensorField a = random_one_form(c.chart, rng), b = random_one_form(c.chart, rng);
    ScalarField f = random_scalar(*c.chart, rng);
    EXPECT_TRUE(zero_field(lambda_bracket(data, a, b) + lambda_bracket(data, b, a), c.pts));
    EXPECT_TRUE(zero_field(koszul_bracket(data.pair.pi, a, b) + koszul_bracket(data.pair.pi, b, a), c.pts));
    EXPECT_TRUE(zero_field(leibniz_defect(data, a, f, b), c.pts));
  }
}

TEST(Calibration, HoldsForRandomBivectors) {
  for (int dim : {3, 4}) {
    Coords c(dim == 3 ? std::vector<std::string>{"x", "y", "z"} : std::vector<std::string>{"x", "y", "u", "v"});
    Rng rng(100 + dim);
    for (int i = 0; i < 10; ++i) {
      TensorField pi = random_bivector(c.chart, rng);
      TensorField a = random_one_form(c.chart, rng), b = random_one_form(c.chart, rng),
                  g = random_one_form(c.chart, rng);
      EXPECT_TRUE(zero_scalar(calibration_defect(pi, a, b, g), c.pts));
    }
  }
}

TEST(JacobiDefect, Examples) {
  Contact k;
  auto d = jacobi_defect(k.pair);
  EXPECT_TRUE(zero_field(d.schouten, k.c.pts));
  EXPECT_TRUE(zero_field(d.lie, k.c.pts));

  Coords r2({"x", "y"});
  auto p = jacobi_defect(JacobiPair::poisson(wedge(r2.p[0], r2.p[1])));
  EXPECT_TRUE(zero_field(p.schouten, r2.pts));
  EXPECT_TRUE(zero_field(p.lie, r2.pts));

  Coords kc({"x", "y", "t"});
  JacobiPair ken(-exp(-kc.x[2]) * wedge(kc.p[0], kc.p[1]), kc.p[2]);
  auto kd = jacobi_defect(ken);
  EXPECT_GT(measure_tensor(kd.schouten, kc.pts).max_abs, 0.1);
}

TEST(Torsion, TheoremAndCorollary) {
  Contact k;
  Rng rng(4);
  const TensorField lambdas[] = {k.eta, k.c.x[0] * k.c.d[1], zero_form(k.c.chart),
                                 random_one_form(k.c.chart, rng)};
  for (const auto& lambda : lambdas) {
    AlgebroidData data(k.pair, lambda);
    for (int i = 0; i < 3; ++i) {
      TensorField a = random_one_form(k.c.chart, rng), b = random_one_form(k.c.chart, rng);
      auto t = torsion_defect(data, a, b);
      EXPECT_TRUE(zero_field(t.d2, k.c.pts));
      bool corollary = zero_field(sharp_pi_xi(k.pair, lambda) - k.xi, k.c.pts);
      EXPECT_EQ(zero_field(t.d1, k.c.pts), corollary);
    }
  }
  AlgebroidData good(k.pair, k.eta + k.c.x[0] * k.c.d[1]);
  auto t = torsion_defect(good, k.c.d[0], k.c.d[1]);
  EXPECT_GT(measure_tensor(t.d1, k.c.pts).max_abs, 1e-3);

  Coords r2({"x", "y"});
  AlgebroidData poisson(JacobiPair::poisson(wedge(r2.p[0], r2.p[1])), zero_form(r2.chart));
  Rng rng2(5);
  TensorField a = random_one_form(r2.chart, rng2), b = random_one_form(r2.chart, rng2);
  EXPECT_TRUE(zero_field(torsion_defect(poisson, a, b).d1, r2.pts));
}

TEST(Jacobiator, Examples) {
  Contact k;
  AlgebroidData data(k.pair, k.eta);
  Rng rng(6);
  for (int i = 0; i < 3; ++i) {
    TensorField a = random_one_form(k.c.chart, rng, 1), b = random_one_form(k.c.chart, rng, 1),
                c = random_one_form(k.c.chart, rng, 1);
    EXPECT_TRUE(zero_field(jacobiator_defect(data, a, b, c), k.c.pts, {1e-8, 1e-9}));
  }

  Coords r2({"x", "y"});
  AlgebroidData poisson(JacobiPair::poisson(wedge(r2.p[0], r2.p[1])), zero_form(r2.chart));
  TensorField a = differential(r2.chart, r2.parse("x*y^2")), b = differential(r2.chart, r2.parse("sin(x)")),
              c = differential(r2.chart, r2.parse("x^3 - y"));
  EXPECT_TRUE(zero_field(jacobiator_defect(poisson, a, b, c), r2.pts));

  JacobiPair bad(wedge(k.c.p[0], k.c.p[1]) + k.c.x[0] * wedge(k.c.p[1], k.c.p[2]), k.c.p[2]);
  AlgebroidData perturbed(bad, zero_form(k.c.chart));
  Measurement m;
  for (int i = 0; i < 3; ++i) {
    TensorField a2 = random_one_form(k.c.chart, rng, 1), b2 = random_one_form(k.c.chart, rng, 1),
                c2 = random_one_form(k.c.chart, rng, 1);
    m.merge(measure_tensor(jacobiator_defect(perturbed, a2, b2, c2), k.c.pts));
  }
  EXPECT_GT(m.max_abs, 1e-3);
}
