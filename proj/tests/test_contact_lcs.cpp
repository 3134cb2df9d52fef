#include <gtest/gtest.h>

#include "helpers.hpp"
#include "jgeo/contact_lcs.hpp"
#include "jgeo/error.hpp"
#include "jgeo/random_fields.hpp"

using namespace jgeo;
using namespace testing_helpers;

namespace {

struct ContactR3 {
  Coords c{{"x", "y", "z"}};
  TensorField eta = c.d[2] - c.x[1] * c.d[0];
  ContactStructure s{eta};
};

struct LcsR4 {
  Coords c{{"x", "y", "u", "v"}};
  TensorField omega0 = wedge(c.d[0], c.d[1]) + wedge(c.d[2], c.d[3]);
  TensorField omega = exp(-c.x[0]) * omega0;
  TensorField theta = c.d[0];
};

}  // namespace

TEST(ContactVolume, Examples) {
  ContactR3 k;
  auto v = contact_volume_defect(k.s, k.c.pts);
  EXPECT_TRUE(v.nonvanishing);
  EXPECT_TRUE(zero_scalar(v.component - 1.0, k.c.pts));

  auto flat = contact_volume_defect(ContactStructure(k.c.d[2]), k.c.pts);
  EXPECT_FALSE(flat.nonvanishing);
  EXPECT_TRUE(flat.component.is_zero());

  auto scaled = contact_volume_defect(ContactStructure(2.0 * k.eta), k.c.pts);
  EXPECT_TRUE(scaled.nonvanishing);
  EXPECT_TRUE(zero_scalar(scaled.component - 4.0, k.c.pts));

  Coords r2({"x", "y"});
  EXPECT_THROW(ContactStructure(r2.d[0]), DimensionError);
}

TEST(ContactMusical, Examples) {
  ContactR3 k;
  EXPECT_TRUE(same_field(flat_eta(k.s, k.c.p[2]), k.eta, k.c.pts));
  EXPECT_TRUE(same_field(flat_eta(k.s, k.c.p[1]), k.c.d[0], k.c.pts));
  EXPECT_TRUE(same_field(sharp_eta(k.s, k.eta, k.c.pts), k.c.p[2], k.c.pts));
  EXPECT_TRUE(same_matrix(sharp_eta_matrix(k.s) * flat_eta_matrix(k.s), MatrixField::identity(k.c.chart), k.c.pts));
}

TEST(Reeb, Examples) {
  ContactR3 k;
  TensorField xi = reeb_field(k.s, k.c.pts);
  EXPECT_TRUE(same_field(xi, k.c.p[2], k.c.pts, {1e-12, 0.0}));
  EXPECT_TRUE(zero_field(interior_product(xi, exterior_derivative(k.eta)), k.c.pts));
  EXPECT_TRUE(zero_scalar(pairing(k.eta, xi) - 1.0, k.c.pts));

  EXPECT_TRUE(same_field(reeb_field(ContactStructure(2.0 * k.eta)), 0.5 * k.c.p[2], k.c.pts));

  Coords ken({"x", "y", "t"});
  EXPECT_THROW(reeb_field(ContactStructure(ken.d[2]), ken.pts), SingularError);
}

TEST(Reeb, CharacterizationOnRandomContactForms) {
  // dz - y dx + small perturbation stays contact on the unit box
  ContactR3 k;
  Rng rng(9);
  for (int i = 0; i < 3; ++i) {
    TensorField eta = k.eta + 0.125 * (k.c.x[0] * k.c.d[1]) + (1.0 / 32.0) * random_one_form(k.c.chart, rng, 1);
    ContactStructure s(eta);
    auto vol = contact_volume_defect(s, k.c.pts);
    ASSERT_TRUE(vol.nonvanishing);
    TensorField xi = reeb_field(s, k.c.pts);
    EXPECT_TRUE(zero_field(interior_product(xi, exterior_derivative(eta)), k.c.pts));
    EXPECT_TRUE(zero_scalar(pairing(eta, xi) - 1.0, k.c.pts));
    JacobiPair pair = contact_jacobi(s, k.c.pts);
    auto d = jacobi_defect(pair);
    EXPECT_TRUE(zero_field(d.schouten, k.c.pts, {1e-8, 1e-9}));
    EXPECT_TRUE(zero_field(d.lie, k.c.pts, {1e-8, 1e-9}));
  }
}

TEST(ContactJacobi, Examples) {
  ContactR3 k;
  JacobiPair pair = contact_jacobi(k.s, k.c.pts);
  TensorField pi = wedge(k.c.p[0], k.c.p[1]) - k.c.x[1] * wedge(k.c.p[1], k.c.p[2]);
  EXPECT_TRUE(same_field(pair.pi, pi, k.c.pts));
  EXPECT_TRUE(same_field(pair.xi, k.c.p[2], k.c.pts));
  EXPECT_TRUE(same_matrix(anchor_matrix(pair), sharp_eta_matrix(k.s), k.c.pts));
  auto d = jacobi_defect(pair);
  EXPECT_TRUE(zero_field(d.schouten, k.c.pts));
  EXPECT_TRUE(zero_field(d.lie, k.c.pts));
}

TEST(LcsDefect, Examples) {
  LcsR4 l;
  auto d = lcs_defect(LcsStructure(l.omega, l.theta));
  EXPECT_TRUE(zero_field(d.closure, l.c.pts));
  EXPECT_TRUE(zero_field(d.dtheta, l.c.pts));

  auto bad = lcs_defect(LcsStructure(l.omega, l.c.x[1] * l.c.d[0]));
  EXPECT_TRUE(same_field(bad.dtheta, -wedge(l.c.d[0], l.c.d[1]), l.c.pts));

  auto symp = lcs_defect(LcsStructure(l.omega0, TensorField::zero(l.c.chart, {Slot::Down}, true)));
  EXPECT_TRUE(zero_field(symp.closure, l.c.pts));
  EXPECT_TRUE(zero_field(symp.dtheta, l.c.pts));
}

TEST(LcsJacobi, Examples) {
  LcsR4 l;
  LcsStructure s(l.omega, l.theta);
  JacobiPair pair = lcs_jacobi(s, l.c.pts);
  TensorField pi = exp(l.c.x[0]) * (wedge(l.c.p[0], l.c.p[1]) + wedge(l.c.p[2], l.c.p[3]));
  EXPECT_TRUE(same_field(pair.pi, pi, l.c.pts));
  EXPECT_TRUE(same_field(pair.xi, exp(l.c.x[0]) * l.c.p[1], l.c.pts));
  EXPECT_TRUE(same_field(sharp_pi_xi(pair, l.theta), pair.xi, l.c.pts));
  auto d = jacobi_defect(pair);
  EXPECT_TRUE(zero_field(d.schouten, l.c.pts));
  EXPECT_TRUE(zero_field(d.lie, l.c.pts));

  AlgebroidData data(pair, l.theta);
  Rng rng(10);
  for (int i = 0; i < 3; ++i) {
    TensorField a = random_one_form(l.c.chart, rng), b = random_one_form(l.c.chart, rng);
    EXPECT_TRUE(zero_field(torsion_defect(data, a, b).d1, l.c.pts, {1e-9, 1e-9}));
    EXPECT_TRUE(zero_field(interior_product(sharp_pi(pair.pi, a), l.omega) + a, l.c.pts));
    TensorField c = random_one_form(l.c.chart, rng, 1);
    EXPECT_TRUE(zero_field(jacobiator_defect(data, a, b, c), l.c.pts, {1e-8, 1e-9}));
  }
  for (const auto& p : l.c.pts) EXPECT_GT(std::abs(eval_scalar(determinant(anchor_matrix(pair)), p)), 1e-6);
}

TEST(LcsTransfer, HoldsWithoutTheLcsHypothesis) {
  LcsR4 l;
  Rng rng(11);
  std::vector<LcsStructure> cases = {
      LcsStructure(l.omega, l.theta),
      LcsStructure(l.omega + 0.25 * l.c.x[0] * wedge(l.c.d[2], l.c.d[3]), l.theta),
      LcsStructure(l.omega0, TensorField::zero(l.c.chart, {Slot::Down}, true)),
      LcsStructure(random_nondegenerate_two_form(l.c.chart, rng), random_one_form(l.c.chart, rng, 1)),
  };
  EXPECT_FALSE(zero_field(lcs_defect(cases[1]).closure, l.c.pts));
  for (const auto& s : cases) {
    JacobiPair pair = lcs_jacobi(s, l.c.pts);
    for (int i = 0; i < 2; ++i) {
      TensorField a = random_one_form(l.c.chart, rng, 1), b = random_one_form(l.c.chart, rng, 1),
                  c = random_one_form(l.c.chart, rng, 1);
      auto d = lcs_transfer_defect(s, pair, a, b, c);
      EXPECT_TRUE(zero_scalar(d.closure, l.c.pts));
      EXPECT_TRUE(zero_scalar(d.lie, l.c.pts));
    }
  }
}

TEST(Lcs, NonClosedThetaBreaksBothSides) {
  LcsR4 l;
  LcsStructure s(l.omega, l.c.x[1] * l.c.d[0]);
  auto d = lcs_defect(s);
  auto j = jacobi_defect(lcs_jacobi(s, l.c.pts));
  double lcs = std::max(measure_tensor(d.closure, l.c.pts).max_abs, measure_tensor(d.dtheta, l.c.pts).max_abs);
  double jac = std::max(measure_tensor(j.schouten, l.c.pts).max_abs, measure_tensor(j.lie, l.c.pts).max_abs);
  EXPECT_GT(lcs, 1e-3);
  EXPECT_GT(jac, 1e-3);
}
