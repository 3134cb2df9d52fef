#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "helpers.hpp"
#include "jgeo/document.hpp"
#include "jgeo/error.hpp"

using namespace jgeo;
using namespace testing_helpers;

namespace {

std::string doc(const std::string& structures, const std::string& chart = R"("coords": ["x","y","z"])") {
  return R"({"chart": {)" + chart + R"(}, "structures": {)" + structures + "}}";
}

}  // namespace

TEST(Document, ContactBuiltinHasItsEntries) {
  StructureSet s = load_builtin("contact-r3");
  EXPECT_EQ(s.chart->dim(), 3);
  EXPECT_EQ(s.id, "contact-r3");
  EXPECT_TRUE(s.has("eta"));
  EXPECT_TRUE(s.has("g"));
  EXPECT_TRUE(s.has("phi"));
  EXPECT_FALSE(s.has("pi"));
  Coords c({"x", "y", "z"});
  auto pts = sample_points({s.chart, 16, 1});
  EXPECT_TRUE(same_field(s.tensor("eta"), TensorField::one_form(s.chart, {-ScalarField::coordinate(1), {},
                                                                           ScalarField::constant(1)}),
                         pts));
  EXPECT_TRUE(same_matrix(*s.phi,
                          MatrixField(s.chart,
                                      {{{}, ScalarField::constant(1), {}},
                                       {ScalarField::constant(-1), {}, {}},
                                       {{}, ScalarField::coordinate(1), {}}},
                                      MatrixRole::Endomorphism),
                          pts));
}

TEST(Document, RegistryIsExactlyTheEightExamples) {
  std::vector<std::string> want = {"poisson-r2", "contact-r3",  "kenmotsu-r3",        "kenmotsu-alpha1-r3",
                                   "lcs-r4",     "kahler-r4",   "jacobi-violate-r3",  "nonclosed-theta-r4"};
  EXPECT_EQ(builtin_names(), want);
  for (const auto& n : want) EXPECT_NO_THROW(load_builtin(n)) << n;
  EXPECT_THROW(load_builtin("frobnicate"), UsageError);
}

TEST(Document, KeysAcceptFormAndVectorSpellings) {
  StructureSet s = parse_document(doc(R"("pi": {"kind": "bivector", "components": {"x^z": "y"}},
       "xi": {"kind": "vector", "components": {"d/dz": "1", "∂x": "2"}},
       "theta": {"kind": "one_form", "components": {"y": "x"}},
       "omega": {"kind": "two_form", "components": {"dx^dy": "1"}})"),
                                  "t");
  auto pts = sample_points({s.chart, 8, 3});
  Evaluator ev(pts[0]);
  EXPECT_DOUBLE_EQ(ev(s.tensor("pi")({0, 2})), pts[0][1]);
  EXPECT_DOUBLE_EQ(ev(s.tensor("pi")({2, 0})), -pts[0][1]);
  EXPECT_DOUBLE_EQ(ev(s.tensor("xi")[0]), 2.0);
  EXPECT_DOUBLE_EQ(ev(s.tensor("theta")[1]), pts[0][0]);
  EXPECT_DOUBLE_EQ(ev(s.tensor("omega")({1, 0})), -1.0);
}

TEST(Document, SchemaErrors) {
  EXPECT_THROW(parse_document(R"({"chart": {"box": [[0,1]]}, "structures": {}})", "t"), SchemaError);
  EXPECT_THROW(parse_document(R"({"structures": {}})", "t"), SchemaError);
  EXPECT_THROW(parse_document("{not json", "t"), SchemaError);
  EXPECT_THROW(parse_document(doc(R"("pi": {"kind": "two_form", "components": {}})"), "t"), SchemaError);
  EXPECT_THROW(parse_document(doc(R"("zeta": {"kind": "one_form", "components": {}})"), "t"), SchemaError);
  EXPECT_THROW(parse_document(doc(R"("pi": {"kind": "bivector", "components": {"y^x": "1"}})"), "t"), SchemaError);
  EXPECT_THROW(parse_document(doc(R"("g": {"kind": "metric", "matrix": [["1","x","0"],["0","1","0"],["0","0","1"]]})"),
                              "t"),
               SchemaError);
  EXPECT_THROW(parse_document(doc("", R"("coords": ["x","y"], "box": [[1,0],[0,1]])"), "t"), SchemaError);
  std::string claims = R"({"chart": {"coords": ["x"]}, "structures": {}, "claims": ["frobnicate"]})";
  EXPECT_THROW(parse_document(claims, "t"), SchemaError);
}

TEST(Document, DimensionErrors) {
  // a 2-form on a 1-dimensional chart
  EXPECT_THROW(parse_document(doc(R"("omega": {"kind": "two_form", "components": {"x^y": "1"}})", R"("coords": ["x"])"),
                              "t"),
               DimensionError);
  EXPECT_THROW(parse_document(doc(R"("omega": {"kind": "two_form", "components": {"x^w": "1"}})"), "t"),
               DimensionError);
  EXPECT_THROW(parse_document(doc(R"("g": {"kind": "metric", "matrix": [["1","0"],["0","1"]]})"), "t"),
               DimensionError);
  EXPECT_THROW(parse_document(doc("", R"("coords": ["x","y"], "box": [[0,1]])"), "t"), DimensionError);
}

TEST(Document, ExpressionErrorsCarryTheirLocation) {
  try {
    parse_document(doc(R"("eta": {"kind": "one_form", "components": {"dx": "1 + * y"}})"), "t");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    std::string what = e.what();
    EXPECT_NE(what.find("structures.eta.components[dx]"), std::string::npos) << what;
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(parse_document(doc(R"("f": {"kind": "scalar", "expr": "w + 1"})"), "t"), ParseError);
}

TEST(Document, LoadsFromDisk) {
  std::string path = ::testing::TempDir() + "jgeo_doc_test.json";
  {
    std::ofstream out(path);
    out << builtin_text("poisson-r2");
  }
  StructureSet s = load_document(path);
  EXPECT_EQ(s.id, "jgeo_doc_test");
  EXPECT_EQ(s.claims.size(), 4u);
  std::remove(path.c_str());
  EXPECT_THROW(load_document(path), UsageError);
}
