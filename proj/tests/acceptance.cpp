// Acceptance run: one PASS/FAIL line per criterion. argv[1] is the path of
// the verify executable (needed by the command-line criterion).

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "jgeo/compat.hpp"
#include "jgeo/contact_lcs.hpp"
#include "jgeo/document.hpp"
#include "jgeo/jacobi.hpp"
#include "jgeo/metric.hpp"
#include "jgeo/random_fields.hpp"
#include "jgeo/suite.hpp"

using namespace jgeo;

namespace {

std::string verify_path;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  // Records one sub-condition; the message lists the measured value.
  void expect(bool ok, const std::string& what, double measured) {
    if (!ok) pass = false;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", measured);
    detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? " " : " [FAILED] ") << buf;
  }
  void expect_flag(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? " ok" : " [FAILED]");
  }
};

std::vector<Point> points_for(const ChartPtr& chart) { return sample_points({chart, 32, 42}); }

double worst_scalar(const ScalarField& f, std::span<const Point> pts) {
  return measure(std::span<const ScalarField>(&f, 1), pts).max_abs;
}

double worst(const TensorField& t, std::span<const Point> pts) { return measure_tensor(t, pts).max_abs; }

double worst_matrix(const MatrixField& m, std::span<const Point> pts) {
  return measure_matrix(m, MatrixField::zero(m.chart(), m.role()), pts).max_abs;
}

template <typename Fn>
double max_over(int n, Fn&& fn) {
  double m = 0.0;
  for (int i = 0; i < n; ++i) m = std::max(m, fn());
  return m;
}

TensorField form(const ChartPtr& c, Rng& rng) { return random_one_form(c, rng, 1); }

MetricStructure metric_of(const StructureSet& s, std::span<const Point> pts) {
  return MetricStructure::make(*s.g, pts);
}

const CheckResult& check_of(const DefectReport& r, const std::string& id) {
  for (const auto& c : r.checks) {
    if (c.id == id) return c;
  }
  throw std::runtime_error("report has no check " + id);
}

// ---------------------------------------------------------------------------

void calibration(Verdict& v) {
  Rng rng(101);
  for (int dim : {3, 4}) {
    std::vector<std::string> names = {"x", "y", "z", "w"};
    names.resize(dim);
    ChartPtr chart = make_chart(names);
    auto pts = points_for(chart);
    double m = max_over(20, [&] {
      TensorField pi = random_bivector(chart, rng, 2);
      TensorField a = form(chart, rng), b = form(chart, rng), c = form(chart, rng);
      return worst_scalar(calibration_defect(pi, a, b, c), pts);
    });
    v.expect(m <= 1e-9, std::to_string(dim) + "-chart, 20 bivectors", m);
  }
}

void torsion_theorem(Verdict& v) {
  StructureSet s = load_builtin("contact-r3");
  auto pts = points_for(s.chart);
  JacobiPair pair = contact_jacobi(ContactStructure(s.tensor("eta")), pts);
  ScalarField x = ScalarField::coordinate(0);
  TensorField x_dy = TensorField::one_form(s.chart, {ScalarField(), x, ScalarField()});
  TensorField zero = TensorField::zero(s.chart, {Slot::Down}, true);
  struct Case {
    const char* name;
    TensorField lambda;
  };
  Rng rng(202);
  for (const Case& c : {Case{"eta", s.tensor("eta")}, Case{"x dy", x_dy}, Case{"0", zero}}) {
    AlgebroidData data(pair, c.lambda);
    double d1 = 0.0, d2 = 0.0;
    for (int i = 0; i < 10; ++i) {
      TensorField a = form(s.chart, rng), b = form(s.chart, rng);
      TorsionDefect t = torsion_defect(data, a, b);
      d1 = std::max(d1, worst(t.d1, pts));
      d2 = std::max(d2, worst(t.d2, pts));
    }
    v.expect(d2 <= 1e-9, std::string("D2[") + c.name + "]", d2);
    if (std::string(c.name) == "eta") v.expect(d1 <= 1e-9, "D1[eta]", d1);
    if (std::string(c.name) == "x dy") v.expect(d1 > 1e-3, "D1[x dy]", d1);
  }
}

void contact_pipeline(Verdict& v) {
  StructureSet s = load_builtin("contact-r3");
  auto pts = points_for(s.chart);
  ContactStructure c(s.tensor("eta"));
  TensorField xi = reeb_field(c, pts);
  Measurement reeb = measure_tensor(xi, TensorField::basis_vector(s.chart, 2), pts, 0);
  v.expect(reeb.max_abs <= 1e-12, "xi - d/dz", reeb.max_abs);
  JacobiPair pair = contact_jacobi(c, pts);
  double anchor = measure_matrix(anchor_matrix(pair), sharp_eta_matrix(c, pts), pts).max_abs;
  v.expect(anchor <= 1e-9, "sharp_{pi,xi} - sharp_eta", anchor);
  JacobiDefect j = jacobi_defect(pair);
  double jd = std::max(worst(j.schouten, pts), worst(j.lie, pts));
  v.expect(jd <= 1e-9, "Jacobi defects", jd);
  AlgebroidData data(pair, s.tensor("eta"));
  Rng rng(303);
  double jac = max_over(10, [&] {
    TensorField a = form(s.chart, rng), b = form(s.chart, rng), g = form(s.chart, rng);
    return worst(jacobiator_defect(data, a, b, g), pts);
  });
  v.expect(jac <= 1e-8, "jacobiator of [.,.]^eta", jac);
}

void lcs_transfer(Verdict& v) {
  Rng rng(404);
  for (const char* name : {"lcs-r4", "nonclosed-theta-r4"}) {
    StructureSet s = load_builtin(name);
    auto pts = points_for(s.chart);
    LcsStructure lcs(s.tensor("omega"), s.tensor("theta"));
    JacobiPair pair = lcs_jacobi(lcs, pts);
    double transfer = max_over(10, [&] {
      TensorField a = form(s.chart, rng), b = form(s.chart, rng), c = form(s.chart, rng);
      LcsTransferDefect d = lcs_transfer_defect(lcs, pair, a, b, c);
      return std::max(worst_scalar(d.closure, pts), worst_scalar(d.lie, pts));
    });
    v.expect(transfer <= 1e-9, std::string(name) + " transfer identities", transfer);
    LcsDefect ld = lcs_defect(lcs);
    JacobiDefect jd = jacobi_defect(pair);
    double lcs_def = std::max(worst(ld.closure, pts), worst(ld.dtheta, pts));
    double jac_def = std::max(worst(jd.schouten, pts), worst(jd.lie, pts));
    if (std::string(name) == "lcs-r4") {
      v.expect(lcs_def <= 1e-9, "lcs-r4 lcs defect", lcs_def);
      v.expect(jac_def <= 1e-9, "lcs-r4 Jacobi defect", jac_def);
    } else {
      v.expect(lcs_def > 1e-3, "nonclosed lcs defect", lcs_def);
      v.expect(jac_def > 1e-3, "nonclosed Jacobi defect", jac_def);
    }
  }
}

// Builtins without a metric get the Euclidean one.
StructureSet with_metric(const std::string& name) {
  StructureSet s = load_builtin(name);
  if (!s.g) s.g = MatrixField::identity(s.chart, MatrixRole::Metric);
  return s;
}

void contravariant_derivative(Verdict& v) {
  RunConfig cfg;
  cfg.tol = {1e-8, 0.0};
  double worst_all = 0.0;
  for (const auto& name : builtin_names()) {
    DefectReport r = run_suite("connection", with_metric(name), cfg);
    double m = std::max(check_of(r, "connection.metric").max_abs_defect,
                        check_of(r, "connection.symmetry").max_abs_defect);
    if (!(m <= 1e-8)) v.expect(false, name, m);
    worst_all = std::max(worst_all, std::isnan(m) ? 1.0 : m);
  }
  v.expect(worst_all <= 1e-8, "metric compatibility and symmetry, 8 builtins", worst_all);

  // On poisson-r2 (constant pi, flat metric) D_a b = nabla_{sharp a} b.
  StructureSet s = load_builtin("poisson-r2");
  auto pts = points_for(s.chart);
  ContravariantPack p(JacobiPair::poisson(s.tensor("pi")), metric_of(s, pts));
  ConnectionPack cp = christoffel(p.metric);
  Rng rng(505);
  double agree = 0.0, dpi = 0.0, compat = 0.0;
  for (int i = 0; i < 10; ++i) {
    TensorField a = random_one_form(s.chart, rng), b = random_one_form(s.chart, rng),
                c = random_one_form(s.chart, rng);
    agree = std::max(agree, measure_tensor(contravariant_D(p, a, b),
                                           covariant_derivative(cp, sharp_pi_xi(p.pair, a), b), pts)
                                .max_abs);
    dpi = std::max(dpi, worst_scalar(D_tensor_pi(p, a, b, c), pts));
    compat = std::max(compat, worst(compatibility_defect(p, a, b), pts));
  }
  v.expect(agree <= 1e-12, "poisson-r2 D - nabla_{sharp a}", agree);
  v.expect(dpi <= 1e-12, "poisson-r2 D pi", dpi);
  v.expect(compat <= 1e-12, "poisson-r2 compatibility", compat);
}

void anchor_intertwining(Verdict& v) {
  Rng rng(606);
  auto intertwine = [&](const JacobiPair& pair, const MetricStructure& m, std::span<const Point> pts) {
    ContravariantPack p(pair, m);
    ConnectionPack cp = christoffel(m);
    return max_over(10, [&] {
      TensorField a = form(pair.chart(), rng), b = form(pair.chart(), rng);
      return worst(anchor_intertwine_defect(p, cp, a, b), pts);
    });
  };
  {
    StructureSet s = load_builtin("contact-r3");
    auto pts = points_for(s.chart);
    double d = intertwine(contact_jacobi(ContactStructure(s.tensor("eta")), pts), metric_of(s, pts), pts);
    v.expect(d <= 1e-8, "contact-r3", d);
  }
  {
    StructureSet s = load_builtin("poisson-r2");
    auto pts = points_for(s.chart);
    double d = intertwine(JacobiPair::poisson(s.tensor("pi")), metric_of(s, pts), pts);
    v.expect(d <= 1e-8, "poisson-r2", d);
  }
  {
    StructureSet s = load_builtin("lcs-r4");
    auto pts = points_for(s.chart);
    JacobiPair pair = lcs_jacobi(LcsStructure(s.tensor("omega"), s.tensor("theta")), pts);
    MetricStructure m = metric_of(s, pts);
    double d = intertwine(pair, m, pts);
    v.expect(d > 1e-3, "lcs-r4 (e^{-x} delta)", d);
    double iso = max_over(10, [&] {
      TensorField a = form(s.chart, rng), b = form(s.chart, rng);
      return worst_scalar(isometry_defect(pair, m, a, b), pts);
    });
    v.expect(iso > 1e-3, "lcs-r4 isometry defect", iso);
  }
}

void forms_pairing(Verdict& v) {
  double worst_all = 0.0;
  for (const auto& name : builtin_names()) {
    DefectReport r = run_suite("compatibility", with_metric(name));
    double m = check_of(r, "compatibility.pairing").max_abs_defect;
    if (!(m <= 1e-9)) v.expect(false, name, m);
    worst_all = std::max(worst_all, std::isnan(m) ? 1.0 : m);
  }
  v.expect(worst_all <= 1e-9, "C_pi(a,b,c) - g*(C(a,b), c), 8 builtins x 10 triples", worst_all);
}

AlmostContactMetric acs_of(const StructureSet& s, std::span<const Point> pts) {
  return AlmostContactMetric(*s.phi, s.tensor("xi"), s.tensor("eta"), metric_of(s, pts));
}

void half_kenmotsu(Verdict& v) {
  {
    StructureSet s = load_builtin("kenmotsu-r3");
    auto pts = points_for(s.chart);
    AlmostContactMetric acs = acs_of(s, pts);
    ConnectionPack cp = christoffel(acs.g);
    double d = worst(half_kenmotsu_defect(acs, cp), pts);
    v.expect(d <= 1e-8, "kenmotsu-r3", d);
    // Hand computation for g = dt^2 + e^t(dx^2 + dy^2): Gamma^t_xx = Gamma^t_yy = -e^t/2,
    // Gamma^x_xt = Gamma^y_yt = 1/2, hence (nabla_x Phi) d/dy = 1/2 e^t d/dt.
    ScalarField et = exp(ScalarField::coordinate(2));
    double gamma = std::max(worst_scalar(cp(2, 0, 0) + 0.5 * et, pts), worst_scalar(cp(0, 0, 2) - 0.5, pts));
    MatrixField nx = covariant_derivative(cp, TensorField::basis_vector(s.chart, 0), *s.phi);
    double oracle = measure_tensor(apply(nx, TensorField::basis_vector(s.chart, 1)),
                                   0.5 * et * TensorField::basis_vector(s.chart, 2), pts)
                        .max_abs;
    v.expect(std::max(gamma, oracle) <= 1e-12, "hand Christoffel oracle", std::max(gamma, oracle));
  }
  {
    StructureSet s = load_builtin("kenmotsu-alpha1-r3");
    auto pts = points_for(s.chart);
    AlmostContactMetric acs = acs_of(s, pts);
    double d = worst(half_kenmotsu_defect(acs, christoffel(acs.g)), pts);
    v.expect(d > 1e-2, "kenmotsu-alpha1-r3", d);
  }
  {
    StructureSet s = load_builtin("contact-r3");
    auto pts = points_for(s.chart);
    AlmostContactMetric acs = acs_of(s, pts);
    double d = worst(half_kenmotsu_defect(acs, christoffel(acs.g)), pts);
    v.expect(d > 1e-2, "contact-r3", d);
    ContravariantPack p(acs_bivector(acs).pair, acs.g);
    Rng rng(808);
    double compat = max_over(10, [&] {
      TensorField a = form(s.chart, rng), b = form(s.chart, rng);
      return worst(compatibility_defect(p, a, b), pts);
    });
    v.expect(compat > 1e-3, "contact-r3 compatibility", compat);
  }
}

void acs_isometry(Verdict& v) {
  Rng rng(909);
  for (const char* name : {"contact-r3", "kenmotsu-r3"}) {
    StructureSet s = load_builtin(name);
    auto pts = points_for(s.chart);
    AlmostContactMetric acs = acs_of(s, pts);
    AcsBivector b = acs_bivector(acs);
    double iso = max_over(10, [&] {
      TensorField x = form(s.chart, rng), y = form(s.chart, rng);
      return worst_scalar(isometry_defect(b.pair, acs.g, x, y), pts);
    });
    v.expect(iso <= 1e-9, std::string(name) + " isometry", iso);
    ContravariantPack p(b.pair, acs.g);
    double tw = worst_matrix(acs_intertwine_defect(p, acs.phi), pts);
    v.expect(tw <= 1e-9, std::string(name) + " intertwine", tw);
  }
}

void conformal(Verdict& v) {
  ChartPtr chart = make_chart({"x", "y", "u", "v"});
  auto pts = points_for(chart);
  Rng rng(1010);
  double conn = 0.0, bridge = 0.0;
  for (int i = 0; i < 5; ++i) {
    TensorField w = random_nondegenerate_two_form(chart, rng);
    MetricStructure m = MetricStructure::make(random_metric(chart, rng), pts);
    ScalarField f = random_scalar(*chart, rng);
    ConformalDefect d = conformal_machinery(w, m, f, pts);
    conn = std::max(conn, worst(d.connection, pts));
    bridge = std::max(bridge, worst(d.bridge, pts));
  }
  v.expect(conn <= 1e-8, "random nabla^f formula", conn);
  v.expect(bridge <= 1e-8, "random bridge", bridge);

  StructureSet s = load_builtin("lcs-r4");
  auto lp = points_for(s.chart);
  MetricStructure m = metric_of(s, lp);
  ConformalDefect d = conformal_machinery(s.tensor("omega"), m, *s.f, lp);
  double lc = worst(d.connection, lp), lb = worst(d.bridge, lp), ll = worst(d.lambda, lp);
  v.expect(lc <= 1e-8, "lcs-r4 nabla^f formula", lc);
  v.expect(lb <= 1e-8, "lcs-r4 bridge", lb);
  v.expect(ll <= 1e-8, "lcs-r4 Lambda_f", ll);
  HermitianDefect h = hermitian_defects(s.tensor("omega"), m, lp);
  double herm = std::max({worst(h.associated, lp), worst_matrix(h.square, lp), worst(h.nijenhuis, lp)});
  v.expect(herm <= 1e-9, "lcs-r4 hermitian", herm);
}

int run(const std::string& args) {
  std::string cmd = "\"" + verify_path + "\" " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void cli(Verdict& v) {
  if (verify_path.empty()) throw std::runtime_error("path of the verify executable not given");
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "jgeo_acceptance";
  fs::create_directories(dir);
  std::string r1 = (dir / "r1.json").string(), r2 = (dir / "r2.json").string();
  int e1 = run("check all --builtin contact-r3 --seed 7 --report \"" + r1 + "\"");
  int e2 = run("check all --builtin contact-r3 --seed 7 --report \"" + r2 + "\"");
  std::string a = slurp(r1), b = slurp(r2);
  v.expect_flag(!a.empty() && a == b, "byte-identical reports (" + std::to_string(a.size()) + " bytes)");
  v.expect_flag(e1 == 0 && e2 == 0, "exit 0 on contact-r3 (got " + std::to_string(e1) + ")");
  int e3 = run("check all --builtin jacobi-violate-r3");
  v.expect_flag(e3 == 1, "exit 1 on jacobi-violate-r3 (got " + std::to_string(e3) + ")");
  int e4 = run("check all --chart \"" + (dir / "missing.json").string() + "\"");
  v.expect_flag(e4 == 2, "exit 2 on a missing file (got " + std::to_string(e4) + ")");
  fs::remove_all(dir);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) verify_path = argv[1];
  struct Criterion {
    const char* title;
    std::function<void(Verdict&)> fn;
  };
  const std::vector<Criterion> criteria = {
      {"convention calibration of [pi,pi]", calibration},
      {"torsion theorem and almost-Lie criterion on contact-r3", torsion_theorem},
      {"contact pipeline", contact_pipeline},
      {"lcs transfer identities and lcs <=> Jacobi", lcs_transfer},
      {"contravariant derivative", contravariant_derivative},
      {"anchor intertwining", anchor_intertwining},
      {"compatibility forms pairing", forms_pairing},
      {"1/2-Kenmotsu", half_kenmotsu},
      {"almost contact isometry", acs_isometry},
      {"conformal machinery", conformal},
      {"CLI determinism and exit codes", cli},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].fn(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << (v.detail.tellp() > 0 ? "; " : "") << "exception: " << e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > 5.0) {
      v.pass = false;
      v.detail << "; over the 5 s budget";
    }
    failed += v.pass ? 0 : 1;
    char head[96];
    std::snprintf(head, sizeof head, "%s criterion %2zu (%.2fs): ", v.pass ? "PASS" : "FAIL", i + 1, secs);
    std::cout << head << criteria[i].title << " | " << v.detail.str() << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
