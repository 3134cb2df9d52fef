#include "jgeo/suite.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include "jgeo/compat.hpp"
#include "jgeo/contact_lcs.hpp"
#include "jgeo/error.hpp"
#include "jgeo/jacobi.hpp"
#include "jgeo/metric.hpp"
#include "jgeo/random_fields.hpp"

namespace jgeo {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kNonvanishing = 1e-9;

const std::vector<std::string> kSuites = {"jacobi",      "algebroid",     "contact",  "lcs",
                                          "connection",  "compatibility", "kenmotsu", "conformal-kahler"};

/// Thread-safe value computed on first use; a failure is rethrown to every caller.
template <typename T>
class Lazy {
 public:
  explicit Lazy(std::function<T()> make) : make_(std::move(make)) {}
  const T& get() {
    std::call_once(once_, [&] {
      try {
        value_.emplace(make_());
      } catch (...) {
        error_ = std::current_exception();
      }
    });
    if (error_) std::rethrow_exception(error_);
    return *value_;
  }

 private:
  std::function<T()> make_;
  std::once_flag once_;
  std::optional<T> value_;
  std::exception_ptr error_;
};

enum class Kind { Identity, Property, Conditional, Equivalence, Informational };

struct Outcome {
  Measurement m;
  std::optional<Measurement> hypothesis;
  std::optional<Measurement> other;  // second side of an equivalence
  std::optional<double> value;
  std::optional<bool> verdict;       // replaces the tolerance test on m
  std::string note;
};

struct Check {
  std::string id;
  std::string anchor;
  Kind kind;
  std::function<Outcome(Rng&)> run;
};

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Measurement nan_measurement() { return Measurement{kNaN, kNaN}; }

Measurement measure_scalar(const ScalarField& f, std::span<const Point> pts) {
  return measure(std::span<const ScalarField>(&f, 1), pts);
}

Measurement measure_zero_matrix(const MatrixField& m, std::span<const Point> pts) {
  return measure_matrix(m, MatrixField::zero(m.chart(), m.role()), pts);
}

double min_abs(const ScalarField& f, std::span<const Point> pts) {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& p : pts) lo = std::min(lo, std::abs(Evaluator(p)(f)));
  return lo;
}

template <typename Fn>
Measurement repeat(int n, Fn&& fn) {
  Measurement m;
  for (int i = 0; i < n; ++i) m.merge(fn());
  return m;
}

/// Everything a suite may need, built on first use and shared by its checks.
struct Context {
  const StructureSet& set;
  RunConfig cfg;
  std::vector<Point> pts;

  Context(const StructureSet& s, const RunConfig& c)
      : set(s), cfg(c), pts(sample_points({s.chart, c.points, c.seed})) {}

  const ChartPtr& chart() const { return set.chart; }
  TensorField zero_vector() const { return TensorField::zero(set.chart, {Slot::Up}, true); }
  TensorField zero_form() const { return TensorField::zero(set.chart, {Slot::Down}, true); }
  TensorField theta() const { return set.has("theta") ? set.tensor("theta") : zero_form(); }
  TensorField xi() const { return set.has("xi") ? set.tensor("xi") : zero_vector(); }

  bool has_acs() const { return set.has("phi") && set.has("xi") && set.has("eta") && set.has("g"); }
  bool contact_capable() const { return set.has("eta") && set.chart->dim() % 2 == 1 && set.chart->dim() >= 3; }

  /// Where the Jacobi pair comes from, or empty when nothing defines one.
  std::string pair_source() const {
    if (set.has("pi")) return set.has("xi") ? "pi, xi" : "pi (xi = 0)";
    if (has_acs()) return "pi(a,b) = g(sharp_g a, Phi sharp_g b), xi";
    if (contact_capable()) return "contact form eta";
    if (set.has("omega")) return set.has("theta") ? "lcs (omega, theta)" : "symplectic omega";
    return {};
  }

  std::string lambda_source() const {
    if (set.has("lambda")) return "lambda";
    if (set.has("eta")) return "eta";
    if (set.has("theta")) return "theta";
    return "0";
  }

  Lazy<JacobiPair> pair{[this] {
    if (set.has("pi")) return JacobiPair(set.tensor("pi"), xi());
    if (has_acs()) return acs_pair.get().pair;
    if (contact_capable()) return contact_pair.get();
    if (set.has("omega")) return lcs_pair.get();
    throw UsageError("no Jacobi pair: the document defines none of pi, phi+xi+eta+g, eta, omega");
  }};
  Lazy<TensorField> lambda{[this] {
    if (set.has("lambda")) return set.tensor("lambda");
    if (set.has("eta")) return set.tensor("eta");
    return theta();
  }};
  Lazy<AlgebroidData> algebroid{[this] { return AlgebroidData(pair.get(), lambda.get()); }};
  Lazy<JacobiDefect> jacobi{[this] { return jacobi_defect(pair.get()); }};

  Lazy<ContactStructure> contact{[this] { return ContactStructure(set.tensor("eta")); }};
  Lazy<JacobiPair> contact_pair{[this] { return contact_jacobi(contact.get(), pts); }};

  Lazy<LcsStructure> lcs{[this] { return LcsStructure(set.tensor("omega"), theta()); }};
  Lazy<JacobiPair> lcs_pair{[this] { return lcs_jacobi(lcs.get(), pts); }};

  Lazy<MetricStructure> metric{[this] {
    if (!set.g) throw UsageError("no metric g");
    return MetricStructure::make(*set.g, pts);
  }};
  Lazy<ConnectionPack> connection{[this] { return christoffel(metric.get()); }};
  Lazy<ContravariantPack> contravariant{[this] { return ContravariantPack(pair.get(), metric.get()); }};

  Lazy<AlmostContactMetric> acs{[this] {
    return AlmostContactMetric(*set.phi, set.tensor("xi"), set.tensor("eta"), metric.get());
  }};
  Lazy<AcsBivector> acs_pair{[this] { return acs_bivector(acs.get()); }};
  Lazy<ContravariantPack> acs_contravariant{[this] { return ContravariantPack(acs_pair.get().pair, metric.get()); }};

  Lazy<ContravariantPack> lcs_contravariant{[this] { return ContravariantPack(lcs_pair.get(), metric.get()); }};
  Lazy<ScalarField> f{[this] {
    if (set.f) return *set.f;
    if (!set.has("theta")) return ScalarField();
    throw UsageError("conformal-kahler needs f when theta is given");
  }};
  Lazy<ConformalDefect> conformal{[this] { return conformal_machinery(set.tensor("omega"), metric.get(), f.get(), pts); }};
  Lazy<HermitianDefect> hermitian{[this] { return hermitian_defects(set.tensor("omega"), metric.get(), pts); }};

  TensorField form(Rng& rng) const { return random_one_form(set.chart, rng, 1); }
  TensorField vec(Rng& rng) const { return random_vector(set.chart, rng, 1); }
  Measurement tensor(const TensorField& t, Rng& rng) const { return measure_tensor(t, pts, 5, rng.next()); }
  Measurement scalar(const ScalarField& s) const { return measure_scalar(s, pts); }
  bool ok(const Measurement& m) const { return m.passes(cfg.tol); }
};

Outcome plain(Measurement m) {
  Outcome o;
  o.m = m;
  return o;
}

Outcome conditional(const Context& c, Measurement hyp, const std::function<Measurement()>& conclusion) {
  Outcome o;
  o.hypothesis = hyp;
  o.m = c.ok(hyp) ? conclusion() : nan_measurement();
  return o;
}

Outcome equivalence(const Context& c, Measurement hyp, const std::function<Measurement()>& a,
                    const std::function<Measurement()>& b) {
  Outcome o;
  o.hypothesis = hyp;
  if (c.ok(hyp)) {
    o.m = a();
    o.other = b();
  } else {
    o.m = nan_measurement();
  }
  return o;
}

// ---------------------------------------------------------------------------
// suites

void jacobi_suite(Context& c, std::vector<Check>& out) {
  out.push_back({"jacobi.schouten", "[pi,pi] - 2 xi ^ pi = 0", Kind::Property,
                 [&c](Rng& rng) { return plain(c.tensor(c.jacobi.get().schouten, rng)); }});
  out.push_back({"jacobi.lie", "L_xi pi = 0", Kind::Property,
                 [&c](Rng& rng) { return plain(c.tensor(c.jacobi.get().lie, rng)); }});
  out.push_back({"jacobi.calibration",
                 "c(sharp_pi [a,b]_pi) - c([sharp_pi a, sharp_pi b]) = 1/2 [pi,pi](a,b,c)", Kind::Identity,
                 [&c](Rng& rng) {
                   const TensorField& pi = c.pair.get().pi;
                   return plain(repeat(c.cfg.samples, [&] {
                     TensorField a = c.form(rng), b = c.form(rng), g = c.form(rng);
                     return c.scalar(calibration_defect(pi, a, b, g));
                   }));
                 }});
}

Measurement jacobi_measure(Context& c, Rng& rng) {
  Measurement m = c.tensor(c.jacobi.get().schouten, rng);
  m.merge(c.tensor(c.jacobi.get().lie, rng));
  return m;
}

Measurement almost_lie(Context& c, const AlgebroidData& data, Rng& rng) {
  return repeat(c.cfg.samples, [&] {
    TensorField a = c.form(rng), b = c.form(rng);
    return c.tensor(torsion_defect(data, a, b).d1, rng);
  });
}

Measurement jacobiator(Context& c, const AlgebroidData& data, Rng& rng) {
  return repeat(c.cfg.samples, [&] {
    TensorField a = c.form(rng), b = c.form(rng), g = c.form(rng);
    return c.tensor(jacobiator_defect(data, a, b, g), rng);
  });
}

void algebroid_suite(Context& c, std::vector<Check>& out) {
  out.push_back({"algebroid.leibniz", "[a, f b] - f [a,b] - sharp(a)(f) b = 0", Kind::Identity, [&c](Rng& rng) {
                   return plain(repeat(c.cfg.samples, [&] {
                     TensorField a = c.form(rng), b = c.form(rng);
                     ScalarField f = random_scalar(*c.chart(), rng, 1);
                     return c.tensor(leibniz_defect(c.algebroid.get(), a, f, b), rng);
                   }));
                 }});
  out.push_back({"algebroid.antisymmetry", "[a,b] + [b,a] = 0", Kind::Identity, [&c](Rng& rng) {
                   return plain(repeat(c.cfg.samples, [&] {
                     TensorField a = c.form(rng), b = c.form(rng);
                     const auto& d = c.algebroid.get();
                     return c.tensor(lambda_bracket(d, a, b) + lambda_bracket(d, b, a), rng);
                   }));
                 }});
  out.push_back({"algebroid.torsion",
                 "Jacobi pair => sharp[a,b] - [sharp a, sharp b] = pi(a,b)(xi - sharp(lambda))",
                 Kind::Conditional, [&c](Rng& rng) {
                   Measurement hyp = jacobi_measure(c, rng);
                   return conditional(c, hyp, [&] {
                     return repeat(c.cfg.samples, [&] {
                       TensorField a = c.form(rng), b = c.form(rng);
                       return c.tensor(torsion_defect(c.algebroid.get(), a, b).d2, rng);
                     });
                   });
                 }});
  out.push_back({"algebroid.almost-lie-criterion",
                 "Jacobi pair => (sharp[a,b] = [sharp a, sharp b] <=> sharp(lambda) = xi)", Kind::Equivalence,
                 [&c](Rng& rng) {
                   Measurement hyp = jacobi_measure(c, rng);
                   Outcome o = equivalence(
                       c, hyp, [&] { return almost_lie(c, c.algebroid.get(), rng); },
                       [&] {
                         const auto& p = c.pair.get();
                         return c.tensor(sharp_pi_xi(p, c.lambda.get()) - p.xi, rng);
                       });
                   o.note = "A: anchor morphism defect, B: sharp(lambda) - xi";
                   return o;
                 }});
  out.push_back({"algebroid.almost-lie", "sharp[a,b] - [sharp a, sharp b] = 0", Kind::Property,
                 [&c](Rng& rng) { return plain(almost_lie(c, c.algebroid.get(), rng)); }});
  out.push_back({"algebroid.jacobiator", "[[a,b],c] + [[b,c],a] + [[c,a],b] = 0", Kind::Property,
                 [&c](Rng& rng) { return plain(jacobiator(c, c.algebroid.get(), rng)); }});
  out.push_back({"algebroid.anchor-lambda", "sharp(lambda) - xi", Kind::Informational, [&c](Rng& rng) {
                   const auto& p = c.pair.get();
                   return plain(c.tensor(sharp_pi_xi(p, c.lambda.get()) - p.xi, rng));
                 }});
}

Outcome volume_outcome(Context& c) {
  VolumeCheck v = contact_volume_defect(c.contact.get(), c.pts, kNonvanishing);
  Outcome o;
  double lo = min_abs(v.component, c.pts);
  o.value = lo;
  o.verdict = v.nonvanishing;
  o.m = Measurement{v.nonvanishing ? 0.0 : kNonvanishing - lo, 0.0};
  o.note = "value: min |eta ^ (d eta)^n| over the samples";
  return o;
}

// NaN (reported as null) when the volume form vanishes at a sample.
Measurement volume_hypothesis(Context& c) {
  VolumeCheck v = contact_volume_defect(c.contact.get(), c.pts, kNonvanishing);
  return v.nonvanishing ? Measurement{} : nan_measurement();
}

void contact_suite(Context& c, std::vector<Check>& out) {
  out.push_back({"contact.volume", "eta ^ (d eta)^n nowhere zero", Kind::Property,
                 [&c](Rng&) { return volume_outcome(c); }});
  out.push_back({"contact.reeb", "contact form => i_xi d eta = 0, eta(xi) = 1 for xi = sharp_eta(eta)",
                 Kind::Conditional, [&c](Rng& rng) {
                   return conditional(c, volume_hypothesis(c), [&] {
                     const TensorField& eta = c.set.tensor("eta");
                     TensorField xi = reeb_field(c.contact.get(), c.pts);
                     Measurement m = c.tensor(interior_product(xi, exterior_derivative(eta)), rng);
                     m.merge(c.scalar(pairing(eta, xi) - ScalarField::constant(1.0)));
                     return m;
                   });
                 }});
  out.push_back({"contact.sharp-flat", "contact form => sharp_eta o flat_eta = Id", Kind::Conditional,
                 [&c](Rng&) {
                   return conditional(c, volume_hypothesis(c), [&] {
                     const auto& s = c.contact.get();
                     MatrixField prod = sharp_eta_matrix(s, c.pts) * flat_eta_matrix(s);
                     return measure_matrix(prod, MatrixField::identity(c.chart(), prod.role()), c.pts);
                   });
                 }});
  out.push_back({"contact.anchor", "contact form => sharp_{pi,xi} = sharp_eta", Kind::Conditional, [&c](Rng&) {
                   return conditional(c, volume_hypothesis(c), [&] {
                     const auto& s = c.contact.get();
                     return measure_matrix(anchor_matrix(c.contact_pair.get()), sharp_eta_matrix(s, c.pts), c.pts);
                   });
                 }});
  out.push_back({"contact.jacobi", "contact form => [pi,pi] = 2 xi ^ pi, L_xi pi = 0", Kind::Conditional,
                 [&c](Rng& rng) {
                   return conditional(c, volume_hypothesis(c), [&] {
                     JacobiDefect d = jacobi_defect(c.contact_pair.get());
                     Measurement m = c.tensor(d.schouten, rng);
                     m.merge(c.tensor(d.lie, rng));
                     return m;
                   });
                 }});
  out.push_back({"contact.jacobiator", "contact form => Jacobi identity of [.,.]^eta", Kind::Conditional,
                 [&c](Rng& rng) {
                   return conditional(c, volume_hypothesis(c), [&] {
                     AlgebroidData data(c.contact_pair.get(), c.set.tensor("eta"));
                     return jacobiator(c, data, rng);
                   });
                 }});
}

Measurement lcs_measure(Context& c, const LcsStructure& s, Rng& rng) {
  LcsDefect d = lcs_defect(s);
  Measurement m = c.tensor(d.closure, rng);
  m.merge(c.tensor(d.dtheta, rng));
  return m;
}

void lcs_suite(Context& c, std::vector<Check>& out) {
  out.push_back({"lcs.nondegenerate", "det omega nowhere zero", Kind::Property, [&c](Rng&) {
                   ScalarField det = determinant(flat_omega_matrix(c.lcs.get()));
                   Outcome o;
                   double lo = min_abs(det, c.pts);
                   o.value = lo;
                   o.verdict = lo > kNonvanishing;
                   o.m = Measurement{*o.verdict ? 0.0 : kNonvanishing - lo, 0.0};
                   o.note = "value: min |det omega| over the samples";
                   return o;
                 }});
  out.push_back({"lcs.structure", "d omega + theta ^ omega = 0, d theta = 0", Kind::Property,
                 [&c](Rng& rng) { return plain(lcs_measure(c, c.lcs.get(), rng)); }});
  out.push_back({"lcs.closure-transfer",
                 "(d omega + theta ^ omega)(X,Y,Z) = (1/2 [pi,pi] - xi ^ pi)(a,b,c), X = sharp_pi a",
                 Kind::Identity, [&c](Rng& rng) {
                   return plain(repeat(c.cfg.samples, [&] {
                     TensorField a = c.form(rng), b = c.form(rng), g = c.form(rng);
                     return c.scalar(lcs_transfer_defect(c.lcs.get(), c.lcs_pair.get(), a, b, g).closure);
                   }));
                 }});
  out.push_back({"lcs.lie-transfer", "(L_xi omega)(X,Y) = -(L_xi pi)(a,b), X = sharp_pi a", Kind::Identity,
                 [&c](Rng& rng) {
                   return plain(repeat(c.cfg.samples, [&] {
                     TensorField a = c.form(rng), b = c.form(rng), g = c.form(rng);
                     return c.scalar(lcs_transfer_defect(c.lcs.get(), c.lcs_pair.get(), a, b, g).lie);
                   }));
                 }});
  out.push_back({"lcs.jacobi-equivalence", "omega nondegenerate => ((omega, theta) lcs <=> (pi, xi) Jacobi)",
                 Kind::Equivalence, [&c](Rng& rng) {
                   ScalarField det = determinant(flat_omega_matrix(c.lcs.get()));
                   Measurement hyp = min_abs(det, c.pts) > kNonvanishing ? Measurement{} : nan_measurement();
                   Outcome o = equivalence(
                       c, hyp, [&] { return lcs_measure(c, c.lcs.get(), rng); },
                       [&] {
                         JacobiDefect d = jacobi_defect(c.lcs_pair.get());
                         Measurement m = c.tensor(d.schouten, rng);
                         m.merge(c.tensor(d.lie, rng));
                         return m;
                       });
                   o.note = "A: lcs defects, B: Jacobi defects of the associated pair";
                   return o;
                 }});
  out.push_back({"lcs.almost-lie", "sharp[a,b]^theta - [sharp a, sharp b] = 0", Kind::Property, [&c](Rng& rng) {
                   AlgebroidData data(c.lcs_pair.get(), c.theta());
                   return plain(almost_lie(c, data, rng));
                 }});
  out.push_back({"lcs.jacobiator", "Jacobi identity of [.,.]^theta", Kind::Property, [&c](Rng& rng) {
                   AlgebroidData data(c.lcs_pair.get(), c.theta());
                   return plain(jacobiator(c, data, rng));
                 }});
}

void connection_suite(Context& c, std::vector<Check>& out) {
  out.push_back({"connection.metric", "sharp(a)(g*(b,c)) = g*(D_a b, c) + g*(b, D_a c)", Kind::Identity,
                 [&c](Rng& rng) {
                   const auto& p = c.contravariant.get();
                   return plain(repeat(c.cfg.samples, [&] {
                     TensorField a = c.form(rng), b = c.form(rng), g = c.form(rng);
                     return c.scalar(metric_compatibility_defect(p, a, b, g));
                   }));
                 }});
  out.push_back({"connection.symmetry", "D_a b - D_b a = [a,b]^{lambda_g}", Kind::Identity, [&c](Rng& rng) {
                   const auto& p = c.contravariant.get();
                   return plain(repeat(c.cfg.samples, [&] {
                     TensorField a = c.form(rng), b = c.form(rng);
                     return c.tensor(symmetry_defect(p, a, b), rng);
                   }));
                 }});
  out.push_back({"connection.d-pi", "(D pi)(a,b,c) = g*((D_a J*) b, c)", Kind::Identity, [&c](Rng& rng) {
                   const auto& p = c.contravariant.get();
                   return plain(repeat(c.cfg.samples, [&] {
                     TensorField a = c.form(rng), b = c.form(rng), g = c.form(rng);
                     return c.scalar(D_tensor_pi(p, a, b, g) - cometric(p.metric, D_J_star(p, a, b), g));
                   }));
                 }});
  out.push_back({"connection.levi-civita", "nabla g = 0, Gamma^k_ij = Gamma^k_ji", Kind::Identity,
                 [&c](Rng& rng) {
                   const auto& cp = c.connection.get();
                   TensorField gt = to_tensor(cp.metric.g);
                   Measurement m = repeat(c.cfg.samples, [&] {
                     return c.tensor(covariant_derivative(cp, c.vec(rng), gt), rng);
                   });
                   const int n = cp.metric.dim();
                   std::vector<ScalarField> torsion;
                   for (int k = 0; k < n; ++k) {
                     for (int i = 0; i < n; ++i) {
                       for (int j = i + 1; j < n; ++j) torsion.push_back(cp(k, i, j) - cp(k, j, i));
                     }
                   }
                   m.merge(measure(torsion, c.pts));
                   return plain(m);
                 }});
  out.push_back({"connection.endomorphisms", "g*(J* a, b) = pi(a,b), g(J X, Y) = pi(flat X, flat Y)",
                 Kind::Identity, [&c](Rng& rng) {
                   const auto& p = c.contravariant.get();
                   return plain(repeat(c.cfg.samples, [&] {
                     TensorField a = c.form(rng), b = c.form(rng);
                     TensorField x = c.vec(rng), y = c.vec(rng);
                     ScalarField pi_ab = evaluate(p.pair.pi, {a, b});
                     Measurement m = c.scalar(cometric(p.metric, apply(p.J_star, a), b) - pi_ab);
                     ScalarField pi_xy = evaluate(p.pair.pi, {flat_g(p.metric, x), flat_g(p.metric, y)});
                     m.merge(c.scalar(metric(p.metric, apply(p.J, x), y) - pi_xy));
                     return m;
                   }));
                 }});
  out.push_back({"connection.cometric-derivative", "d_l g* = -g* (d_l g) g*", Kind::Identity, [&c](Rng&) {
                   const auto& m = c.metric.get();
                   Measurement out_m;
                   for (int l = 0; l < m.dim(); ++l) {
                     std::vector<ScalarField> lhs, rhs;
                     for (int i = 0; i < m.dim(); ++i) {
                       for (int j = 0; j < m.dim(); ++j) {
                         lhs.push_back(partial(m.g_inv(i, j), l));
                         rhs.push_back(m.dg_inv[l](i, j));
                       }
                     }
                     out_m.merge(measure_difference(lhs, rhs, c.pts));
                   }
                   return plain(out_m);
                 }});
  out.push_back({"connection.anchor-intertwine",
                 "almost Lie for lambda_g and sharp an isometry => sharp(D_a b) = nabla_{sharp a} sharp b",
                 Kind::Conditional, [&c](Rng& rng) {
                   const auto& p = c.contravariant.get();
                   Measurement hyp = almost_lie(c, p.data, rng);
                   hyp.merge(repeat(c.cfg.samples, [&] {
                     TensorField a = c.form(rng), b = c.form(rng);
                     return c.scalar(isometry_defect(p.pair, p.metric, a, b));
                   }));
                   return conditional(c, hyp, [&] {
                     return repeat(c.cfg.samples, [&] {
                       TensorField a = c.form(rng), b = c.form(rng);
                       return c.tensor(anchor_intertwine_defect(p, c.connection.get(), a, b), rng);
                     });
                   });
                 }});
  out.push_back({"connection.lambda-g", "lambda_g = g(xi,xi) flat_g(xi) - flat_g(J xi)", Kind::Informational,
                 [&c](Rng& rng) {
                   Outcome o = plain(c.tensor(c.contravariant.get().lambda_g, rng));
                   o.note = "max |lambda_g|; D is built from the bracket [.,.]^{lambda_g}";
                   return o;
                 }});
}

Measurement compatibility_measure(Context& c, const ContravariantPack& p, Rng& rng) {
  return repeat(c.cfg.samples, [&] {
    TensorField a = c.form(rng), b = c.form(rng);
    return c.tensor(compatibility_defect(p, a, b), rng);
  });
}

void compatibility_suite(Context& c, std::vector<Check>& out) {
  out.push_back({"compatibility.pairing", "C_pi(a,b,c) = g*(C(a,b), c)", Kind::Identity, [&c](Rng& rng) {
                   const auto& p = c.contravariant.get();
                   return plain(repeat(c.cfg.samples, [&] {
                     TensorField a = c.form(rng), b = c.form(rng), g = c.form(rng);
                     return c.scalar(compatibility_pi_defect(p, a, b, g) -
                                     cometric(p.metric, compatibility_defect(p, a, b), g));
                   }));
                 }});
  out.push_back({"compatibility.defect",
                 "(D_a J*)b = 1/2(pi(a,b) flat_g xi - b(xi) J*a + g*(a,b) J* flat_g xi + J*b(xi) a)",
                 Kind::Property,
                 [&c](Rng& rng) { return plain(compatibility_measure(c, c.contravariant.get(), rng)); }});
}

Measurement acs_measure(Context& c, Rng& rng) {
  const auto& s = c.acs.get();
  AlmostContactDefect d = almost_contact_defect(s);
  Measurement m = measure_zero_matrix(d.phi_squared, c.pts);
  m.merge(c.scalar(d.eta_xi));
  m.merge(c.tensor(d.phi_xi, rng));
  m.merge(c.tensor(d.eta_phi, rng));
  return m;
}

Measurement associated_measure(Context& c, Rng& rng) {
  AcsMetricDefect d = acs_metric_defect(c.acs.get());
  Measurement m = c.tensor(d.associated, rng);
  m.merge(c.tensor(d.flat_xi, rng));
  return m;
}

Measurement half_kenmotsu_measure(Context& c, Rng& rng) {
  return c.tensor(half_kenmotsu_defect(c.acs.get(), c.connection.get()), rng);
}

void kenmotsu_suite(Context& c, std::vector<Check>& out) {
  out.push_back({"kenmotsu.almost-contact", "Phi^2 = -Id + eta (x) xi, eta(xi) = 1, Phi xi = 0, eta o Phi = 0",
                 Kind::Property, [&c](Rng& rng) { return plain(acs_measure(c, rng)); }});
  out.push_back({"kenmotsu.associated-metric", "g(Phi X, Phi Y) = g(X,Y) - eta(X) eta(Y), flat_g(xi) = eta",
                 Kind::Property, [&c](Rng& rng) { return plain(associated_measure(c, rng)); }});
  out.push_back({"kenmotsu.half-kenmotsu", "(nabla_X Phi) Y = 1/2 (g(Phi X, Y) xi - eta(Y) Phi X)",
                 Kind::Property, [&c](Rng& rng) { return plain(half_kenmotsu_measure(c, rng)); }});
  out.push_back({"kenmotsu.isometry",
                 "almost contact metric => pi skew and g(sharp a, sharp b) = g*(a,b), sharp = sharp_{pi,xi}",
                 Kind::Conditional, [&c](Rng& rng) {
                   Measurement hyp = acs_measure(c, rng);
                   hyp.merge(associated_measure(c, rng));
                   return conditional(c, hyp, [&] {
                     const auto& b = c.acs_pair.get();
                     Measurement m = c.tensor(b.symmetric, rng);
                     m.merge(repeat(c.cfg.samples, [&] {
                       TensorField x = c.form(rng), y = c.form(rng);
                       return c.scalar(isometry_defect(b.pair, c.metric.get(), x, y));
                     }));
                     return m;
                   });
                 }});
  out.push_back({"kenmotsu.intertwine", "almost contact metric => sharp o J* + Phi o sharp = 0",
                 Kind::Conditional, [&c](Rng& rng) {
                   Measurement hyp = acs_measure(c, rng);
                   hyp.merge(associated_measure(c, rng));
                   return conditional(c, hyp, [&] {
                     return measure_zero_matrix(acs_intertwine_defect(c.acs_contravariant.get(), *c.set.phi), c.pts);
                   });
                 }});
  out.push_back({"kenmotsu.contact-metric", "g(X, Phi Y) = d eta(X,Y)", Kind::Informational,
                 [&c](Rng& rng) { return plain(c.tensor(contact_metric_defect(c.acs.get()), rng)); }});
  out.push_back({"kenmotsu.derivative-transfer",
                 "almost Lie => sharp((D_a J*) b) = -(nabla_{sharp a} Phi)(sharp b)", Kind::Conditional,
                 [&c](Rng& rng) {
                   const auto& p = c.acs_contravariant.get();
                   return conditional(c, almost_lie(c, p.data, rng), [&] {
                     return repeat(c.cfg.samples, [&] {
                       TensorField a = c.form(rng), b = c.form(rng);
                       return c.tensor(derivative_transfer_defect(p, c.connection.get(), *c.set.phi, a, b), rng);
                     });
                   });
                 }});
  out.push_back({"kenmotsu.compatibility-equivalence",
                 "almost Lie => ((pi, xi, g) compatible <=> 1/2-Kenmotsu)", Kind::Equivalence, [&c](Rng& rng) {
                   const auto& p = c.acs_contravariant.get();
                   Outcome o = equivalence(
                       c, almost_lie(c, p.data, rng), [&] { return compatibility_measure(c, p, rng); },
                       [&] { return half_kenmotsu_measure(c, rng); });
                   o.note = "A: compatibility defect, B: 1/2-Kenmotsu defect";
                   return o;
                 }});
  out.push_back({"kenmotsu.contact-intertwine",
                 "contact metric structure => sharp(D_a b) = nabla_{sharp a} sharp b", Kind::Conditional,
                 [&c](Rng& rng) {
                   Measurement hyp = acs_measure(c, rng);
                   hyp.merge(associated_measure(c, rng));
                   hyp.merge(c.tensor(contact_metric_defect(c.acs.get()), rng));
                   return conditional(c, hyp, [&] {
                     const auto& p = c.acs_contravariant.get();
                     return repeat(c.cfg.samples, [&] {
                       TensorField a = c.form(rng), b = c.form(rng);
                       return c.tensor(anchor_intertwine_defect(p, c.connection.get(), a, b), rng);
                     });
                   });
                 }});
}

Measurement hermitian_measure(Context& c, Rng& rng) {
  const auto& h = c.hermitian.get();
  Measurement m = c.tensor(h.associated, rng);
  m.merge(measure_zero_matrix(h.square, c.pts));
  m.merge(c.tensor(h.nijenhuis, rng));
  return m;
}

Measurement lcs_isometry(Context& c, Rng& rng) {
  const auto& p = c.lcs_contravariant.get();
  return repeat(c.cfg.samples, [&] {
    TensorField a = c.form(rng), b = c.form(rng);
    return c.scalar(isometry_defect(p.pair, p.metric, a, b));
  });
}

void conformal_suite(Context& c, std::vector<Check>& out) {
  out.push_back({"conformal.hermitian", "omega(X,Y) = g(JX,Y), J^2 = -Id, N_J = 0", Kind::Property,
                 [&c](Rng& rng) {
                   Outcome o = plain(hermitian_measure(c, rng));
                   o.note = "J is the endomorphism of the pair attached to omega: g(J sharp_g a, sharp_g b) = pi(a,b)";
                   return o;
                 }});
  out.push_back({"conformal.connection-formula",
                 "nabla^f_X Y = nabla_X Y + 1/2(X(f) Y + Y(f) X - g(X,Y) grad f)", Kind::Identity,
                 [&c](Rng& rng) { return plain(c.tensor(c.conformal.get().connection, rng)); }});
  out.push_back({"conformal.bridge", "nabla^f(e^f omega) = e^f Lambda_f", Kind::Identity,
                 [&c](Rng& rng) { return plain(c.tensor(c.conformal.get().bridge, rng)); }});
  out.push_back({"conformal.lambda", "Lambda_f = 0", Kind::Property,
                 [&c](Rng& rng) { return plain(c.tensor(c.conformal.get().lambda, rng)); }});
  out.push_back({"conformal.isometry", "g(sharp a, sharp b) = g*(a,b), sharp = sharp_{pi,xi}", Kind::Informational,
                 [&c](Rng& rng) { return plain(lcs_isometry(c, rng)); }});
  out.push_back({"conformal.j-intertwine", "Hermitian and sharp an isometry => J o sharp = sharp o J*",
                 Kind::Conditional, [&c](Rng& rng) {
                   Measurement hyp = hermitian_measure(c, rng);
                   hyp.merge(lcs_isometry(c, rng));
                   return conditional(c, hyp, [&] {
                     return measure_zero_matrix(j_intertwine_defect(c.lcs_pair.get(), c.metric.get()), c.pts);
                   });
                 }});
  out.push_back({"conformal.kahler-equivalence",
                 "Hermitian, sharp an isometry, lcs with theta = df => (compatible <=> Lambda_f = 0)",
                 Kind::Equivalence, [&c](Rng& rng) {
                   Measurement hyp = hermitian_measure(c, rng);
                   hyp.merge(lcs_isometry(c, rng));
                   hyp.merge(lcs_measure(c, c.lcs.get(), rng));
                   hyp.merge(c.tensor(c.theta() - differential(c.chart(), c.f.get()), rng));
                   Outcome o = equivalence(
                       c, hyp, [&] { return compatibility_measure(c, c.lcs_contravariant.get(), rng); },
                       [&] { return c.tensor(c.conformal.get().lambda, rng); });
                   o.note = "A: compatibility defect, B: Lambda_f";
                   return o;
                 }});
}

// ---------------------------------------------------------------------------

std::vector<std::string> missing_entries(const std::string& suite, const Context& c) {
  const StructureSet& s = c.set;
  std::vector<std::string> miss;
  auto need = [&](const char* name) {
    if (!s.has(name)) miss.emplace_back(name);
  };
  if (suite == "jacobi" || suite == "algebroid" || suite == "connection" || suite == "compatibility") {
    if (c.pair_source().empty()) miss.emplace_back("pi (or eta, omega, phi+xi+eta+g)");
    if (suite == "connection" || suite == "compatibility") need("g");
  } else if (suite == "contact") {
    need("eta");
    if (s.has("eta") && !c.contact_capable()) miss.emplace_back("an odd-dimensional chart of dimension >= 3");
  } else if (suite == "lcs") {
    need("omega");
    if (s.chart->dim() % 2 != 0) miss.emplace_back("an even-dimensional chart");
  } else if (suite == "kenmotsu") {
    need("phi");
    need("xi");
    need("eta");
    need("g");
  } else if (suite == "conformal-kahler") {
    need("omega");
    need("g");
    if (s.has("theta") && !s.has("f")) miss.emplace_back("f (required with theta)");
    if (s.chart->dim() % 2 != 0) miss.emplace_back("an even-dimensional chart");
  }
  return miss;
}

void add_suite(const std::string& suite, Context& c, std::vector<Check>& out) {
  if (suite == "jacobi") jacobi_suite(c, out);
  else if (suite == "algebroid") algebroid_suite(c, out);
  else if (suite == "contact") contact_suite(c, out);
  else if (suite == "lcs") lcs_suite(c, out);
  else if (suite == "connection") connection_suite(c, out);
  else if (suite == "compatibility") compatibility_suite(c, out);
  else if (suite == "kenmotsu") kenmotsu_suite(c, out);
  else if (suite == "conformal-kahler") conformal_suite(c, out);
}

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Identity: return "identity";
    case Kind::Property: return "property";
    case Kind::Conditional:
    case Kind::Equivalence: return "conditional";
    case Kind::Informational: return "informational";
  }
  return "?";
}

CheckResult evaluate_check(const Check& check, bool strict, const Context& c, std::uint64_t seed) {
  CheckResult r;
  r.id = check.id;
  r.anchor = check.anchor;
  Kind kind = (check.kind == Kind::Property && !strict) ? Kind::Informational : check.kind;
  r.kind = kind_name(kind);
  r.gating = kind != Kind::Informational;
  Rng rng(seed ^ fnv1a(check.id));
  Outcome o;
  try {
    o = check.run(rng);
  } catch (const std::exception& e) {
    r.status = "error";
    r.pass = false;
    r.max_abs_defect = kNaN;
    r.scale = kNaN;
    r.note = e.what();
    return r;
  }
  r.max_abs_defect = o.m.max_abs;
  r.scale = o.m.scale;
  r.value = o.value;
  r.note = o.note;
  const Tolerance& tol = c.cfg.tol;
  bool ok = o.verdict.value_or(o.m.passes(tol));
  if (check.kind == Kind::Conditional || check.kind == Kind::Equivalence) {
    r.hypothesis_defect = o.hypothesis->max_abs;
    if (!o.hypothesis->passes(tol)) {
      r.status = "hypothesis-not-met";
      r.pass = true;
    } else if (check.kind == Kind::Conditional) {
      r.status = ok ? "confirmed" : "VIOLATED";
      r.pass = ok;
    } else {
      r.value = o.other->max_abs;
      bool agree = ok == o.other->passes(tol);
      r.status = agree ? "confirmed" : "VIOLATED";
      r.pass = agree;
    }
  } else if (check.kind == Kind::Informational) {
    r.status = "measured";
    r.pass = ok;
  } else {
    r.status = ok ? "pass" : "fail";
    r.pass = ok;
  }
  return r;
}

}  // namespace

bool DefectReport::overall() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.gating || c.pass; });
}

std::vector<std::string> suite_names() { return kSuites; }

DefectReport run_suite(const std::string& name, const StructureSet& set, const RunConfig& cfg) {
  bool all = name == "all";
  if (!all && std::find(kSuites.begin(), kSuites.end(), name) == kSuites.end()) {
    throw UsageError("unknown suite '" + name + "'");
  }
  if (cfg.points < 1) throw UsageError("the point count must be positive");
  if (cfg.samples < 1) throw UsageError("the sample count must be positive");

  Context ctx(set, cfg);
  DefectReport report;
  report.chart_id = set.id;
  report.suite = name;
  report.seed = cfg.seed;
  report.points = cfg.points;
  report.tol = cfg.tol;

  std::vector<Check> checks;
  std::vector<bool> strict;
  for (const auto& suite : kSuites) {
    if (!all && suite != name) continue;
    auto miss = missing_entries(suite, ctx);
    if (!miss.empty()) {
      bool claimed = std::find(set.claims.begin(), set.claims.end(), suite) != set.claims.end();
      if (all && !claimed) continue;
      std::string list;
      for (const auto& m : miss) list += (list.empty() ? "" : ", ") + m;
      throw UsageError("suite '" + suite + "' needs " + list);
    }
    bool is_strict = !all || std::find(set.claims.begin(), set.claims.end(), suite) != set.claims.end();
    add_suite(suite, ctx, checks);
    strict.resize(checks.size(), is_strict);
  }

  if (!checks.empty()) {
    std::string src = ctx.pair_source();
    if (!src.empty()) report.notes.push_back("Jacobi pair from " + src + "; algebroid lambda = " + ctx.lambda_source());
    report.notes.push_back("D is the contravariant Levi-Civita derivative for the anchor sharp_{pi,xi} and the bracket "
                           "[.,.]^{lambda_g}; (D pi)(a,b,c) = sharp(a)(pi(b,c)) - pi(D_a b, c) - pi(b, D_a c)");
    if (set.has("omega") && set.g) {
      report.notes.push_back("associated with omega read as omega(X,Y) = g(JX,Y) with J built from the pair of omega");
    }
  }

  std::vector<CheckResult> results(checks.size());
  auto work = [&](std::size_t i) { results[i] = evaluate_check(checks[i], strict[i], ctx, cfg.seed); };
  unsigned threads = cfg.parallel ? std::max(1u, std::thread::hardware_concurrency()) : 1u;
  threads = std::min<unsigned>(threads, static_cast<unsigned>(checks.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < checks.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < checks.size(); i = next++) work(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  report.checks = std::move(results);
  return report;
}

}  // namespace jgeo
