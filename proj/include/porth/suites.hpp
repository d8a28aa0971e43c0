#pragma once

// Property checks behind each catalogue entry. Every check draws its
// instances from the caller's engine and records one sample per assertion.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "porth/cones.hpp"
#include "porth/decomp.hpp"
#include "porth/linalg.hpp"
#include "porth/ortho.hpp"
#include "porth/report.hpp"
#include "porth/sampling.hpp"
#include "porth/spaces.hpp"
#include "porth/support.hpp"

namespace porth {

namespace detail {

using Inputs = std::vector<std::pair<std::string, Vector>>;

class SuiteRun {
 public:
  SuiteRun(SuiteReport& report, Rng& rng) : report_(report), rng_(rng) {}

  [[nodiscard]] const SpaceSpec& space() const { return report_.space; }
  [[nodiscard]] double tol() const { return report_.tolerance; }
  [[nodiscard]] std::size_t target() const { return target_; }
  void set_target(std::size_t n) { target_ = n; }
  Rng& rng() { return rng_; }

  void check(bool ok, double residual, std::string location, Inputs input = {}) {
    ++report_.samples;
    if (ok) {
      ++report_.passes;
    } else {
      report_.counterexamples.push_back({std::move(input), residual, std::move(location)});
    }
  }
  void count(const std::string& key, double by = 1.0) { report_.metrics[key] += by; }
  void worst(const std::string& key, double value) {
    auto& m = report_.metrics[key];
    m = std::max(m, value);
  }
  void metric(const std::string& key, double value) { report_.metrics[key] = value; }
  void note(std::string text) { report_.notes.push_back(std::move(text)); }

 private:
  SuiteReport& report_;
  Rng& rng_;
  std::size_t target_ = 0;
};

inline Vector normalized(const SpaceSpec& s, const Vector& x) { return (1.0 / norm(s, x)) * x; }

inline double scale_of(double x) { return std::max(1.0, std::abs(x)); }

inline OrthoConfig grid_with(double tol) {
  OrthoConfig cfg;
  cfg.tol = tol;
  return cfg;
}

// The isometry of a weighted coordinate norm onto the unweighted one.
inline Vector unweighted(const CoordinateView& v, const Vector& x) {
  Vector y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    y[i] = x[i] * (v.p.is_infinite() ? v.weights[i] : std::pow(v.weights[i], 1.0 / v.p.value()));
  return y;
}

// Positive pair in a coordinate family: disjoint supports (finite p) or a
// box pair below the order unit (p = inf) when orthogonal is set.
inline std::pair<Vector, Vector> coordinate_pair(const SpaceSpec& s, bool orthogonal, Rng& rng) {
  const auto view = *coordinate_view(s);
  const std::size_t n = s.dim;
  const double s1 = std::exp(uniform(rng, -1.0, 1.0));
  const double s2 = std::exp(uniform(rng, -1.0, 1.0));
  Vector u1(n, 0.0), u2(n, 0.0);
  if (view.p.is_infinite()) {
    auto [a, b] = box_pair(n, orthogonal, rng);
    for (std::size_t i = 0; i < n; ++i) {
      u1[i] = s1 * a[i] / view.weights[i];
      u2[i] = s2 * b[i] / view.weights[i];
    }
    return {u1, u2};
  }
  const std::size_t i1 = index(rng, n);
  std::size_t i2 = index(rng, n - 1);
  if (i2 >= i1) ++i2;
  u1[i1] = s1 * (0.25 + uniform(rng));
  u2[i2] = s2 * (0.25 + uniform(rng));
  for (std::size_t i = 0; i < n; ++i) {
    if (i == i1 || i == i2) continue;
    const double r = uniform(rng);
    if (r < 0.35) u1[i] = s1 * exponential(rng);
    else if (r < 0.7) u2[i] = s2 * exponential(rng);
    else if (!orthogonal && r < 0.85) {
      u1[i] = s1 * exponential(rng);
      u2[i] = s2 * exponential(rng);
    }
  }
  if (!orthogonal && coin(rng)) u2[i1] = s2 * exponential(rng);
  return {u1, u2};
}

inline bool coordinate_orthogonal_exact(const SpaceSpec& s, const Vector& x, const Vector& y) {
  const auto view = *coordinate_view(s);
  return p_orthogonal_exact(unweighted(view, x), unweighted(view, y), view.p);
}

// Coefficients with a mix of signs and exact zeros. Negative entries are
// either well below -1e-9 or within 1e-12 of zero, never in between.
inline Vector mixed_coefficients(std::size_t k, bool nonnegative, Rng& rng) {
  Vector a(k);
  for (auto& x : a) {
    const std::size_t kind = index(rng, 5);
    if (kind == 0) x = 0.0;
    else if (kind == 1 && !nonnegative) x = -std::abs(unit_normal(rng));
    else if (kind == 2 && !nonnegative) x = -1e-13 * uniform(rng);
    else x = std::abs(unit_normal(rng));
  }
  return a;
}

// Orthonormal set for the suites working inside a span: positive disjoint
// vectors, or (p = 2) a rotated frame in the weighted inner product.
inline std::vector<Vector> span_frame(const SpaceSpec& s, bool allow_rotated, bool total, Rng& rng) {
  const auto view = *coordinate_view(s);
  if (allow_rotated && !view.p.is_infinite() && view.p.value() == 2.0 && coin(rng)) {
    const std::size_t k = 1 + index(rng, std::min<std::size_t>(8, s.dim));
    auto U = sample_euclidean_set(s.dim, k, rng);
    for (auto& u : U)
      for (std::size_t i = 0; i < u.size(); ++i) u[i] /= std::sqrt(view.weights[i]);
    return U;
  }
  return sample_disjoint_set(s, 8, total, rng);
}

inline Inputs frame_inputs(const std::vector<Vector>& U, const Vector& alpha) {
  Inputs in;
  for (std::size_t i = 0; i < U.size(); ++i) in.emplace_back("u" + std::to_string(i), U[i]);
  in.emplace_back("alpha", alpha);
  return in;
}

// ---------------------------------------------------------------------------
// Orthonormal spans

inline void suite_embedding(SuiteRun& run, bool order_check, bool allow_rotated) {
  const SpaceSpec& s = run.space();
  const Exponent p = coordinate_view(s)->p;
  {
    std::vector<Vector> E;
    for (std::size_t i = 0; i < s.dim; ++i) E.push_back(normalized(s, unit_vector(s.dim, i)));
    const auto r = orthonormal_set_verify(s, E, p, grid_with(run.tol()), 20, run.rng()());
    run.check(r.pairwise_ok && r.unit_norms_ok && r.total && r.additivity_spotcheck, 0.0,
              "standard basis is not a total orthonormal set");
  }
  for (std::size_t t = 1; t < run.target(); ++t) {
    const auto U = span_frame(s, allow_rotated && !order_check, coin(run.rng(), 0.3), run.rng());
    const Vector alpha = mixed_coefficients(U.size(), coin(run.rng()), run.rng());
    const EmbeddingMap emb(U, p);
    const Vector x = emb.embed(alpha);
    const double na = emb.coordinate_norm(alpha);
    const double nx = norm(s, x);
    const double res = std::max(std::abs(nx - na), norm_max(emb.coefficients(x) - alpha));
    bool ok = res <= run.tol() * scale_of(na);
    std::string where = "isometry";
    if (order_check) {
      const bool positive = std::all_of(alpha.begin(), alpha.end(), [](double a) { return a >= 0.0; });
      if (positive != cone_contains(s.cone, x, 0.0)) {
        ok = false;
        where = "order";
      }
    }
    run.worst("max_isometry_residual", res);
    run.check(ok, res, where, frame_inputs(U, alpha));
  }
}

inline void suite_span_smooth(SuiteRun& run) {
  const SpaceSpec& s = run.space();
  const Exponent p = coordinate_view(s)->p;
  const OrthoConfig cfg = grid_with(run.tol());
  for (std::size_t t = 0; t < run.target(); ++t) {
    auto U = span_frame(s, true, false, run.rng());
    if (U.size() < 2 && s.dim >= 2) U = sample_disjoint_set(s, 8, true, run.rng());
    const std::size_t k = U.size();
    const EmbeddingMap emb(U, p);
    Vector a(k), b(k), c(k);
    for (std::size_t i = 0; i < k; ++i) {
      a[i] = exponential(run.rng());
      b[i] = exponential(run.rng());
      c[i] = unit_normal(run.rng());
    }
    const Vector v = emb.embed(c);
    const double nv = norm(s, v);
    // smoothness of the first kind inside the span, for the coefficient order
    const double rhs = aggregate(p, norm(s, v - emb.embed(a)), norm(s, v + emb.embed(b)));
    // and of the second kind, with the coefficient parts
    const auto [cp, cn] = lattice_parts(c);
    const double agg = aggregate(p, norm(s, emb.embed(cp)), norm(s, emb.embed(cn)));
    bool pairwise = true;
    for (std::size_t i = 0; i < k && pairwise; ++i)
      for (std::size_t j = i + 1; j < k && pairwise; ++j)
        pairwise = p_orthogonal_numeric(s, U[i], U[j], p, cfg).orthogonal();
    const double r1 = std::max(0.0, nv - rhs);
    const double r2 = std::abs(agg - nv);
    const bool ok = pairwise && r1 <= run.tol() * scale_of(nv) && r2 <= run.tol() * scale_of(nv);
    run.check(ok, std::max(r1, r2), !pairwise ? "frame not orthogonal" : (r1 > r2 ? "first kind" : "second kind"),
              frame_inputs(U, c));
  }
}

// ---------------------------------------------------------------------------
// Smoothness conditions

// Violation of the first condition for one random triple (<= 0 when it holds).
inline double op1_violation(const SpaceSpec& s, Exponent p, Rng& rng, Inputs& in) {
  const Vector a = std::exp(uniform(rng, -3.0, 1.0)) * sample_cone(s, rng);
  const Vector b = std::exp(uniform(rng, -3.0, 1.0)) * sample_cone(s, rng);
  const Vector v = coin(rng, 0.3) ? sample_cone(s, rng) - sample_cone(s, rng) : sample_vector(s, rng);
  in = {{"a", a}, {"b", b}, {"v", v}};
  const double nv = norm(s, v);
  return (nv - aggregate(p, norm(s, v - a), norm(s, v + b))) / scale_of(nv);
}

// Residual of the second condition for v (<= 0 when a certified split is found).
inline double op2_violation(const SpaceSpec& s, const Vector& v, Exponent p, std::string& why) {
  const auto d = opt_decompose(s, v, p);
  if (!d.ok()) {
    why = std::string("decomposition ") + decomp_status_name(d.status) + ": " + d.note;
    return 1.0;
  }
  const double nv = norm(s, v);
  const double recon = norm_max(d.u1 - d.u2 - v) / scale_of(norm_max(v));
  if (recon > 1e-9 || !cone_contains(s.cone, d.u1) || !cone_contains(s.cone, d.u2)) {
    why = "parts do not certify";
    return std::max(recon, 1.0);
  }
  why = "aggregate exceeds the norm";
  return (d.norm_aggregate - nv - 1e-6) / scale_of(nv);
}

inline void suite_op1(SuiteRun& run) {
  const SpaceSpec& s = run.space();
  for (std::size_t t = 0; t < run.target(); ++t) {
    Inputs in;
    const double r = op1_violation(s, s.p_class, run.rng(), in);
    run.check(r <= run.tol(), std::max(r, 0.0), "first condition", std::move(in));
  }
}

inline void suite_op2(SuiteRun& run) {
  const SpaceSpec& s = run.space();
  for (std::size_t t = 0; t < run.target(); ++t) {
    const Vector v = sample_vector(s, run.rng());
    std::string why;
    const double r = op2_violation(s, v, s.p_class, why);
    run.check(r <= run.tol(), std::max(r, 0.0), why, {{"v", v}});
  }
}

inline void suite_duality(SuiteRun& run) {
  const SpaceSpec& s = run.space();
  const SpaceSpec d = *dual_space(s);
  const Exponent p = s.p_class;
  const Exponent q = d.p_class;
  for (std::size_t t = 0; t < run.target(); ++t) {
    Inputs in1, in2;
    const double a = op1_violation(s, p, run.rng(), in1);
    const double b = op1_violation(d, q, run.rng(), in2);
    const Vector v = sample_vector(s, run.rng());
    const Vector f = sample_vector(d, run.rng());
    std::string w1, w2;
    const double c = op2_violation(s, v, p, w1);
    const double e = op2_violation(d, f, q, w2);
    const double worst = std::max({a, b, c, e});
    std::string where = "ok";
    if (a > run.tol()) where = "first condition in the space";
    else if (b > run.tol()) where = "first condition in the dual";
    else if (c > run.tol()) where = "second condition in the space: " + w1;
    else if (e > run.tol()) where = "second condition in the dual: " + w2;
    Inputs in = in1;
    for (auto& [k, x] : in2) in.emplace_back("dual_" + k, x);
    in.emplace_back("v", v);
    in.emplace_back("f", f);
    run.check(worst <= run.tol(), std::max(worst, 0.0), where, std::move(in));
  }
}

inline void suite_exact_dual_split(SuiteRun& run) {
  const SpaceSpec& s = run.space();
  if (s.p_class.is_one()) run.note("conjugate exponent inf is checked in the max form");
  for (std::size_t t = 0; t < run.target(); ++t) {
    const Vector f = sample_vector(s, run.rng());
    const auto d = dual_minimal_decompose(s, f);
    const double nf = dual_norm(s, f);
    double r = 1.0;
    std::string where = d.note;
    if (d.ok()) {
      const double recon = norm_max(d.u1 - d.u2 - f) / scale_of(norm_max(f));
      const bool positive = dual_cone_contains(s.cone, d.u1) && dual_cone_contains(s.cone, d.u2);
      r = std::max(recon, std::abs(d.norm_aggregate - nf) / scale_of(nf));
      where = positive ? "aggregate differs from the dual norm" : "parts outside the dual cone";
      if (!positive) r = std::max(r, 1.0);
    }
    run.worst("max_equality_residual", r);
    run.check(r <= run.tol(), r, where, {{"f", f}});
  }
}

// ---------------------------------------------------------------------------
// Positive pairs and cone coefficients

inline void suite_positive_pair(SuiteRun& run) {
  const SpaceSpec& s = run.space();
  for (std::size_t t = 0; t < run.target(); ++t) {
    Vector u1, u2;
    for (;;) {
      std::tie(u1, u2) = coordinate_pair(s, coin(run.rng(), 0.8), run.rng());
      if (!is_zero(u2) && coordinate_orthogonal_exact(s, u1, u2)) break;
      run.count("rejected_candidates");
    }
    const bool in = cone_contains(s.cone, u1 - u2);
    run.check(!in, 0.0, "difference of an orthogonal pair is positive", {{"u1", u1}, {"u2", u2}});
  }
}

inline void suite_cone_coefficients(SuiteRun& run) {
  const SpaceSpec& s = run.space();
  for (std::size_t t = 0; t < run.target(); ++t) {
    const auto U = sample_disjoint_set(s, 8, coin(run.rng(), 0.3), run.rng());
    const Vector alpha = mixed_coefficients(U.size(), coin(run.rng(), 0.3), run.rng());
    const Vector x = EmbeddingMap(U, coordinate_view(s)->p).embed(alpha);
    const bool coeffs = std::all_of(alpha.begin(), alpha.end(), [](double a) { return a >= -1e-9; });
    run.check(coeffs == cone_contains(s.cone, x), 0.0, coeffs ? "positive coefficients, x outside" : "x positive",
              frame_inputs(U, alpha));
  }
}

// ---------------------------------------------------------------------------
// Supports

inline Vector sample_positive(const SpaceSpec& s, Rng& rng) {
  const double sc = std::exp(uniform(rng, -2.0, 2.0));
  if (coin(rng, 0.3)) {
    if (const auto e = order_unit_of(s)) return sc * sample_boundary(s, *e, rng);
    if (s.cone.kind == ConeKind::nonneg_orthant && s.dim > 1) {
      Vector u = sample_cone(s, rng);
      for (auto& x : u)
        if (coin(rng, 0.4)) x = 0.0;
      u[index(rng, s.dim)] = 1.0;
      return sc * u;
    }
  }
  return sc * sample_cone(s, rng);
}

inline void suite_support_exists(SuiteRun& run) {
  const SpaceSpec& s = run.space();
  for (std::size_t t = 0; t < run.target(); ++t) {
    const Vector u = sample_positive(s, run.rng());
    const auto sr = positive_support(s, u);
    const double nu = norm(s, u);
    const double r1 = std::abs(dual_norm(s, sr.functional) - 1.0);
    const double r2 = std::abs(sr.attained_value - nu) / scale_of(nu);
    const bool positive = dual_cone_contains(s.cone, sr.functional);
    run.worst("max_support_residual", std::max(r1, r2));
    run.check(positive && r1 <= run.tol() && r2 <= run.tol(), std::max(r1, r2),
              positive ? "support does not norm u" : "support is not positive",
              {{"u", u}, {"f", sr.functional}});
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Infinity-orthogonality of positive pairs

/// The three characterisations of u1 infinity-orthogonal to u2 for positive
/// u1, u2 in a space of class p = inf: (1) the normalized sum has norm one;
/// (2) the defining identity on the k grid; (3) positive supports f_i of
/// u_i vanish crosswise and their restrictions to span{u1, u2} are
/// 1-orthogonal. Statement (3) is conjunctive and stops at the first false
/// part.
struct InftyStatements {
  bool s1 = false, s2 = false, s3 = false;
  double norm_sum = 0.0;
  double grid_residual = 0.0;
  double cross = 0.0;
  std::optional<double> restricted_residual;
  Functional f1, f2;

  [[nodiscard]] bool agree() const { return s1 == s2 && s2 == s3; }
};

inline InftyStatements infty_statements(const SpaceSpec& s, const Vector& u1, const Vector& u2, double tol) {
  InftyStatements st;
  const auto rep = infty_positive_report(s, u1, u2, tol);
  st.norm_sum = rep.norm_sum;
  st.s1 = rep.orthogonal;
  const auto grid = p_orthogonal_numeric(s, u1, u2, Exponent::infinity(), detail::grid_with(tol));
  st.grid_residual = grid.worst_residual;
  st.s2 = grid.orthogonal();

  const Vector h1 = detail::normalized(s, u1);
  const Vector h2 = detail::normalized(s, u2);
  st.f1 = positive_support(s, h1).functional;
  st.f2 = positive_support(s, h2).functional;
  st.cross = std::max(std::abs(dot(st.f1, h2)), std::abs(dot(st.f2, h1)));
  if (st.cross > tol || rank_of({h1, h2}, 1e-12) < 2) return st;
  const RestrictedDualNorm w(s, h1, h2);
  const Vector g1{dot(st.f1, h1), dot(st.f1, h2)};
  const Vector g2{dot(st.f2, h1), dot(st.f2, h2)};
  const auto v = p_orthogonal_with(w.as_norm(), g1, g2, Exponent(1.0), detail::grid_with(tol));
  st.restricted_residual = v.worst_residual;
  st.s3 = v.orthogonal();
  return st;
}

namespace detail {

inline std::string statements_text(const InftyStatements& st) {
  auto b = [](bool x) { return x ? "T" : "F"; };
  return std::string("statements (1,2,3) = (") + b(st.s1) + "," + b(st.s2) + "," + b(st.s3) + ")";
}

inline void suite_three_way(SuiteRun& run) {
  const SpaceSpec& s = run.space();
  const Vector e = *order_unit_of(s);
  for (std::size_t t = 0; t < run.target(); ++t) {
    const auto [u1, u2] = sample_order_unit_pair(s, e, coin(run.rng()), run.rng());
    const auto st = infty_statements(s, u1, u2, run.tol());
    if (st.s1) run.count("orthogonal_pairs");
    run.check(st.agree(), std::abs(st.norm_sum - 1.0), statements_text(st), {{"u1", u1}, {"u2", u2}});
  }
}

inline void suite_extension(SuiteRun& run) {
  const SpaceSpec& s = run.space();
  const Vector e = *order_unit_of(s);
  for (std::size_t t = 0; t < run.target(); ++t) {
    const auto [u1, u2] = sample_order_unit_pair(s, e, coin(run.rng(), 0.7), run.rng());
    const auto rep = infty_positive_report(s, u1, u2, run.tol());
    // sum and difference of the normalized pair have equal norms iff orthogonal
    const bool equal = std::abs(rep.norm_sum - rep.norm_diff) <= run.tol();
    double r = rep.orthogonal == equal ? 0.0 : std::abs(rep.norm_sum - rep.norm_diff);
    std::string where = "sum and difference norms";
    if (r == 0.0 && rep.orthogonal) {
      const auto st = infty_statements(s, u1, u2, run.tol());
      if (st.s1 && st.s2 && st.s3) {
        run.count("extension_checks");
        for (int k = 0; k < 3; ++k) {
          const double a1 = unit_normal(run.rng());
          const double a2 = unit_normal(run.rng());
          const double n = dual_norm(s, axpy(a1 * st.f1, a2, st.f2));
          r = std::max(r, std::abs(n - std::abs(a1) - std::abs(a2)) / (std::abs(a1) + std::abs(a2)));
        }
        where = "extension norm";
      }
    }
    run.check(r <= run.tol(), r, where, {{"u1", u1}, {"u2", u2}});
  }
}

inline void suite_infty_pair(SuiteRun& run) {
  const SpaceSpec& s = run.space();
  const Vector e = *order_unit_of(s);
  for (std::size_t t = 0; t < run.target(); ++t) {
    Vector u1, u2;
    for (;;) {
      std::tie(u1, u2) = sample_order_unit_pair(s, e, coin(run.rng(), 0.9), run.rng());
      if (infty_positive_test(s, u1, u2, run.tol())) break;
      run.count("rejected_candidates");
    }
    run.check(!cone_contains(s.cone, u1 - u2), 0.0, "difference of an orthogonal pair is positive",
              {{"u1", u1}, {"u2", u2}});
  }
}

inline void suite_below_unit(SuiteRun& run) {
  const SpaceSpec& s = run.space();
  const Vector e = *order_unit_of(s);
  run.note("approximate order-unit variant exercised only for a constant net");
  for (std::size_t t = 0; t < run.target(); ++t) {
    const auto [u1, u2] = sample_order_unit_pair(s, e, coin(run.rng()), run.rng());
    const auto grid = p_orthogonal_numeric(s, u1, u2, Exponent::infinity(), grid_with(run.tol()));
    const Vector gap = e - normalized(s, u1) - normalized(s, u2);
    const bool below = cone_contains(s.cone, gap, run.tol());
    if (below) run.count("orthogonal_pairs");
    run.check(grid.orthogonal() == below, grid.worst_residual,
              below ? "below e but not orthogonal" : "orthogonal but not below e", {{"u1", u1}, {"u2", u2}});
  }
}

inline void suite_crust(SuiteRun& run) {
  const SpaceSpec& s = run.space();
  const Vector e = *order_unit_of(s);
  for (std::size_t t = 0; t < run.target(); ++t) {
    const double sc = std::exp(uniform(run.rng(), -1.0, 1.0));
    const Vector u = sc * (coin(run.rng()) ? sample_boundary(s, e, run.rng()) : sample_cone(s, run.rng()));
    const auto probe = crust_probe(s, u);
    const Vector partner = axpy(e, -1.0 / norm(s, u), u);
    const bool has_partner = !is_zero(partner) && cone_contains(s.cone, partner) &&
                             p_orthogonal_numeric(s, u, partner, Exponent::infinity(), grid_with(run.tol())).orthogonal();
    double r = probe.has_value() == has_partner ? 0.0 : 1.0;
    std::string where = has_partner ? "partner without crust" : "crust without partner";
    if (probe) {
      run.count("crusts");
      const auto& f = probe->crust.functional;
      const double rf = std::max(std::abs(dot(f, u)) / norm(s, u), std::abs(dual_norm(s, f) - 1.0));
      if (!dual_cone_contains(s.cone, f) || rf > run.tol()) {
        r = std::max(r, std::max(rf, run.tol() * 2));
        where = "crust does not certify";
      }
    }
    run.check(r == 0.0, r, where, {{"u", u}});
  }
}

inline Matrix psd_sqrt(const Matrix& m) {
  return spectral_map(eigen_sym(m), [](double l) { return l > 0.0 ? std::sqrt(l) : 0.0; });
}

// Norm-one positive candidates that tend to be infinity-orthogonal to u.
inline Vector partner_candidate(const SpaceSpec& s, const Vector& partner, Rng& rng) {
  Vector v;
  if (coin(rng, 0.2)) {
    v = sample_cone(s, rng);
  } else if (s.cone.kind == ConeKind::nonneg_orthant) {
    v = partner;
    for (auto& x : v)
      if (coin(rng)) x *= uniform(rng);
  } else if (s.cone.kind == ConeKind::psd) {
    const std::size_t d = s.cone.side;
    Vector r(d);
    for (auto& x : r) x = coin(rng) ? 1.0 : uniform(rng);
    const Matrix root = psd_sqrt(symmetric_matrix(partner, d));
    v = congruence(root, with_spectrum(random_rotation(d, rng), r)).flat();
  } else {
    const double lambda = coin(rng) ? 0.0 : uniform(rng, 0.0, 0.3);
    v = axpy((1.0 - lambda) * partner, lambda, normalized(s, sample_cone(s, rng)));
  }
  if (is_zero(v)) v = partner;
  return normalized(s, v);
}

inline void suite_greatest(SuiteRun& run) {
  const SpaceSpec& s = run.space();
  const Vector e = *order_unit_of(s);
  const std::size_t cap = 50 * std::max<std::size_t>(run.target(), 1);
  std::size_t tries = 0;
  std::size_t found = 0;
  while (found < run.target() && tries < cap) {
    ++tries;
    const Vector u = sample_boundary(s, e, run.rng());
    const Vector partner = axpy(e, -1.0 / norm(s, u), u);
    const Vector v = partner_candidate(s, partner, run.rng());
    if (!p_orthogonal_numeric(s, u, v, Exponent::infinity(), grid_with(run.tol())).orthogonal()) continue;
    ++found;
    const Vector gap = partner - v;
    run.check(cone_contains(s.cone, gap, run.tol()), 0.0, "orthogonal unit element above e - u/|u|",
              {{"u", u}, {"v", v}});
  }
  run.count("candidates", static_cast<double>(tries));
  if (found < run.target()) run.note("candidate budget exhausted before reaching the sample count");
}

// ---------------------------------------------------------------------------
// Base-normed families and their duals

struct SupportedPair {
  Vector u1, u2;
  Functional f1, f2;
  std::string kind;
};

// Positive pair in a base-normed family with positive supports: the base
// functional restricted to supp u (orthant only), an LP support, or the
// base functional itself.
inline SupportedPair base_pair(const SpaceSpec& s, Rng& rng) {
  const Functional phi = *base_functional_of(s);
  SupportedPair sp;
  if (s.cone.kind == ConeKind::nonneg_orthant && s.dim >= 2) {
    Vector a, b;
    std::tie(a, b) = [&] {
      const std::size_t n = s.dim;
      Vector x(n, 0.0), y(n, 0.0);
      const bool disjoint = coin(rng, 0.6);
      const std::size_t i1 = index(rng, n);
      std::size_t i2 = index(rng, n - 1);
      if (i2 >= i1) ++i2;
      x[i1] = 0.25 + uniform(rng);
      y[i2] = 0.25 + uniform(rng);
      for (std::size_t i = 0; i < n; ++i) {
        if (i == i1 || i == i2) continue;
        const double r = uniform(rng);
        if (r < 0.3) x[i] = exponential(rng);
        else if (r < 0.6) y[i] = exponential(rng);
        else if (!disjoint && r < 0.8) {
          x[i] = exponential(rng);
          y[i] = exponential(rng);
        }
      }
      return std::pair{x, y};
    }();
    sp.u1 = std::exp(uniform(rng, -1.0, 1.0)) * a;
    sp.u2 = std::exp(uniform(rng, -1.0, 1.0)) * b;
  } else {
    sp.u1 = sample_positive(s, rng);
    sp.u2 = sample_positive(s, rng);
  }
  auto make = [&](const Vector& u, std::size_t kind) -> Functional {
    if (kind == 0 && s.cone.kind == ConeKind::nonneg_orthant) {
      Functional f(s.dim, 0.0);
      for (std::size_t i = 0; i < s.dim; ++i)
        if (u[i] != 0.0) f[i] = phi[i];
      return f;
    }
    if (kind == 1) return positive_support(s, u).functional;
    return phi;
  };
  const double r = uniform(rng);
  const std::size_t k1 = r < 0.7 ? 0 : (r < 0.9 ? 1 : 2);
  const std::size_t k2 = coin(rng, 0.8) ? k1 : index(rng, 3);
  sp.f1 = make(sp.u1, k1);
  sp.f2 = make(sp.u2, k2);
  sp.kind = "supports " + std::to_string(k1) + "," + std::to_string(k2);
  return sp;
}

// Restrictions of f1, f2 to span{u1, u2}, tested for infinity-orthogonality.
inline OrthoVerdict restricted_infty(const SpaceSpec& s, const SupportedPair& sp, double tol) {
  const Vector h1 = normalized(s, sp.u1);
  const Vector h2 = normalized(s, sp.u2);
  const RestrictedDualNorm w(s, h1, h2);
  const Vector g1{dot(sp.f1, h1), dot(sp.f1, h2)};
  const Vector g2{dot(sp.f2, h1), dot(sp.f2, h2)};
  return p_orthogonal_with(w.as_norm(), g1, g2, Exponent::infinity(), grid_with(tol));
}

inline double cross_terms(const SpaceSpec& s, const SupportedPair& sp) {
  return std::max(std::abs(dot(sp.f1, normalized(s, sp.u2))), std::abs(dot(sp.f2, normalized(s, sp.u1))));
}

inline Inputs pair_inputs(const SupportedPair& sp) {
  return {{"u1", sp.u1}, {"u2", sp.u2}, {"f1", sp.f1}, {"f2", sp.f2}};
}

inline void suite_one_orth(SuiteRun& run) {
  const SpaceSpec& s = run.space();
  for (std::size_t t = 0; t < run.target(); ++t) {
    const auto sp = base_pair(s, run.rng());
    const double cross = cross_terms(s, sp);
    const bool one = p_orthogonal_numeric(s, sp.u1, sp.u2, Exponent(1.0), grid_with(run.tol())).orthogonal();
    const bool left = one && cross <= run.tol();
    const bool right = restricted_infty(s, sp, run.tol()).orthogonal();
    if (left) run.count("equivalent_true");
    run.check(left == right, cross, sp.kind + (left ? ": restrictions not orthogonal" : ": restrictions orthogonal"),
              pair_inputs(sp));
  }
}

inline void suite_restriction(SuiteRun& run) {
  const SpaceSpec& s = run.space();
  const std::size_t cap = 50 * std::max<std::size_t>(run.target(), 1);
  std::size_t tries = 0;
  std::size_t found = 0;
  auto dual = [&s](const Vector& g) { return dual_norm(s, g); };
  while (found < run.target() && tries < cap) {
    ++tries;
    const auto sp = base_pair(s, run.rng());
    const bool fo = p_orthogonal_with(dual, sp.f1, sp.f2, Exponent::infinity(), grid_with(run.tol())).orthogonal();
    const bool go = restricted_infty(s, sp, run.tol()).orthogonal();
    if (!fo) {
      if (go) run.count("restricted_orthogonal_only");
      continue;
    }
    ++found;
    run.check(go, 0.0, sp.kind + ": restrictions not orthogonal", pair_inputs(sp));
  }
  run.count("candidates", static_cast<double>(tries));
  run.note("converse direction is not asserted; restricted_orthogonal_only counts its instances");
  if (found < run.target()) run.note("candidate budget exhausted before reaching the sample count");
}

inline void suite_base_orth(SuiteRun& run) {
  const SpaceSpec& s = run.space();
  const std::size_t cap = 50 * std::max<std::size_t>(run.target(), 1);
  std::size_t tries = 0;
  std::size_t found = 0;
  while (found < run.target() && tries < cap) {
    ++tries;
    const auto sp = base_pair(s, run.rng());
    if (cross_terms(s, sp) > run.tol()) continue;
    ++found;
    const auto v = p_orthogonal_numeric(s, sp.u1, sp.u2, Exponent(1.0), grid_with(run.tol()));
    run.check(v.orthogonal(), v.worst_residual, sp.kind + ": pair not 1-orthogonal", pair_inputs(sp));
  }
  run.count("candidates", static_cast<double>(tries));
  if (found < run.target()) run.note("candidate budget exhausted before reaching the sample count");
}

inline void suite_dual_split(SuiteRun& run) {
  const SpaceSpec& s = run.space();
  for (std::size_t t = 0; t < run.target(); ++t) {
    const Vector f = sample_vector(s, run.rng());
    const auto dd = dual_one_orth_decompose(s, f);
    double r = 1.0;
    std::string where = dd.parts.note;
    if (dd.parts.ok()) {
      const auto& p = dd.parts;
      const double nf = scale_of(dd.dual_norm_f);
      const double recon = norm_max(p.u1 - p.u2 - f) / scale_of(norm_max(f));
      const bool positive = dual_cone_contains(s.cone, p.u1) && dual_cone_contains(s.cone, p.u2);
      const bool orth = p.ortho_verdict && p.ortho_verdict->orthogonal();
      const double cross = dd.cross_residual.value_or(0.0) / nf;
      r = std::max({recon, dd.additivity_gap / nf, cross});
      if (!positive || !orth) r = std::max(r, 1.0);
      where = !positive ? "parts outside the dual cone"
              : !orth   ? "parts not 1-orthogonal"
                        : "additivity or cross terms";
      if (dd.cross_residual) run.count("cross_checked");
    }
    run.worst("max_residual", r < 1.0 ? r : 0.0);
    run.check(r <= run.tol(), r, where, {{"f", f}});
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// The cos x example on a grid of [0, 2 pi]

struct Example46 {
  SpaceSpec space;
  Vector x, f, fplus, fminus, g1, g2;
};

inline constexpr std::size_t kExample46Grid = 2049;

inline Example46 build_example_46(std::size_t n) {
  if (n < 3) throw InputError("example grid needs n >= 3");
  Example46 ex;
  ex.space = sup_space(n);
  ex.x.resize(n);
  ex.f.resize(n);
  ex.fplus.resize(n);
  ex.fminus.resize(n);
  ex.g1.resize(n);
  ex.g2.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n - 1);
    ex.x[j] = x;
    // cos^2 + sin^2 is not 1 in floating point; compute the larger square
    // and take the other as its complement so that g1 + g2 = 1 exactly.
    const double c = std::cos(x / 2.0);
    const double sn = std::sin(x / 2.0);
    if (c * c >= 0.5) {
      ex.g1[j] = c * c;
      ex.g2[j] = 1.0 - ex.g1[j];
    } else {
      ex.g2[j] = sn * sn;
      ex.g1[j] = 1.0 - ex.g2[j];
    }
    ex.f[j] = ex.g1[j] - ex.g2[j];
    ex.fplus[j] = std::max(ex.f[j], 0.0);
    ex.fminus[j] = std::max(-ex.f[j], 0.0);
  }
  return ex;
}

namespace detail {

inline void suite_example_46(SuiteRun& run, std::size_t n) {
  constexpr double tight = 1e-12;
  const auto ex = build_example_46(n);
  const SpaceSpec& s = ex.space;
  const Vector e(n, 1.0);
  OrthoConfig cfg;
  cfg.tol = tight;

  double cosine = 0.0;
  for (std::size_t j = 0; j < n; ++j) cosine = std::max(cosine, std::abs(ex.f[j] - std::cos(ex.x[j])));
  run.metric("cos_residual", cosine);
  run.check(cosine <= tight, cosine, "f differs from cos x");

  run.check(ex.fplus - ex.fminus == ex.f, norm_max(ex.fplus - ex.fminus - ex.f), "f != f+ - f-");
  run.check(ex.g1 - ex.g2 == ex.f, norm_max(ex.g1 - ex.g2 - ex.f), "f != g1 - g2");
  run.check(ex.g1 + ex.g2 == e, norm_max(ex.g1 + ex.g2 - e), "g1 + g2 != e");
  const bool positive = cone_contains(s.cone, ex.fplus, 0.0) && cone_contains(s.cone, ex.fminus, 0.0) &&
                        cone_contains(s.cone, ex.g1, 0.0) && cone_contains(s.cone, ex.g2, 0.0);
  run.check(positive, 0.0, "parts not positive");

  auto certify = [&](const Vector& a, const Vector& b, const std::string& name) {
    const auto grid = p_orthogonal_numeric(s, a, b, Exponent::infinity(), cfg);
    const auto rep = infty_positive_report(s, a, b, 0.0);
    run.metric(name + "_grid_residual", grid.worst_residual);
    run.metric(name + "_normalized_sum", rep.norm_sum);
    run.check(grid.orthogonal(), grid.worst_residual, name + " grid residual");
    run.check(rep.norm_sum == 1.0, std::abs(rep.norm_sum - 1.0), name + " normalized sum is not 1");
  };
  certify(ex.fplus, ex.fminus, "lattice");
  certify(ex.g1, ex.g2, "squares");

  const double gap = norm_max(ex.fplus - ex.g1);
  run.metric("max_gap", gap);
  run.check(std::abs(gap - 0.5) <= tight, std::abs(gap - 0.5), "gap between f+ and g1 is not 0.5");
}

}  // namespace detail

}  // namespace porth
