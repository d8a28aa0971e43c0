#pragma once

// Decompositions v = u1 - u2 into positive parts: norm-minimal ones, the
// infinity-orthogonal lattice/spectral split, and the split of a dual
// functional into 1-orthogonal positive parts. Also the coefficient map of
// an orthonormal set onto l_p coordinates.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "porth/cones.hpp"
#include "porth/linalg.hpp"
#include "porth/lp.hpp"
#include "porth/ortho.hpp"
#include "porth/spaces.hpp"
#include "porth/support.hpp"

namespace porth {

enum class DecompStatus { ok, not_converged, unsupported };

inline const char* decomp_status_name(DecompStatus s) {
  switch (s) {
    case DecompStatus::ok: return "ok";
    case DecompStatus::not_converged: return "not_converged";
    case DecompStatus::unsupported: return "unsupported";
  }
  return "?";
}

struct Decomposition {
  DecompStatus status = DecompStatus::ok;
  Vector u1, u2;
  Exponent p{1.0};
  double norm_aggregate = 0.0;
  std::optional<OrthoVerdict> ortho_verdict;
  int iterations = 0;
  std::string note;

  [[nodiscard]] bool ok() const { return status == DecompStatus::ok; }
};

struct DecomposeOptions {
  double epsilon = 1e-6;
  int max_iters = 5000;
  /// Starting cone coefficients (a, b) with u1 = G a, u2 = G b for the
  /// iterative solver; an LP-feasible point is used when empty.
  std::optional<std::pair<Vector, Vector>> start;
};

namespace detail {

inline Decomposition unsupported(std::string why) {
  Decomposition d;
  d.status = DecompStatus::unsupported;
  d.note = std::move(why);
  return d;
}

inline Decomposition make_decomposition(const SpaceSpec& s, Vector u1, Vector u2, Exponent p) {
  Decomposition d;
  d.p = p;
  d.norm_aggregate = aggregate(p, norm(s, u1), norm(s, u2));
  d.u1 = std::move(u1);
  d.u2 = std::move(u2);
  return d;
}

// Positive and negative spectral parts; eigenvalues with |l| <= cut go to
// neither.
inline std::pair<Matrix, Matrix> spectral_parts(const Matrix& m, double cut) {
  const auto sd = eigen_sym(m);
  return {spectral_map(sd, [cut](double l) { return l > cut ? l : 0.0; }),
          spectral_map(sd, [cut](double l) { return l < -cut ? -l : 0.0; })};
}

inline std::pair<Vector, Vector> lattice_parts(const Vector& v) {
  Vector a(v.size()), b(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    a[i] = std::max(v[i], 0.0);
    b[i] = std::max(-v[i], 0.0);
  }
  return {a, b};
}

// Exact minimal decomposition for p in {1, inf} over a polyhedral cone and
// norm. A second LP picks, among optimal decompositions, one with least
// total cone coefficients.
inline Decomposition lp_decompose(const SpaceSpec& s, const Vector& v, Exponent p) {
  const auto gens = s.cone.finite_generators();
  double best = 0.0;
  Vector u1, u2;
  for (int stage = 0; stage < 2; ++stage) {
    LpBuilder b;
    const auto a = b.add_vars(gens.size());
    const auto c = b.add_vars(gens.size());
    const LinVec x1 = combine(gens, a);
    const LinVec x2 = combine(gens, c);
    for (std::size_t i = 0; i < s.dim; ++i) b.add_eq(x1[i] - x2[i], v[i]);
    const auto t1 = b.add_var(0.0);
    const auto t2 = b.add_var(0.0);
    add_primal_epigraph(b, s, x1, LinExpr::var(t1));
    add_primal_epigraph(b, s, x2, LinExpr::var(t2));
    LinExpr cost;
    if (p.is_infinite()) {
      const auto T = b.add_var(0.0);
      b.add_le(LinExpr::var(t1) - LinExpr::var(T), 0.0);
      b.add_le(LinExpr::var(t2) - LinExpr::var(T), 0.0);
      cost = LinExpr::var(T);
    } else {
      cost = LinExpr::var(t1) + LinExpr::var(t2);
    }
    if (stage == 0) {
      b.minimize(cost);
    } else {
      b.add_le(cost, best + 1e-9 * std::max(1.0, best));
      LinExpr total;
      for (auto k : a) total.add(k, 1.0);
      for (auto k : c) total.add(k, 1.0);
      b.minimize(total);
    }
    const auto out = b.solve();
    if (out.status == LpStatus::infeasible) throw InputError("opt_decompose: v is not in the span of the cone");
    if (out.status != LpStatus::optimal) throw std::runtime_error("opt_decompose: LP failed");
    if (stage == 0) best = out.optimum;
    u1 = LpBuilder::value(x1, out.argument);
    u2 = LpBuilder::value(x2, out.argument);
  }
  return make_decomposition(s, std::move(u1), std::move(u2), p);
}

// Cone coefficients (a, b) with G a - G b = v, minimizing sum(a) + sum(b).
inline std::pair<Vector, Vector> feasible_coefficients(const std::vector<Vector>& gens, const Vector& v) {
  LpBuilder b;
  const auto a = b.add_vars(gens.size());
  const auto c = b.add_vars(gens.size());
  const LinVec x1 = combine(gens, a);
  const LinVec x2 = combine(gens, c);
  for (std::size_t i = 0; i < v.size(); ++i) b.add_eq(x1[i] - x2[i], v[i]);
  LinExpr total;
  for (auto k : a) total.add(k, 1.0);
  for (auto k : c) total.add(k, 1.0);
  b.minimize(total);
  const auto out = b.solve();
  if (out.status != LpStatus::optimal) throw InputError("opt_decompose: v is not in the span of the cone");
  Vector av(gens.size()), cv(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k) {
    av[k] = out.argument[a[k]];
    cv[k] = out.argument[c[k]];
  }
  return {av, cv};
}

inline Vector apply_gens(const std::vector<Vector>& gens, const Vector& coef, std::size_t n) {
  Vector x(n, 0.0);
  for (std::size_t k = 0; k < gens.size(); ++k)
    if (coef[k] != 0.0) x = axpy(x, coef[k], gens[k]);
  return x;
}

inline Vector apply_gens_t(const std::vector<Vector>& gens, const Vector& y) {
  Vector r(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k) r[k] = dot(gens[k], y);
  return r;
}

// Gradient of |u|^q with respect to u: q |u|^(q-1) times a support
// functional of u.
inline Vector power_gradient(const SpaceSpec& s, const Vector& u, double q) {
  if (is_zero(u)) return Vector(u.size(), 0.0);
  const auto sup = support_functional(s, u);
  return (q * std::pow(norm(s, u), q - 1.0)) * sup.functional;
}

// Repairs an approximate decomposition so that u1 - u2 = v exactly and both
// parts are positive when that is possible.
inline std::optional<std::pair<Vector, Vector>> repair(const SpaceSpec& s, Vector u1, const Vector& v) {
  if (s.cone.kind == ConeKind::nonneg_orthant)
    for (std::size_t i = 0; i < u1.size(); ++i) u1[i] = std::max({u1[i], v[i], 0.0});
  Vector u2 = u1 - v;
  if (!cone_contains(s.cone, u1, 1e-10) || !cone_contains(s.cone, u2, 1e-10)) return std::nullopt;
  return std::make_pair(std::move(u1), std::move(u2));
}

// Projected gradient on cone coefficients for 1 < p < inf:
// minimize |G a|^p + |G b|^p + rho |G a - G b - v|^2 over a, b >= 0.
inline Decomposition gradient_decompose(const SpaceSpec& s, const Vector& v, Exponent p, const DecomposeOptions& opt) {
  const auto gens = s.cone.finite_generators();
  const std::size_t m = gens.size();
  const double q = p.value();
  const double nv = norm(s, v);
  const double target = nv + opt.epsilon;

  auto [a, b] = opt.start ? *opt.start : feasible_coefficients(gens, v);
  if (a.size() != m || b.size() != m) throw InputError("opt_decompose: start has wrong length");
  for (auto& x : a) x = std::max(x, 0.0);
  for (auto& x : b) x = std::max(x, 0.0);

  // Objective in units of |v|^p so rho and the step sizes are scale free.
  const double unit = std::pow(nv, q);
  double rho = 1.0;
  auto objective = [&](const Vector& aa, const Vector& bb) {
    const Vector u1 = apply_gens(gens, aa, s.dim);
    const Vector u2 = apply_gens(gens, bb, s.dim);
    const Vector r = u1 - u2 - v;
    return (std::pow(norm(s, u1), q) + std::pow(norm(s, u2), q)) / unit + rho * dot(r, r) / (nv * nv);
  };

  Decomposition best;
  best.status = DecompStatus::not_converged;
  best.norm_aggregate = std::numeric_limits<double>::infinity();
  double step = 1.0;
  for (int it = 0; it <= opt.max_iters; ++it) {
    if (it % 10 == 0 || it == opt.max_iters) {
      auto fixed = repair(s, apply_gens(gens, a, s.dim), v);
      if (!fixed) fixed = repair(s, v + apply_gens(gens, b, s.dim), v);
      if (fixed) {
        auto d = make_decomposition(s, fixed->first, fixed->second, p);
        d.iterations = it;
        if (d.norm_aggregate < best.norm_aggregate) {
          d.status = DecompStatus::not_converged;
          best = d;
        }
        if (d.norm_aggregate <= target) {
          best.status = DecompStatus::ok;
          return best;
        }
      }
    }
    if (it == opt.max_iters) break;
    if (it > 0 && it % 50 == 0) rho *= 2.0;

    const Vector u1 = apply_gens(gens, a, s.dim);
    const Vector u2 = apply_gens(gens, b, s.dim);
    const Vector r = u1 - u2 - v;
    const Vector pen = (2.0 * rho / (nv * nv)) * r;
    const Vector g1 = apply_gens_t(gens, (1.0 / unit) * power_gradient(s, u1, q) + pen);
    const Vector g2 = apply_gens_t(gens, (1.0 / unit) * power_gradient(s, u2, q) - pen);

    const double f0 = objective(a, b);
    step = std::min(step * 2.0, 1e6);
    Vector na(m), nb(m);
    for (int ls = 0; ls < 60; ++ls) {
      double decrease = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        na[k] = std::max(0.0, a[k] - step * nv * g1[k]);
        nb[k] = std::max(0.0, b[k] - step * nv * g2[k]);
        decrease += g1[k] * (a[k] - na[k]) + g2[k] * (b[k] - nb[k]);
      }
      if (objective(na, nb) <= f0 - 1e-4 * decrease) break;
      step *= 0.5;
    }
    a = na;
    b = nb;
  }
  best.note = "aggregate did not reach |v| + epsilon within max_iters";
  return best;
}

inline Decomposition psd_decompose(const SpaceSpec& s, const Vector& v, Exponent p, double epsilon) {
  const std::size_t d = s.cone.side;
  if (!is_symmetric_flat(v, d, 1e-12 * std::max(1.0, norm_max(v))))
    throw InputError("opt_decompose: v is not a symmetric matrix");
  const Matrix x = symmetric_matrix(v, d);
  Matrix p1, p2;
  if (s.norm.kind == NormKind::base) {
    const auto [half, inv_half] = sqrt_pair(symmetric_matrix(s.norm.phi, d));
    const auto [zp, zn] = spectral_parts(congruence(half, x), 0.0);
    p1 = congruence(inv_half, zp);
    p2 = congruence(inv_half, zn);
  } else {
    const Matrix e = s.norm.kind == NormKind::spectral ? Matrix::identity(d) : symmetric_matrix(s.norm.unit, d);
    const auto [half, inv_half] = sqrt_pair(e);
    const auto [yp, yn] = spectral_parts(congruence(inv_half, x), 0.0);
    p1 = congruence(half, yp);
    p2 = congruence(half, yn);
  }
  auto dcmp = make_decomposition(s, p1.flat(), p2.flat(), p);
  // Restore u1 - u2 = v exactly in floating point.
  dcmp.u2 = dcmp.u1 - v;
  if (dcmp.norm_aggregate > norm(s, v) + epsilon) {
    dcmp.status = DecompStatus::unsupported;
    dcmp.note = "spectral split is not norm-minimal for this exponent";
  }
  return dcmp;
}

}  // namespace detail

/// v = u1 - u2 with u1, u2 positive and (|u1|^p + |u2|^p)^(1/p) within
/// epsilon of |v| when the solver reaches it.
inline Decomposition opt_decompose(const SpaceSpec& s, const Vector& v, Exponent p,
                                   const DecomposeOptions& opt = {}) {
  check_dim(s, v, "opt_decompose");
  require_valid_exponent(p);
  if (!(opt.epsilon > 0.0)) throw InputError("opt_decompose: epsilon must be positive");
  if (cone_contains(s.cone, v, 0.0)) return detail::make_decomposition(s, v, Vector(s.dim, 0.0), p);
  if (s.cone.kind == ConeKind::psd) {
    if (!is_psd_family(s)) return detail::unsupported("lp norms over the psd cone");
    return detail::psd_decompose(s, v, p, opt.epsilon);
  }
  if (p.is_infinite() || p.is_one()) {
    if (!is_polyhedral_norm(s)) return detail::unsupported("p in {1, inf} needs a polyhedral norm");
    return detail::lp_decompose(s, v, p);
  }
  return detail::gradient_decompose(s, v, p, opt);
}

/// The lattice split (v+, v-) for orthant families, the spectral split for
/// psd order-unit families, with the infinity-orthogonality verdict of the
/// two parts.
inline Decomposition infty_orth_decompose(const SpaceSpec& s, const Vector& v) {
  check_dim(s, v, "infty_orth_decompose");
  Vector u1, u2;
  if (is_coordinate_family(s)) {
    std::tie(u1, u2) = detail::lattice_parts(v);
  } else if (s.cone.kind == ConeKind::psd && (s.norm.kind == NormKind::spectral || s.norm.kind == NormKind::order_unit)) {
    const std::size_t d = s.cone.side;
    const Matrix e = s.norm.kind == NormKind::spectral ? Matrix::identity(d) : symmetric_matrix(s.norm.unit, d);
    const auto [half, inv_half] = detail::sqrt_pair(e);
    const Matrix y = detail::congruence(inv_half, symmetric_matrix(v, d));
    const auto [yp, yn] = detail::spectral_parts(y, 1e-10 * spectral_radius(y));
    u1 = detail::congruence(half, yp).flat();
    u2 = detail::congruence(half, yn).flat();
  } else {
    return detail::unsupported("infinity-orthogonal split needs an orthant or psd order-unit family");
  }
  auto d = detail::make_decomposition(s, std::move(u1), std::move(u2), Exponent::infinity());
  d.ortho_verdict = p_orthogonal_numeric(s, d.u1, d.u2, Exponent::infinity());
  if (!is_zero(d.u1) && !is_zero(d.u2) && s.p_class.is_infinite() &&
      infty_positive_test(s, d.u1, d.u2) != d.ortho_verdict->orthogonal())
    d.note = "positive-pair test disagrees with the grid verdict";
  return d;
}

// ---------------------------------------------------------------------------
// Dual decomposition

/// f = f1 - f2 with f1, f2 in the dual cone and the dual-norm aggregate at
/// the conjugate exponent equal to |f|'. Lattice parts for orthant
/// families, spectral parts for psd families, an LP for other polyhedral
/// families with conjugate exponent 1 or inf.
inline Decomposition dual_minimal_decompose(const SpaceSpec& s, const Functional& f) {
  check_dim(s, f, "dual_minimal_decompose");
  const Exponent q = s.p_class.conjugate();
  auto finish = [&](Vector f1, Vector f2) {
    Decomposition d;
    d.p = q;
    d.norm_aggregate = aggregate(q, dual_norm(s, f1), dual_norm(s, f2));
    d.u1 = std::move(f1);
    d.u2 = std::move(f2);
    return d;
  };
  if (is_coordinate_family(s)) {
    auto [f1, f2] = detail::lattice_parts(f);
    return finish(std::move(f1), std::move(f2));
  }
  if (is_psd_family(s)) {
    const std::size_t d = s.cone.side;
    const Matrix fm = symmetric_matrix(f, d);
    Matrix m = Matrix::identity(d);
    if (s.norm.kind == NormKind::order_unit) m = symmetric_matrix(s.norm.unit, d);
    const auto [half, inv_half] = detail::sqrt_pair(m);
    // Dual of a base norm is an order-unit norm and the other way round.
    const bool base = s.norm.kind == NormKind::base;
    const auto [bh, binv] = base ? detail::sqrt_pair(symmetric_matrix(s.norm.phi, d)) : std::pair{half, inv_half};
    const Matrix in = base ? binv : half;
    const Matrix out = base ? bh : inv_half;
    const auto [zp, zn] = detail::spectral_parts(detail::congruence(in, fm), 0.0);
    return finish(detail::congruence(out, zp).flat(), detail::congruence(out, zn).flat());
  }
  if (s.cone.polyhedral() && is_polyhedral_norm(s) && (q.is_one() || q.is_infinite())) {
    LpBuilder b;
    const LinVec x1 = b.add_var_vec(s.dim, std::nullopt);
    const LinVec x2 = b.add_var_vec(s.dim, std::nullopt);
    add_dual_cone_constraint(b, s.cone, x1);
    add_dual_cone_constraint(b, s.cone, x2);
    for (std::size_t i = 0; i < s.dim; ++i) b.add_eq(x1[i] - x2[i], f[i]);
    const auto t1 = b.add_var(0.0);
    const auto t2 = b.add_var(0.0);
    add_dual_epigraph(b, s, x1, LinExpr::var(t1));
    add_dual_epigraph(b, s, x2, LinExpr::var(t2));
    if (q.is_infinite()) {
      const auto t = b.add_var(0.0);
      b.add_le(LinExpr::var(t1) - LinExpr::var(t), 0.0);
      b.add_le(LinExpr::var(t2) - LinExpr::var(t), 0.0);
      b.minimize(LinExpr::var(t));
    } else {
      b.minimize(LinExpr::var(t1) + LinExpr::var(t2));
    }
    const auto res = b.solve();
    if (res.status != LpStatus::optimal) throw std::runtime_error("dual minimal split LP failed");
    return finish(LpBuilder::value(x1, res.argument), LpBuilder::value(x2, res.argument));
  }
  return detail::unsupported("no exact dual split for this family");
}


struct DualDecomposition {
  Decomposition parts;           // f1, f2 as u1, u2; aggregate = |f1|' + |f2|'
  double dual_norm_f = 0.0;
  double additivity_gap = 0.0;   // | |f1|' + |f2|' - |f|' |
  std::optional<Vector> norming; // v with |v| = 1, f(v) = |f|'
  std::optional<Decomposition> norming_split;
  std::optional<double> cross_residual;  // max(|f1(v2)|, |f2(v1)|)
};

/// f = f1 - f2 with f1, f2 positive and |f1|' + |f2|' = |f|', in a space of
/// class p = inf. The 1-orthogonality of f1, f2 is checked under the dual
/// norm; a norming v of f is split into infinity-orthogonal parts v1, v2 and
/// f1(v2), f2(v1) are reported.
inline DualDecomposition dual_one_orth_decompose(const SpaceSpec& s, const Functional& f) {
  check_dim(s, f, "dual_one_orth_decompose");
  if (!s.p_class.is_infinite()) throw InputError("dual_one_orth_decompose: space is not of class p = inf");
  DualDecomposition out;
  Vector f1, f2, norming;
  const auto e = order_unit_of(s);

  if (s.cone.polyhedral()) {
    if (!is_polyhedral_norm(s)) {
      out.parts = detail::unsupported("dual split needs a polyhedral norm");
      return out;
    }
    LpBuilder b;
    const LinVec x1 = b.add_var_vec(s.dim, std::nullopt);
    const LinVec x2 = b.add_var_vec(s.dim, std::nullopt);
    add_dual_cone_constraint(b, s.cone, x1);
    add_dual_cone_constraint(b, s.cone, x2);
    for (std::size_t i = 0; i < s.dim; ++i) b.add_eq(x1[i] - x2[i], f[i]);
    LinExpr cost;
    if (e) {
      cost = pair_with(x1, *e) + pair_with(x2, *e);
    } else {
      const auto t1 = b.add_var(0.0);
      const auto t2 = b.add_var(0.0);
      add_dual_epigraph(b, s, x1, LinExpr::var(t1));
      add_dual_epigraph(b, s, x2, LinExpr::var(t2));
      cost = LinExpr::var(t1) + LinExpr::var(t2);
    }
    b.minimize(cost);
    const auto res = b.solve();
    if (res.status != LpStatus::optimal) throw std::runtime_error("dual split LP failed");
    f1 = LpBuilder::value(x1, res.argument);
    f2 = LpBuilder::value(x2, res.argument);

    LpBuilder nb;
    const LinVec xv = nb.add_var_vec(s.dim, std::nullopt);
    add_primal_epigraph(nb, s, xv, LinExpr(1.0));
    nb.maximize(pair_with(xv, f));
    const auto nres = nb.solve();
    if (nres.status != LpStatus::optimal) throw std::runtime_error("norming LP failed");
    norming = LpBuilder::value(xv, nres.argument);
  } else {
    if (!e) {
      out.parts = detail::unsupported("dual split needs a psd order-unit family");
      return out;
    }
    const std::size_t d = s.cone.side;
    const auto [half, inv_half] = detail::sqrt_pair(symmetric_matrix(*e, d));
    const Matrix z = detail::congruence(half, symmetric_matrix(f, d));
    const double cut = 1e-10 * spectral_radius(z);
    const auto [zp, zn] = detail::spectral_parts(z, cut);
    f1 = detail::congruence(inv_half, zp).flat();
    f2 = detail::congruence(inv_half, zn).flat();
    const Matrix sgn = spectral_map(eigen_sym(z), [cut](double l) { return l > cut ? 1.0 : (l < -cut ? -1.0 : 0.0); });
    norming = detail::congruence(half, sgn).flat();
  }

  auto dual = [&s](const Vector& g) { return dual_norm(s, g); };
  Decomposition parts;
  parts.u1 = f1;
  parts.u2 = f2;
  parts.p = Exponent(1.0);
  parts.norm_aggregate = dual(f1) + dual(f2);
  parts.ortho_verdict = p_orthogonal_with(dual, f1, f2, Exponent(1.0));
  out.parts = std::move(parts);
  out.dual_norm_f = dual(f);
  out.additivity_gap = std::abs(out.parts.norm_aggregate - out.dual_norm_f);

  if (!is_zero(f)) {
    const double nn = norm(s, norming);
    if (nn > 0.0) norming = (1.0 / nn) * norming;
    out.norming = norming;
    auto split = infty_orth_decompose(s, norming);
    if (split.ok()) {
      out.cross_residual = std::max(std::abs(dot(f1, split.u2)), std::abs(dot(f2, split.u1)));
      out.norming_split = std::move(split);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Coordinates of an orthonormal set

/// Coefficient map of span(U) onto R^|U|, for an orthonormal set U under
/// which the span is isometric to l_p^|U|.
class EmbeddingMap {
 public:
  EmbeddingMap(std::vector<Vector> basis, Exponent p) : basis_(std::move(basis)), p_(p) {}

  [[nodiscard]] const std::vector<Vector>& basis() const { return basis_; }
  [[nodiscard]] Exponent exponent() const { return p_; }

  /// Coefficients of x in the basis. Throws when x is not in the span.
  [[nodiscard]] Vector coefficients(const Vector& x) const {
    const Vector alpha = least_squares_coefficients(basis_, x);
    const Vector back = embed(alpha);
    if (norm_max(back - x) > 1e-9 * std::max(1.0, norm_max(x)))
      throw InputError("embedding: vector is not in the span of the basis");
    return alpha;
  }

  [[nodiscard]] Vector embed(const Vector& alpha) const {
    if (alpha.size() != basis_.size()) throw InputError("embedding: coefficient count mismatch");
    return detail::apply_gens(basis_, alpha, basis_.front().size());
  }

  /// The l_p norm of a coefficient vector.
  [[nodiscard]] double coordinate_norm(const Vector& alpha) const {
    return detail::weighted_lp(alpha, {p_, Vector(alpha.size(), 1.0)});
  }

 private:
  std::vector<Vector> basis_;
  Exponent p_;
};

inline EmbeddingMap embed_to_lp(const SpaceSpec& s, const std::vector<Vector>& U, Exponent p,
                                const OrthoConfig& cfg = {}) {
  const auto r = orthonormal_set_verify(s, U, p, cfg, 0);
  if (!r.unit_norms_ok) throw InputError("embed_to_lp: basis vectors are not of norm one");
  if (!r.pairwise_ok) {
    const auto [i, j] = r.failing_pairs.front();
    throw InputError("embed_to_lp: basis vectors " + std::to_string(i) + " and " + std::to_string(j) +
                     " are not p-orthogonal");
  }
  return EmbeddingMap(U, p);
}

}  // namespace porth
