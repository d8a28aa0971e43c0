#pragma once

// Normed ordered spaces: the cone, the norm family, and the smoothness
// exponent a space claims. Norm and dual-norm evaluation dispatch on the
// family; polyhedral families also expose their unit balls as LP constraints.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "porth/cones.hpp"
#include "porth/linalg.hpp"
#include "porth/lp.hpp"

namespace porth {

/// An exponent in [1, inf]. Infinity is a distinguished state rather than a
/// floating-point infinity.
class Exponent {
 public:
  constexpr Exponent() = default;
  constexpr Exponent(double p) : value_(p), infinite_(p == std::numeric_limits<double>::infinity()) {}  // NOLINT

  static constexpr Exponent infinity() { return Exponent(std::numeric_limits<double>::infinity()); }

  [[nodiscard]] constexpr bool is_infinite() const { return infinite_; }
  [[nodiscard]] constexpr bool is_one() const { return !infinite_ && value_ == 1.0; }
  [[nodiscard]] constexpr double value() const { return value_; }

  [[nodiscard]] bool valid() const { return infinite_ || (std::isfinite(value_) && value_ >= 1.0); }

  /// p' with 1' = inf and inf' = 1.
  [[nodiscard]] Exponent conjugate() const {
    if (infinite_) return Exponent(1.0);
    if (value_ == 1.0) return infinity();
    return Exponent(value_ / (value_ - 1.0));
  }

  [[nodiscard]] std::string str() const { return infinite_ ? "inf" : std::to_string(value_); }

  friend constexpr bool operator==(const Exponent& a, const Exponent& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }

 private:
  double value_ = 2.0;
  bool infinite_ = false;
};

inline void require_valid_exponent(Exponent p) {
  if (!p.valid()) throw InputError("invalid exponent");
}

/// (a^p + b^p)^(1/p), or max(a, b) for p = inf.
inline double aggregate(Exponent p, double a, double b) {
  if (p.is_infinite()) return std::max(a, b);
  const double m = std::max(a, b);
  if (m == 0.0) return 0.0;
  return m * std::pow(std::pow(a / m, p.value()) + std::pow(b / m, p.value()), 1.0 / p.value());
}

enum class NormKind { lp, sup, order_unit, base, spectral };

struct NormSpec {
  NormKind kind = NormKind::lp;
  Exponent p{2.0};    // lp only
  Vector weights;     // lp only; empty = all ones
  Vector unit;        // order_unit only
  Functional phi;     // base only

  static NormSpec lp(Exponent p, Vector weights = {}) { return {NormKind::lp, p, std::move(weights), {}, {}}; }
  static NormSpec sup() { return {NormKind::sup, Exponent::infinity(), {}, {}, {}}; }
  static NormSpec order_unit(Vector e) { return {NormKind::order_unit, Exponent::infinity(), {}, std::move(e), {}}; }
  static NormSpec base(Functional phi) { return {NormKind::base, Exponent(1.0), {}, {}, std::move(phi)}; }
  static NormSpec spectral() { return {NormKind::spectral, Exponent::infinity(), {}, {}, {}}; }

  friend bool operator==(const NormSpec&, const NormSpec&) = default;
};

struct SpaceSpec {
  std::size_t dim = 0;
  ConeSpec cone;
  NormSpec norm;
  Exponent p_class{2.0};

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;
};

inline const char* norm_kind_name(NormKind k) {
  switch (k) {
    case NormKind::lp: return "lp";
    case NormKind::sup: return "sup";
    case NormKind::order_unit: return "order_unit";
    case NormKind::base: return "base";
    case NormKind::spectral: return "spectral";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Family views

/// A norm that is a weighted l_p norm of the coordinates:
/// (sum w_i |x_i|^p)^(1/p), or max_i w_i |x_i| for p = inf.
struct CoordinateView {
  Exponent p;
  Vector weights;
};

inline std::optional<CoordinateView> coordinate_view(const SpaceSpec& s) {
  const std::size_t n = s.dim;
  switch (s.norm.kind) {
    case NormKind::lp:
      return CoordinateView{s.norm.p, s.norm.weights.empty() ? Vector(n, 1.0) : s.norm.weights};
    case NormKind::sup:
      return CoordinateView{Exponent::infinity(), Vector(n, 1.0)};
    case NormKind::order_unit:
      if (s.cone.kind != ConeKind::nonneg_orthant) return std::nullopt;
      {
        Vector w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = 1.0 / s.norm.unit[i];
        return CoordinateView{Exponent::infinity(), w};
      }
    case NormKind::base:
      if (s.cone.kind != ConeKind::nonneg_orthant) return std::nullopt;
      return CoordinateView{Exponent(1.0), s.norm.phi};
    case NormKind::spectral:
      return std::nullopt;
  }
  return std::nullopt;
}

/// Orthant cone with a weighted l_p norm: the lattice families where
/// orthogonality is decided by coordinates.
inline bool is_coordinate_family(const SpaceSpec& s) {
  return s.cone.kind == ConeKind::nonneg_orthant && coordinate_view(s).has_value();
}

/// The order unit e when the norm is the order-unit norm of e.
inline std::optional<Vector> order_unit_of(const SpaceSpec& s) {
  switch (s.norm.kind) {
    case NormKind::order_unit:
      return s.norm.unit;
    case NormKind::sup:
      if (s.cone.kind == ConeKind::nonneg_orthant) return Vector(s.dim, 1.0);
      return std::nullopt;
    case NormKind::lp:
      if (s.cone.kind == ConeKind::nonneg_orthant && s.norm.p.is_infinite()) {
        const auto view = coordinate_view(s);
        Vector e(s.dim);
        for (std::size_t i = 0; i < s.dim; ++i) e[i] = 1.0 / view->weights[i];
        return e;
      }
      return std::nullopt;
    case NormKind::spectral:
      return Matrix::identity(s.cone.side).flat();
    case NormKind::base:
      return std::nullopt;
  }
  return std::nullopt;
}

/// The functional phi when the norm is the base norm with base {phi = 1}.
inline std::optional<Functional> base_functional_of(const SpaceSpec& s) {
  if (s.norm.kind == NormKind::base) return s.norm.phi;
  if (s.norm.kind == NormKind::lp && s.cone.kind == ConeKind::nonneg_orthant && s.norm.p.is_one())
    return coordinate_view(s)->weights;
  return std::nullopt;
}

inline bool is_psd_family(const SpaceSpec& s) {
  return s.cone.kind == ConeKind::psd &&
         (s.norm.kind == NormKind::spectral || s.norm.kind == NormKind::order_unit || s.norm.kind == NormKind::base);
}

/// Norms whose unit balls are polytopes expressible as LP constraints.
inline bool is_polyhedral_norm(const SpaceSpec& s) {
  if (const auto v = coordinate_view(s)) return v->p.is_infinite() || v->p.is_one();
  return (s.norm.kind == NormKind::order_unit || s.norm.kind == NormKind::base) && s.cone.polyhedral();
}

// ---------------------------------------------------------------------------
// Validation

inline void validate_space(const SpaceSpec& s) {
  if (s.dim == 0) throw InputError("dim must be positive");
  if (s.cone.ambient_dim != s.dim) throw InputError("cone dimension does not match dim");
  require_valid_exponent(s.p_class);
  const auto cr = cone_proper_generating(s.cone);
  if (!cr.proper) throw InputError("cone not proper");
  if (!cr.generating) throw InputError("cone not generating");

  switch (s.norm.kind) {
    case NormKind::lp:
      require_valid_exponent(s.norm.p);
      if (!s.norm.weights.empty()) {
        if (s.norm.weights.size() != s.dim) throw InputError("weights length does not match dim");
        for (double w : s.norm.weights)
          if (!(w > 0.0) || !std::isfinite(w)) throw InputError("weights must be strictly positive");
      }
      break;
    case NormKind::sup:
      break;
    case NormKind::order_unit: {
      const Vector& e = s.norm.unit;
      if (e.size() != s.dim) throw InputError("order unit length does not match dim");
      require_finite(e, "order unit");
      bool interior = true;
      switch (s.cone.kind) {
        case ConeKind::nonneg_orthant:
          interior = std::all_of(e.begin(), e.end(), [](double v) { return v > 0.0; });
          break;
        case ConeKind::rays: {
          Vector gsum(s.dim, 0.0);
          for (const auto& g : s.cone.generators) gsum = gsum + g;
          const double eps = 1e-6 * norm_max(e) / std::max(norm_max(gsum), 1e-300);
          interior = cone_contains(s.cone, e, 1e-12) && cone_contains(s.cone, axpy(e, -eps, gsum), 1e-12);
          break;
        }
        case ConeKind::psd:
          interior = is_symmetric_flat(e, s.cone.side, 1e-12) &&
                     min_eigenvalue(symmetric_matrix(e, s.cone.side)) > 1e-6 * norm_max(e);
          break;
      }
      if (!interior) throw InputError("order unit not interior");
      break;
    }
    case NormKind::base: {
      const Functional& phi = s.norm.phi;
      if (phi.size() != s.dim) throw InputError("base functional length does not match dim");
      require_finite(phi, "base functional");
      bool positive = true;
      if (s.cone.kind == ConeKind::psd) {
        positive = is_symmetric_flat(phi, s.cone.side, 1e-12) &&
                   min_eigenvalue(symmetric_matrix(phi, s.cone.side)) > 1e-12 * norm_max(phi);
      } else {
        for (const auto& g : s.cone.finite_generators())
          if (!(dot(phi, g) > 0.0)) positive = false;
      }
      if (!positive) throw InputError("base functional not strictly positive on the cone");
      break;
    }
    case NormKind::spectral:
      if (s.cone.kind != ConeKind::psd) throw InputError("spectral norm requires a psd cone");
      break;
  }
}

// ---------------------------------------------------------------------------
// Constructors for the common families

inline SpaceSpec lp_space(std::size_t n, Exponent p, Vector weights = {}) {
  return {n, ConeSpec::orthant(n), NormSpec::lp(p, std::move(weights)), p};
}

inline SpaceSpec sup_space(std::size_t n) {
  return {n, ConeSpec::orthant(n), NormSpec::sup(), Exponent::infinity()};
}

inline SpaceSpec order_unit_space(ConeSpec cone, Vector e) {
  const std::size_t n = cone.ambient_dim;
  return {n, std::move(cone), NormSpec::order_unit(std::move(e)), Exponent::infinity()};
}

inline SpaceSpec base_space(ConeSpec cone, Functional phi) {
  const std::size_t n = cone.ambient_dim;
  return {n, std::move(cone), NormSpec::base(std::move(phi)), Exponent(1.0)};
}

inline SpaceSpec spectral_space(std::size_t d) {
  return {d * d, ConeSpec::psd(d), NormSpec::spectral(), Exponent::infinity()};
}

// ---------------------------------------------------------------------------
// Polyhedral unit balls as LP constraints

/// Adds constraints forcing |x| <= t.
inline void add_primal_epigraph(LpBuilder& b, const SpaceSpec& s, const LinVec& x, const LinExpr& t) {
  if (const auto v = coordinate_view(s)) {
    if (v->p.is_infinite()) {
      for (std::size_t i = 0; i < x.size(); ++i) {
        LinExpr pos, neg;
        pos.add(x[i], v->weights[i]).add(t, -1.0);
        neg.add(x[i], -v->weights[i]).add(t, -1.0);
        b.add_le(pos, 0.0);
        b.add_le(neg, 0.0);
      }
      return;
    }
    if (v->p.is_one()) {
      LinExpr total;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const auto si = b.add_var(0.0);
        b.add_le(x[i] - LinExpr::var(si), 0.0);
        LinExpr neg;
        neg.add(x[i], -1.0).add(si, -1.0);
        b.add_le(neg, 0.0);
        total.add(si, v->weights[i]);
      }
      b.add_le(total - t, 0.0);
      return;
    }
  }
  if (s.norm.kind == NormKind::order_unit && s.cone.polyhedral()) {
    const Vector& e = s.norm.unit;
    const LinVec c = add_cone_element(b, s.cone);
    const LinVec d = add_cone_element(b, s.cone);
    for (std::size_t i = 0; i < x.size(); ++i) {
      LinExpr upper;  // t e_i - x_i - c_i = 0
      upper.add(t, e[i]).add(x[i], -1.0).add(c[i], -1.0);
      b.add_eq(upper, 0.0);
      LinExpr lower;  // t e_i + x_i - d_i = 0
      lower.add(t, e[i]).add(x[i], 1.0).add(d[i], -1.0);
      b.add_eq(lower, 0.0);
    }
    return;
  }
  if (s.norm.kind == NormKind::base && s.cone.polyhedral()) {
    const auto gens = s.cone.finite_generators();
    const auto c = b.add_vars(gens.size());
    const auto d = b.add_vars(gens.size());
    const LinVec gc = combine(gens, c);
    const LinVec gd = combine(gens, d);
    LinExpr weight;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const double pk = dot(s.norm.phi, gens[k]);
      weight.add(c[k], pk).add(d[k], pk);
    }
    for (std::size_t i = 0; i < x.size(); ++i) b.add_eq(x[i] - gc[i] + gd[i], 0.0);
    b.add_le(weight - t, 0.0);
    return;
  }
  throw UnsupportedError(std::string("norm is not polyhedral: ") + norm_kind_name(s.norm.kind));
}

/// Adds constraints forcing |f|' <= t for the dual norm.
inline void add_dual_epigraph(LpBuilder& b, const SpaceSpec& s, const LinVec& f, const LinExpr& t) {
  if (const auto v = coordinate_view(s)) {
    if (v->p.is_one()) {
      for (std::size_t i = 0; i < f.size(); ++i) {
        LinExpr pos, neg;
        pos.add(f[i], 1.0).add(t, -v->weights[i]);
        neg.add(f[i], -1.0).add(t, -v->weights[i]);
        b.add_le(pos, 0.0);
        b.add_le(neg, 0.0);
      }
      return;
    }
    if (v->p.is_infinite()) {
      LinExpr total;
      for (std::size_t i = 0; i < f.size(); ++i) {
        const auto si = b.add_var(0.0);
        b.add_le(f[i] - LinExpr::var(si), 0.0);
        LinExpr neg;
        neg.add(f[i], -1.0).add(si, -1.0);
        b.add_le(neg, 0.0);
        total.add(si, 1.0 / v->weights[i]);
      }
      b.add_le(total - t, 0.0);
      return;
    }
  }
  if (s.norm.kind == NormKind::order_unit && s.cone.polyhedral()) {
    // |f|' = min { f1(e) + f2(e) : f = f1 - f2, f1, f2 positive }
    const std::size_t n = f.size();
    const LinVec f1 = b.add_var_vec(n, std::nullopt);
    const LinVec f2 = b.add_var_vec(n, std::nullopt);
    add_dual_cone_constraint(b, s.cone, f1);
    add_dual_cone_constraint(b, s.cone, f2);
    for (std::size_t i = 0; i < n; ++i) b.add_eq(f[i] - f1[i] + f2[i], 0.0);
    b.add_le(pair_with(f1, s.norm.unit) + pair_with(f2, s.norm.unit) - t, 0.0);
    return;
  }
  if (s.norm.kind == NormKind::base && s.cone.polyhedral()) {
    for (const auto& g : s.cone.finite_generators()) {
      const double pg = dot(s.norm.phi, g);
      LinExpr fg = pair_with(f, g);
      LinExpr pos = fg;
      pos.add(t, -pg);
      LinExpr neg;
      neg.add(fg, -1.0).add(t, -pg);
      b.add_le(pos, 0.0);
      b.add_le(neg, 0.0);
    }
    return;
  }
  throw UnsupportedError(std::string("norm is not polyhedral: ") + norm_kind_name(s.norm.kind));
}

/// Polyhedral norm evaluated by LP: min t subject to |x| <= t.
inline double norm_by_lp(const SpaceSpec& s, const Vector& x) {
  LpBuilder b;
  const auto t = b.add_var(0.0);
  add_primal_epigraph(b, s, constant_vec(x), LinExpr::var(t));
  b.minimize(LinExpr::var(t));
  const auto out = b.solve();
  if (out.status != LpStatus::optimal) throw std::runtime_error("norm LP failed");
  return out.optimum;
}

/// Polyhedral dual norm evaluated by LP: max f(x) subject to |x| <= 1.
inline double dual_norm_by_lp(const SpaceSpec& s, const Functional& f) {
  LpBuilder b;
  const LinVec x = b.add_var_vec(s.dim, std::nullopt);
  add_primal_epigraph(b, s, x, LinExpr(1.0));
  b.maximize(pair_with(x, f));
  const auto out = b.solve();
  if (out.status != LpStatus::optimal) throw std::runtime_error("dual norm LP failed");
  return out.optimum;
}

// ---------------------------------------------------------------------------
// Norm and dual norm

namespace detail {

inline double weighted_lp(const Vector& x, const CoordinateView& v) {
  if (v.p.is_infinite()) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, v.weights[i] * std::abs(x[i]));
    return m;
  }
  if (v.p.is_one()) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += v.weights[i] * std::abs(x[i]);
    return s;
  }
  const double p = v.p.value();
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i]) * std::pow(v.weights[i], 1.0 / p));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += v.weights[i] * std::pow(std::abs(x[i]) / m, p);
  return m * std::pow(s, 1.0 / p);
}

// Dual of the weighted l_p norm: weights w^(1 - p') under the conjugate exponent.
inline CoordinateView dual_coordinate_view(const CoordinateView& v) {
  Vector w(v.weights.size());
  if (v.p.is_one() || v.p.is_infinite()) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = 1.0 / v.weights[i];
  } else {
    const double q = v.p.conjugate().value();
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::pow(v.weights[i], 1.0 - q);
  }
  return {v.p.conjugate(), w};
}

// M^(1/2) and M^(-1/2) of a positive definite matrix.
inline std::pair<Matrix, Matrix> sqrt_pair(const Matrix& m) {
  const auto sd = eigen_sym(m);
  return {spectral_map(sd, [](double l) { return std::sqrt(std::max(l, 0.0)); }),
          spectral_map(sd, [](double l) { return 1.0 / std::sqrt(l); })};
}

inline Matrix congruence(const Matrix& a, const Matrix& x) { return a * x * a; }

}  // namespace detail

inline void check_dim(const SpaceSpec& s, const Vector& x, const char* what) {
  if (x.size() != s.dim) throw InputError(std::string(what) + ": dimension mismatch");
  require_finite(x, what);
}

inline double norm(const SpaceSpec& s, const Vector& x) {
  check_dim(s, x, "norm");
  if (is_zero(x)) return 0.0;
  if (const auto v = coordinate_view(s)) return detail::weighted_lp(x, *v);
  const std::size_t d = s.cone.side;
  switch (s.norm.kind) {
    case NormKind::spectral:
      return spectral_radius(symmetric_matrix(x, d));
    case NormKind::order_unit:
      if (s.cone.kind == ConeKind::psd) {
        const auto [half, inv_half] = detail::sqrt_pair(symmetric_matrix(s.norm.unit, d));
        return spectral_radius(detail::congruence(inv_half, symmetric_matrix(x, d)));
      }
      return norm_by_lp(s, x);
    case NormKind::base:
      if (s.cone.kind == ConeKind::psd) {
        const auto [half, inv_half] = detail::sqrt_pair(symmetric_matrix(s.norm.phi, d));
        return trace_norm(detail::congruence(half, symmetric_matrix(x, d)));
      }
      return norm_by_lp(s, x);
    default:
      break;
  }
  throw UnsupportedError("norm: unsupported family");
}

inline double dual_norm(const SpaceSpec& s, const Functional& f) {
  check_dim(s, f, "dual_norm");
  if (is_zero(f)) return 0.0;
  if (const auto v = coordinate_view(s)) return detail::weighted_lp(f, detail::dual_coordinate_view(*v));
  const std::size_t d = s.cone.side;
  switch (s.norm.kind) {
    case NormKind::spectral:
      return trace_norm(symmetric_matrix(f, d));
    case NormKind::order_unit:
      if (s.cone.kind == ConeKind::psd) {
        const auto [half, inv_half] = detail::sqrt_pair(symmetric_matrix(s.norm.unit, d));
        return trace_norm(detail::congruence(half, symmetric_matrix(f, d)));
      }
      return dual_norm_by_lp(s, f);
    case NormKind::base:
      if (s.cone.kind == ConeKind::psd) {
        const auto [half, inv_half] = detail::sqrt_pair(symmetric_matrix(s.norm.phi, d));
        return spectral_radius(detail::congruence(inv_half, symmetric_matrix(f, d)));
      }
      {
        // The unit ball is the convex hull of +-g/phi(g) over generators g.
        double m = 0.0;
        for (const auto& g : s.cone.finite_generators()) m = std::max(m, std::abs(dot(f, g)) / dot(s.norm.phi, g));
        return m;
      }
    default:
      break;
  }
  throw UnsupportedError("dual_norm: unsupported family");
}

/// The dual space as a space of the same kind, when it is one the library
/// can represent (orthant and psd families). Ray cones would need the facets
/// of the cone and are not represented.
inline std::optional<SpaceSpec> dual_space(const SpaceSpec& s) {
  const Exponent pc = s.p_class.conjugate();
  if (s.cone.kind == ConeKind::nonneg_orthant) {
    switch (s.norm.kind) {
      case NormKind::lp:
      case NormKind::sup: {
        const auto dv = detail::dual_coordinate_view(*coordinate_view(s));
        return SpaceSpec{s.dim, s.cone, NormSpec::lp(dv.p, dv.weights), pc};
      }
      case NormKind::order_unit:
        return SpaceSpec{s.dim, s.cone, NormSpec::base(s.norm.unit), pc};
      case NormKind::base:
        return SpaceSpec{s.dim, s.cone, NormSpec::order_unit(s.norm.phi), pc};
      default:
        return std::nullopt;
    }
  }
  if (s.cone.kind == ConeKind::psd) {
    switch (s.norm.kind) {
      case NormKind::spectral:
        return SpaceSpec{s.dim, s.cone, NormSpec::base(Matrix::identity(s.cone.side).flat()), pc};
      case NormKind::order_unit:
        return SpaceSpec{s.dim, s.cone, NormSpec::base(s.norm.unit), pc};
      case NormKind::base:
        return SpaceSpec{s.dim, s.cone, NormSpec::order_unit(s.norm.phi), pc};
      default:
        return std::nullopt;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Dual norm of a functional restricted to a two-dimensional subspace

using NormFn = std::function<double(const Vector&)>;

/// sup |g(w)| over w = l1 u1 + l2 u2 with |w| <= 1, where g is given by its
/// values (g(u1), g(u2)), for an arbitrary norm oracle. The boundary of the
/// planar unit ball is sampled once in 720 directions; each query refines
/// the three best directions by golden-section search.
class ScannedRestrictedNorm {
 public:
  static constexpr int kDirections = 720;

  ScannedRestrictedNorm(NormFn norm, Vector u1, Vector u2, double theta_tol = 1e-10)
      : norm_(std::move(norm)), u1_(std::move(u1)), u2_(std::move(u2)), theta_tol_(theta_tol) {
    step_ = std::numbers::pi / kDirections;
    inv_norm_.resize(kDirections);
    for (int i = 0; i < kDirections; ++i) inv_norm_[i] = 1.0 / direction_norm(i * step_);
  }

  double operator()(double g1, double g2) const {
    if (g1 == 0.0 && g2 == 0.0) return 0.0;
    std::array<int, 3> top{-1, -1, -1};
    std::array<double, 3> topv{-1.0, -1.0, -1.0};
    for (int i = 0; i < kDirections; ++i) {
      const double th = i * step_;
      const double h = std::abs(g1 * std::cos(th) + g2 * std::sin(th)) * inv_norm_[i];
      for (int k = 0; k < 3; ++k) {
        if (h > topv[k]) {
          for (int j = 2; j > k; --j) {
            topv[j] = topv[j - 1];
            top[j] = top[j - 1];
          }
          topv[k] = h;
          top[k] = i;
          break;
        }
      }
    }
    double best = topv[0];
    for (int k = 0; k < 3; ++k) {
      if (top[k] < 0) continue;
      best = std::max(best, refine(g1, g2, top[k] * step_));
    }
    return best;
  }

 private:
  double direction_norm(double th) const {
    return norm_(axpy(std::cos(th) * u1_, std::sin(th), u2_));
  }

  double value(double g1, double g2, double th) const {
    return std::abs(g1 * std::cos(th) + g2 * std::sin(th)) / direction_norm(th);
  }

  double refine(double g1, double g2, double center) const {
    constexpr double invphi = 0.6180339887498949;
    double a = center - step_;
    double b = center + step_;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = value(g1, g2, c);
    double fd = value(g1, g2, d);
    double best = std::max(fc, fd);
    while (b - a > theta_tol_) {
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - invphi * (b - a);
        fc = value(g1, g2, c);
        best = std::max(best, fc);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + invphi * (b - a);
        fd = value(g1, g2, d);
        best = std::max(best, fd);
      }
    }
    return best;
  }

  NormFn norm_;
  Vector u1_, u2_;
  double theta_tol_;
  double step_ = 0.0;
  std::vector<double> inv_norm_;
};

/// Restricted dual norm for a fixed planar subspace W = span{u1, u2} of a
/// space. Polyhedral families solve one LP per query; the others use the
/// directional scan.
class RestrictedDualNorm {
 public:
  RestrictedDualNorm(const SpaceSpec& s, Vector u1, Vector u2) : space_(s), u1_(std::move(u1)), u2_(std::move(u2)) {
    check_dim(s, u1_, "restricted_norm");
    check_dim(s, u2_, "restricted_norm");
    if (rank_of({u1_, u2_}, 1e-12) < 2) throw InputError("restricted_norm: dependent basis");
    if (!is_polyhedral_norm(s)) {
      scan_.emplace([sp = space_](const Vector& w) { return norm(sp, w); }, u1_, u2_);
    }
  }

  double operator()(double g1, double g2) const {
    if (g1 == 0.0 && g2 == 0.0) return 0.0;
    if (scan_) return (*scan_)(g1, g2);
    LpBuilder b;
    const auto l1 = b.add_var(std::nullopt);
    const auto l2 = b.add_var(std::nullopt);
    LinVec w(space_.dim);
    for (std::size_t i = 0; i < space_.dim; ++i) w[i].add(l1, u1_[i]).add(l2, u2_[i]);
    add_primal_epigraph(b, space_, w, LinExpr(1.0));
    LinExpr obj;
    obj.add(l1, g1).add(l2, g2);
    b.maximize(obj);
    const auto out = b.solve();
    if (out.status != LpStatus::optimal) throw std::runtime_error("restricted norm LP failed");
    return std::abs(out.optimum);
  }

  /// Norm oracle on the coefficient plane: a functional on W is the pair
  /// (g(u1), g(u2)).
  [[nodiscard]] NormFn as_norm() const {
    return [this](const Vector& g) { return (*this)(g.at(0), g.at(1)); };
  }

 private:
  SpaceSpec space_;
  Vector u1_, u2_;
  std::optional<ScannedRestrictedNorm> scan_;
};

inline double restricted_norm(const SpaceSpec& s, const std::pair<Vector, Vector>& span_basis,
                              const std::pair<double, double>& g_values) {
  return RestrictedDualNorm(s, span_basis.first, span_basis.second)(g_values.first, g_values.second);
}

}  // namespace porth
