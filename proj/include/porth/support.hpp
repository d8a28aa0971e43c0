#pragma once

// Norming functionals. A functional f supports v when |f|' = 1 and
// f(v) = |v|; a positive support is additionally positive on the cone. A
// crust of a positive u is a positive norm-one f with f(u) = 0.

#include <cmath>
#include <optional>
#include <stdexcept>

#include "porth/cones.hpp"
#include "porth/linalg.hpp"
#include "porth/lp.hpp"
#include "porth/ortho.hpp"
#include "porth/spaces.hpp"

namespace porth {

struct SupportResult {
  Functional functional;
  double attained_value = 0.0;
  bool is_positive = false;
};

namespace detail {

inline SupportResult finish_support(const SpaceSpec& s, Functional f, const Vector& v) {
  SupportResult r;
  r.attained_value = dot(f, v);
  r.is_positive = dual_cone_contains(s.cone, f);
  r.functional = std::move(f);
  return r;
}

inline Functional support_by_lp(const SpaceSpec& s, const Vector& v, bool positive) {
  LpBuilder b;
  const LinVec f = b.add_var_vec(s.dim, std::nullopt);
  const auto e = positive && s.cone.polyhedral() ? order_unit_of(s) : std::nullopt;
  if (e) {
    // positive f has |f|' = f(e)
    add_dual_cone_constraint(b, s.cone, f);
    b.add_le(pair_with(f, *e), 1.0);
  } else {
    add_dual_epigraph(b, s, f, LinExpr(1.0));
    if (positive) add_dual_cone_constraint(b, s.cone, f);
  }
  b.maximize(pair_with(f, v));
  const auto out = b.solve();
  if (out.status != LpStatus::optimal) throw std::runtime_error("support LP failed");
  Vector sol(s.dim);
  for (std::size_t i = 0; i < s.dim; ++i) sol[i] = LpBuilder::value(f[i], out.argument);
  return sol;
}

// sgn(l) v v^T for the eigenpair of largest |l|.
inline Matrix top_rank_one(const Matrix& m) {
  const auto sd = eigen_sym(m);
  const std::size_t n = sd.eigenvalues.size();
  const std::size_t k = std::abs(sd.eigenvalues.front()) >= std::abs(sd.eigenvalues.back()) ? 0 : n - 1;
  const double sign = sd.eigenvalues[k] < 0.0 ? -1.0 : 1.0;
  const Vector& v = sd.eigenvectors[k];
  Matrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = sign * v[i] * v[j];
  return r;
}

inline Functional psd_support(const SpaceSpec& s, const Vector& v) {
  const std::size_t d = s.cone.side;
  const Matrix x = symmetric_matrix(v, d);
  switch (s.norm.kind) {
    case NormKind::spectral:
      return top_rank_one(x).flat();
    case NormKind::order_unit: {
      const auto [half, inv_half] = sqrt_pair(symmetric_matrix(s.norm.unit, d));
      return congruence(inv_half, top_rank_one(congruence(inv_half, x))).flat();
    }
    case NormKind::base: {
      const auto [half, inv_half] = sqrt_pair(symmetric_matrix(s.norm.phi, d));
      const Matrix z = congruence(half, x);
      const double cut = 1e-12 * std::max(z.max_abs(), 1e-300);
      const Matrix sgn = spectral_map(eigen_sym(z), [cut](double l) { return l > cut ? 1.0 : (l < -cut ? -1.0 : 0.0); });
      return congruence(half, sgn).flat();
    }
    default:
      break;
  }
  throw UnsupportedError("support: unsupported psd family");
}

inline void require_positive_nonzero(const SpaceSpec& s, const Vector& u, const char* what) {
  check_dim(s, u, what);
  if (is_zero(u)) throw InputError(std::string(what) + ": zero argument");
  if (!cone_contains(s.cone, u)) throw InputError(std::string(what) + ": argument outside the cone");
}

}  // namespace detail

/// A norm-one functional attaining |v| at v.
inline SupportResult support_functional(const SpaceSpec& s, const Vector& v) {
  check_dim(s, v, "support_functional");
  if (is_zero(v)) throw InputError("support_functional: zero argument");
  if (const auto cv = coordinate_view(s); cv && !cv->p.is_infinite() && !cv->p.is_one()) {
    const double p = cv->p.value();
    const double nv = norm(s, v);
    Functional f(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double sign = v[i] > 0.0 ? 1.0 : (v[i] < 0.0 ? -1.0 : 0.0);
      f[i] = cv->weights[i] * sign * std::pow(std::abs(v[i]) / nv, p - 1.0);
    }
    return detail::finish_support(s, std::move(f), v);
  }
  if (is_polyhedral_norm(s)) return detail::finish_support(s, detail::support_by_lp(s, v, false), v);
  if (is_psd_family(s)) return detail::finish_support(s, detail::psd_support(s, v), v);
  throw UnsupportedError("support_functional: unsupported family");
}

/// A positive norm-one functional attaining |u| at a positive u.
inline SupportResult positive_support(const SpaceSpec& s, const Vector& u) {
  detail::require_positive_nonzero(s, u, "positive_support");
  if (is_polyhedral_norm(s)) {
    auto r = detail::finish_support(s, detail::support_by_lp(s, u, true), u);
    r.is_positive = true;
    return r;
  }
  auto r = support_functional(s, u);
  if (!r.is_positive) throw UnsupportedError("positive_support: no positive construction for this family");
  return r;
}

struct CrustResult {
  SupportResult crust;
  Vector partner;  // e - u/|u|
  bool partner_orthogonal = false;
};

/// A crust of u in an order-unit space, together with the partner
/// e - u/|u| and whether it is infinity-orthogonal to u. Empty when u has no
/// crust.
inline std::optional<CrustResult> crust_probe(const SpaceSpec& s, const Vector& u) {
  const auto e = order_unit_of(s);
  if (!e) throw InputError("crust_probe: space is not an order-unit space");
  detail::require_positive_nonzero(s, u, "crust_probe");

  Functional f;
  if (s.cone.polyhedral()) {
    LpBuilder b;
    const LinVec fv = b.add_var_vec(s.dim, std::nullopt);
    add_dual_cone_constraint(b, s.cone, fv);
    b.add_eq(pair_with(fv, u), 0.0);
    b.add_le(pair_with(fv, *e), 1.0);
    b.maximize(pair_with(fv, *e));
    const auto out = b.solve();
    if (out.status != LpStatus::optimal) throw std::runtime_error("crust LP failed");
    if (out.optimum < 1.0 - 1e-9) return std::nullopt;
    f = LpBuilder::value(fv, out.argument);
  } else {
    const std::size_t d = s.cone.side;
    const Matrix um = symmetric_matrix(u, d);
    const auto sd = eigen_sym(um);
    if (sd.eigenvalues.back() > 1e-9 * um.max_abs()) return std::nullopt;
    const Vector& v = sd.eigenvectors.back();
    const Matrix em = symmetric_matrix(*e, d);
    const double scale = dot(v, em * v);
    Matrix fm(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) fm(i, j) = v[i] * v[j] / scale;
    f = fm.flat();
  }

  CrustResult r;
  r.crust = detail::finish_support(s, std::move(f), u);
  r.partner = axpy(*e, -1.0 / norm(s, u), u);
  r.partner_orthogonal = !is_zero(r.partner) && cone_contains(s.cone, r.partner) &&
                         infty_positive_test(s, u, r.partner);
  return r;
}

}  // namespace porth
