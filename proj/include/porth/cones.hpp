#pragma once

// The positive cone of an ordered space: nonnegative orthant, a polyhedral
// cone given by finitely many rays, or the cone of positive semidefinite
// matrices (flattened row-major, full d*d entries).

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "porth/linalg.hpp"
#include "porth/lp.hpp"

namespace porth {

enum class ConeKind { nonneg_orthant, rays, psd };

struct ConeSpec {
  ConeKind kind = ConeKind::nonneg_orthant;
  std::size_t ambient_dim = 0;
  std::vector<Vector> generators;  // rays only
  std::size_t side = 0;            // psd only: matrix side d, ambient_dim = d*d

  static ConeSpec orthant(std::size_t n) { return {ConeKind::nonneg_orthant, n, {}, 0}; }

  static ConeSpec rays(std::vector<Vector> gens) {
    if (gens.empty()) throw InputError("ray cone needs at least one generator");
    const std::size_t n = gens.front().size();
    for (const auto& g : gens) {
      if (g.size() != n) throw InputError("ray cone generators differ in length");
      require_finite(g, "ray cone generator");
      if (is_zero(g)) throw InputError("ray cone generator is zero");
    }
    return {ConeKind::rays, n, std::move(gens), 0};
  }

  static ConeSpec psd(std::size_t d) { return {ConeKind::psd, d * d, {}, d}; }

  [[nodiscard]] bool polyhedral() const { return kind != ConeKind::psd; }

  /// Generators of a polyhedral cone (the unit vectors for the orthant).
  [[nodiscard]] std::vector<Vector> finite_generators() const {
    switch (kind) {
      case ConeKind::nonneg_orthant: {
        std::vector<Vector> basis;
        for (std::size_t i = 0; i < ambient_dim; ++i) basis.push_back(unit_vector(ambient_dim, i));
        return basis;
      }
      case ConeKind::rays:
        return generators;
      case ConeKind::psd:
        break;
    }
    throw UnsupportedError("psd cone has no finite generating set");
  }

  /// Dimension of the real vector space the cone lives in (symmetric
  /// matrices for psd).
  [[nodiscard]] std::size_t space_dim() const {
    return kind == ConeKind::psd ? side * (side + 1) / 2 : ambient_dim;
  }

  friend bool operator==(const ConeSpec&, const ConeSpec&) = default;
};

inline constexpr double kConeTol = 1e-9;

inline bool is_symmetric_flat(const Vector& x, std::size_t d, double tol) {
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (std::abs(x[i * d + j] - x[j * d + i]) > tol) return false;
  return true;
}

inline Matrix symmetric_matrix(const Vector& flat, std::size_t d) {
  if (flat.size() != d * d) throw InputError("symmetric matrix: expected " + std::to_string(d * d) + " entries");
  Matrix m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = 0.5 * (flat[i * d + j] + flat[j * d + i]);
  return m;
}

namespace detail {

inline double cone_scale(const Vector& x) { return std::max(1.0, norm_max(x)); }

// l1 distance from x to the ray cone, by LP.
inline double ray_cone_distance(const std::vector<Vector>& gens, const Vector& x) {
  LpBuilder b;
  auto a = b.add_vars(gens.size());
  auto sp = b.add_vars(x.size());
  auto sn = b.add_vars(x.size());
  LinVec ga = combine(gens, a);
  LinExpr total;
  for (std::size_t i = 0; i < x.size(); ++i) {
    LinExpr row = ga[i];
    row.add(sp[i], 1.0).add(sn[i], -1.0);
    b.add_eq(row, x[i]);
    total.add(sp[i], 1.0).add(sn[i], 1.0);
  }
  b.minimize(total);
  const auto out = b.solve();
  if (out.status != LpStatus::optimal) throw std::runtime_error("ray cone distance LP failed");
  return out.optimum;
}

}  // namespace detail

/// Membership up to tol. The tolerance is relative to max(1, |x|_max); the
/// ray cone measures l1 distance, the psd cone the smallest eigenvalue.
inline bool cone_contains(const ConeSpec& cone, const Vector& x, double tol = kConeTol) {
  if (x.size() != cone.ambient_dim) throw InputError("cone_contains: dimension mismatch");
  require_finite(x, "cone_contains");
  if (is_zero(x)) return true;
  const double t = tol * detail::cone_scale(x);
  switch (cone.kind) {
    case ConeKind::nonneg_orthant:
      for (double v : x)
        if (v < -t) return false;
      return true;
    case ConeKind::rays:
      return detail::ray_cone_distance(cone.generators, x) <= t;
    case ConeKind::psd:
      if (!is_symmetric_flat(x, cone.side, t)) return false;
      return min_eigenvalue(symmetric_matrix(x, cone.side)) >= -t;
  }
  return false;
}

/// Dual-cone membership: f is nonnegative on every generator (polyhedral) or
/// positive semidefinite under the trace pairing (psd).
inline bool dual_cone_contains(const ConeSpec& cone, const Functional& f, double tol = kConeTol) {
  if (f.size() != cone.ambient_dim) throw InputError("dual_cone_contains: dimension mismatch");
  require_finite(f, "dual_cone_contains");
  const double t = tol * detail::cone_scale(f);
  switch (cone.kind) {
    case ConeKind::nonneg_orthant:
      for (double v : f)
        if (v < -t) return false;
      return true;
    case ConeKind::rays:
      for (const auto& g : cone.generators)
        if (dot(f, g) < -t * std::max(1.0, norm_max(g))) return false;
      return true;
    case ConeKind::psd:
      if (!is_symmetric_flat(f, cone.side, t)) return false;
      return min_eigenvalue(symmetric_matrix(f, cone.side)) >= -t;
  }
  return false;
}

struct ConeReport {
  bool proper = false;
  bool generating = false;
};

/// proper: the cone contains no line. generating: cone - cone spans the space.
inline ConeReport cone_proper_generating(const ConeSpec& cone) {
  switch (cone.kind) {
    case ConeKind::nonneg_orthant:
    case ConeKind::psd:
      return {true, true};
    case ConeKind::rays: {
      // A nonzero c >= 0 with G c = 0 exists iff some x and -x are both members.
      LpBuilder b;
      auto c = b.add_vars(cone.generators.size());
      LinVec gc = combine(cone.generators, c);
      for (const auto& row : gc) b.add_eq(row, 0.0);
      LinExpr total;
      for (auto v : c) total.add(v, 1.0);
      b.add_le(total, 1.0);
      b.maximize(total);
      const auto out = b.solve();
      ConeReport r;
      r.proper = out.status == LpStatus::optimal && out.optimum <= 1e-9;
      r.generating = rank_of(cone.generators) == cone.ambient_dim;
      return r;
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// LP building blocks shared by the polyhedral norm and support computations.

/// New variables a >= 0 and the expression G a.
inline LinVec add_cone_element(LpBuilder& b, const ConeSpec& cone) {
  const auto gens = cone.finite_generators();
  return combine(gens, b.add_vars(gens.size()));
}

/// f(g) >= 0 for every generator g.
inline void add_dual_cone_constraint(LpBuilder& b, const ConeSpec& cone, const LinVec& f) {
  for (const auto& g : cone.finite_generators()) {
    LinExpr e;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g[i] != 0.0) e.add(f[i], g[i]);
    b.add_ge(e, 0.0);
  }
}

}  // namespace porth
