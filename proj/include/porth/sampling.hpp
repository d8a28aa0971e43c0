#pragma once

// Random elements of a space: cone members, boundary points, orthogonal
// positive pairs and orthonormal sets. All draws go through a caller-owned
// engine so suites stay reproducible.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "porth/cones.hpp"
#include "porth/linalg.hpp"
#include "porth/lp.hpp"
#include "porth/spaces.hpp"

namespace porth {

using Rng = std::mt19937_64;

namespace detail {

inline double unit_normal(Rng& rng) { return std::normal_distribution<double>()(rng); }
inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}
inline double exponential(Rng& rng) { return std::exponential_distribution<double>(1.0)(rng); }
inline std::size_t index(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline Matrix random_matrix(std::size_t d, Rng& rng) {
  Matrix a(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) a(i, j) = unit_normal(rng);
  return a;
}

// Random orthogonal matrix by Gram-Schmidt on a Gaussian matrix (columns).
inline Matrix random_rotation(std::size_t d, Rng& rng) {
  std::vector<Vector> cols;
  while (cols.size() < d) {
    Vector v(d);
    for (auto& x : v) x = unit_normal(rng);
    for (const auto& c : cols) v = axpy(v, -dot(v, c), c);
    const double n = norm_two(v);
    if (n < 1e-6) continue;
    cols.push_back((1.0 / n) * v);
  }
  return columns_matrix(cols);
}

inline Matrix with_spectrum(const Matrix& q, const Vector& diag) {
  return q * Matrix::diagonal(diag) * q.transpose();
}

}  // namespace detail

/// A random vector of the space (a symmetric matrix for psd cones).
inline Vector sample_vector(const SpaceSpec& s, Rng& rng) {
  Vector x(s.dim);
  for (auto& v : x) v = detail::unit_normal(rng);
  if (s.cone.kind == ConeKind::psd) x = symmetric_matrix(x, s.cone.side).flat();
  return x;
}

/// sum a_i g_i over the cone generators with a_i ~ Exp(1); a Gram matrix
/// A A^T for the psd cone.
inline Vector sample_cone(const SpaceSpec& s, Rng& rng) {
  switch (s.cone.kind) {
    case ConeKind::nonneg_orthant: {
      Vector x(s.dim);
      for (auto& v : x) v = detail::exponential(rng);
      return x;
    }
    case ConeKind::rays: {
      Vector x(s.dim, 0.0);
      for (const auto& g : s.cone.generators) x = axpy(x, detail::exponential(rng), g);
      return x;
    }
    case ConeKind::psd: {
      const Matrix a = detail::random_matrix(s.cone.side, rng);
      return (a * a.transpose()).flat();
    }
  }
  return {};
}

inline Vector sample_cone(const SpaceSpec& s, std::uint64_t seed) {
  Rng rng(seed);
  return sample_cone(s, rng);
}

/// Largest t with x - t e in the cone, for x in the cone.
inline double retraction_length(const SpaceSpec& s, const Vector& x, const Vector& e) {
  switch (s.cone.kind) {
    case ConeKind::nonneg_orthant: {
      double t = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < x.size(); ++i) t = std::min(t, x[i] / e[i]);
      return t;
    }
    case ConeKind::psd: {
      const std::size_t d = s.cone.side;
      const auto [half, inv_half] = detail::sqrt_pair(symmetric_matrix(e, d));
      return min_eigenvalue(detail::congruence(inv_half, symmetric_matrix(x, d)));
    }
    case ConeKind::rays: {
      LpBuilder b;
      const auto t = b.add_var(std::nullopt);
      const LinVec ga = add_cone_element(b, s.cone);
      for (std::size_t i = 0; i < x.size(); ++i) {
        LinExpr row = ga[i];
        row.add(t, e[i]);
        b.add_eq(row, x[i]);
      }
      b.maximize(LinExpr::var(t));
      const auto out = b.solve();
      if (out.status != LpStatus::optimal) throw std::runtime_error("retraction LP failed");
      return out.optimum;
    }
  }
  return 0.0;
}

/// A nonzero point on the boundary of the cone: a random member pushed back
/// along the order unit until it leaves the interior.
inline Vector sample_boundary(const SpaceSpec& s, const Vector& e, Rng& rng) {
  for (;;) {
    const Vector x = sample_cone(s, rng);
    Vector u = axpy(x, -retraction_length(s, x, e), e);
    if (s.cone.kind == ConeKind::nonneg_orthant)
      for (auto& v : u) v = std::max(v, 0.0);
    if (norm_max(u) > 1e-6 * norm_max(x)) return u;
  }
}

/// Nonnegative a, b with max a = max b = 1. When orthogonal is set,
/// a + b <= 1 coordinatewise; otherwise some coordinate exceeds 1.
inline std::pair<Vector, Vector> box_pair(std::size_t n, bool orthogonal, Rng& rng) {
  if (n < 2) throw InputError("box_pair needs two coordinates");
  Vector a(n, 0.0), b(n, 0.0);
  const std::size_t ia = detail::index(rng, n);
  std::size_t ib = detail::index(rng, n - 1);
  if (ib >= ia) ++ib;
  a[ia] = 1.0;
  b[ib] = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == ia || j == ib) continue;
    if (detail::coin(rng, 0.7)) a[j] = detail::uniform(rng);
    if (detail::coin(rng, 0.7)) b[j] = detail::uniform(rng, 0.0, 1.0 - a[j]);
  }
  if (!orthogonal) {
    std::size_t j = detail::index(rng, n);
    if (j == ib) j = ia;
    if (j == ia) {
      b[j] = detail::uniform(rng, 0.05, 1.0);
    } else {
      a[j] = detail::uniform(rng, 0.05, 1.0);
      b[j] = std::min(1.0, 1.0 - a[j] + detail::uniform(rng, 0.05, 0.5));
      if (b[j] + a[j] <= 1.0) b[j] = 1.0;
    }
  }
  return {a, b};
}

/// Positive pair (u1, u2) in an order-unit space. Built orthogonal (the
/// normalized sum stays below e) when orthogonal is set; otherwise a
/// generic pair that is usually not orthogonal.
inline std::pair<Vector, Vector> sample_order_unit_pair(const SpaceSpec& s, const Vector& e, bool orthogonal,
                                                        Rng& rng) {
  const double s1 = std::exp(detail::uniform(rng, -1.0, 1.0));
  const double s2 = std::exp(detail::uniform(rng, -1.0, 1.0));
  if (s.cone.kind == ConeKind::nonneg_orthant && s.dim >= 2) {
    auto [a, b] = box_pair(s.dim, orthogonal, rng);
    Vector u1(s.dim), u2(s.dim);
    for (std::size_t i = 0; i < s.dim; ++i) {
      u1[i] = s1 * a[i] * e[i];
      u2[i] = s2 * b[i] * e[i];
    }
    return {u1, u2};
  }
  if (s.cone.kind == ConeKind::psd) {
    const std::size_t d = s.cone.side;
    const auto [half, inv_half] = detail::sqrt_pair(symmetric_matrix(e, d));
    auto [a, b] = box_pair(d, orthogonal, rng);
    const Matrix q = detail::random_rotation(d, rng);
    const Matrix m1 = detail::congruence(half, detail::with_spectrum(q, a));
    Matrix m2 = detail::congruence(half, detail::with_spectrum(q, b));
    if (!orthogonal && detail::coin(rng)) {
      // non-commuting variant
      const Matrix q2 = detail::random_rotation(d, rng);
      m2 = detail::congruence(half, detail::with_spectrum(q2, b));
    }
    return {(s1 * m1).flat(), (s2 * m2).flat()};
  }
  // General polyhedral cone: a boundary point and a multiple of its greatest
  // partner e - u/|u|, or two generic members.
  if (!orthogonal) return {s1 * sample_cone(s, rng), s2 * sample_cone(s, rng)};
  for (;;) {
    const Vector u = sample_boundary(s, e, rng);
    const Vector partner = axpy(e, -1.0 / norm(s, u), u);
    if (std::abs(norm(s, partner) - 1.0) > 1e-9) continue;
    return {s1 * u, s2 * partner};
  }
}

/// Disjointly supported nonnegative unit vectors on a random subset of the
/// coordinates: an orthonormal set for every weighted l_p norm. With total
/// set, every coordinate is covered.
inline std::vector<Vector> sample_disjoint_set(const SpaceSpec& s, std::size_t max_size, bool total, Rng& rng) {
  const std::size_t n = s.dim;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  const std::size_t m = std::min(max_size, n);
  const std::size_t k = total ? m : 1 + detail::index(rng, m);
  const std::size_t used = total ? n : k + detail::index(rng, n - k + 1);
  std::vector<Vector> U(k, Vector(n, 0.0));
  for (std::size_t i = 0; i < used; ++i) {
    const std::size_t group = i < k ? i : detail::index(rng, k);
    U[group][order[i]] = 0.25 + detail::uniform(rng);
  }
  for (auto& u : U) u = (1.0 / norm(s, u)) * u;
  return U;
}

/// Orthonormal set for the unweighted Euclidean norm: rotated unit vectors.
inline std::vector<Vector> sample_euclidean_set(std::size_t n, std::size_t k, Rng& rng) {
  const Matrix q = detail::random_rotation(n, rng);
  std::vector<Vector> U;
  for (std::size_t i = 0; i < k; ++i) U.push_back(q.col(i));
  return U;
}

}  // namespace porth
