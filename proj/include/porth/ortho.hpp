#pragma once

// p-orthogonality: x is p-orthogonal to y when
//   |x + k y|^p = |x|^p + |k|^p |y|^p   for every real k  (1 <= p < inf)
//   |x + k y|   = max(|x|, |k| |y|)    for every real k  (p = inf).
// For a general norm oracle this is checked on a finite grid of k; for the
// plain coordinate l_p norms there is an exact test.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "porth/cones.hpp"
#include "porth/linalg.hpp"
#include "porth/spaces.hpp"

namespace porth {

enum class Verdict { orthogonal, not_orthogonal, inconclusive };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::orthogonal: return "orthogonal";
    case Verdict::not_orthogonal: return "not_orthogonal";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

inline std::vector<double> default_k_grid() {
  std::vector<double> g{0.0};
  for (int j = -8; j <= 8; ++j) {
    g.push_back(-std::ldexp(1.0, j));
    g.push_back(std::ldexp(1.0, j));
  }
  return g;
}

/// k_grid holds multipliers of |x|/|y|: the scalar actually tried is
/// k * |x| / |y|, which makes verdicts invariant under rescaling x and y.
struct OrthoConfig {
  std::vector<double> k_grid = default_k_grid();
  double tol = 1e-9;
};

struct OrthoVerdict {
  Verdict verdict = Verdict::orthogonal;
  double worst_residual = 0.0;
  double witness_k = 0.0;
  std::vector<double> k_grid;  // the scalars evaluated

  [[nodiscard]] bool orthogonal() const { return verdict == Verdict::orthogonal; }
};

/// Residual of the defining identity at one scalar k, relative to the
/// right-hand side.
inline double ortho_residual(double n_sum, double nx, double nky, Exponent p) {
  if (p.is_infinite()) {
    const double rhs = std::max(nx, nky);
    return std::abs(n_sum - rhs) / rhs;
  }
  const double q = p.value();
  const double rhs = std::pow(nx, q) + std::pow(nky, q);
  return std::abs(std::pow(n_sum, q) - rhs) / rhs;
}

/// Grid decision for an arbitrary norm oracle. The witness is the first
/// scalar (in grid order) attaining the largest residual.
template <class NormF>
OrthoVerdict p_orthogonal_with(NormF&& normf, const Vector& x, const Vector& y, Exponent p,
                               const OrthoConfig& cfg = {}) {
  require_valid_exponent(p);
  require_same_dim(x, y, "p_orthogonal");
  OrthoVerdict out;
  if (is_zero(x) || is_zero(y)) return out;
  const double nx = normf(x);
  const double ny = normf(y);
  if (!std::isfinite(nx) || !std::isfinite(ny) || nx <= 0.0 || ny <= 0.0) {
    out.verdict = Verdict::inconclusive;
    return out;
  }
  const double scale = nx / ny;
  for (double m : cfg.k_grid) {
    const double k = m * scale;
    out.k_grid.push_back(k);
    const double ns = normf(axpy(x, k, y));
    if (!std::isfinite(ns)) {
      out.verdict = Verdict::inconclusive;
      out.witness_k = k;
      return out;
    }
    const double r = ortho_residual(ns, nx, std::abs(k) * ny, p);
    if (r > out.worst_residual) {
      out.worst_residual = r;
      out.witness_k = k;
    }
  }
  out.verdict = out.worst_residual > cfg.tol ? Verdict::not_orthogonal : Verdict::orthogonal;
  return out;
}

inline OrthoVerdict p_orthogonal_numeric(const SpaceSpec& s, const Vector& x, const Vector& y, Exponent p,
                                         const OrthoConfig& cfg = {}) {
  check_dim(s, x, "p_orthogonal_numeric");
  check_dim(s, y, "p_orthogonal_numeric");
  return p_orthogonal_with([&s](const Vector& v) { return norm(s, v); }, x, y, p, cfg);
}

namespace detail {

// |x + k y|_inf - max(|x|_inf, |k| |y|_inf) is piecewise linear in k, and
// its breakpoints lie among the crossings of the lines +-(x_i + k y_i) and
// the kinks of the right-hand side. It vanishes identically iff it vanishes
// at each breakpoint and at one point beyond the outermost ones.
inline bool infty_orthogonal_exact(const Vector& x, const Vector& y, double tol) {
  const double nx = norm_max(x);
  const double ny = norm_max(y);
  std::vector<double> ks{0.0, nx / ny, -nx / ny};
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (y[i] != 0.0) ks.push_back(-x[i] / y[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (y[i] != y[j]) ks.push_back((x[j] - x[i]) / (y[i] - y[j]));
      if (y[i] + y[j] != 0.0) ks.push_back(-(x[i] + x[j]) / (y[i] + y[j]));
    }
  }
  const auto [lo, hi] = std::minmax_element(ks.begin(), ks.end());
  const double span = std::max(1.0, *hi - *lo);
  ks.push_back(*lo - span);
  ks.push_back(*hi + span);
  for (double k : ks) {
    const double lhs = norm_max(axpy(x, k, y));
    const double rhs = std::max(nx, std::abs(k) * ny);
    if (std::abs(lhs - rhs) > tol * (1.0 + rhs)) return false;
  }
  return true;
}

}  // namespace detail

/// Exact decision in the unweighted coordinate space l_p^n: orthogonality of
/// the inner product for p = 2, disjoint supports for other finite p, and a
/// breakpoint check of the piecewise-linear identity for p = inf.
inline bool p_orthogonal_exact(const Vector& x, const Vector& y, Exponent p) {
  require_valid_exponent(p);
  require_same_dim(x, y, "p_orthogonal_exact");
  require_finite(x, "p_orthogonal_exact");
  require_finite(y, "p_orthogonal_exact");
  constexpr double eps = 1e-12;
  if (is_zero(x) || is_zero(y)) return true;
  if (p.is_infinite()) return detail::infty_orthogonal_exact(x, y, eps);
  if (p.value() == 2.0) return std::abs(dot(x, y)) <= eps;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (std::abs(x[i]) > eps && std::abs(y[i]) > eps) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Positive pairs in spaces of class p = inf

struct InftyPositiveReport {
  bool orthogonal = false;  // |u1/|u1| + u2/|u2|| = 1
  double norm_sum = 0.0;    // |u1/|u1| + u2/|u2||
  double norm_diff = 0.0;   // |u1/|u1| - u2/|u2||
  bool diff_agrees = true;  // for an orthogonal pair the difference has norm 1 too
};

inline InftyPositiveReport infty_positive_report(const SpaceSpec& s, const Vector& u1, const Vector& u2,
                                                 double tol = 1e-9) {
  check_dim(s, u1, "infty_positive_test");
  check_dim(s, u2, "infty_positive_test");
  if (!s.p_class.is_infinite()) throw InputError("infty_positive_test: space is not of class p = inf");
  if (is_zero(u1) || is_zero(u2)) throw InputError("infty_positive_test: zero argument");
  if (!cone_contains(s.cone, u1) || !cone_contains(s.cone, u2))
    throw InputError("infty_positive_test: argument outside the cone");
  const Vector h1 = (1.0 / norm(s, u1)) * u1;
  const Vector h2 = (1.0 / norm(s, u2)) * u2;
  InftyPositiveReport r;
  r.norm_sum = norm(s, h1 + h2);
  r.norm_diff = norm(s, h1 - h2);
  r.orthogonal = std::abs(r.norm_sum - 1.0) <= tol;
  r.diff_agrees = !r.orthogonal || std::abs(r.norm_diff - 1.0) <= tol;
  return r;
}

inline bool infty_positive_test(const SpaceSpec& s, const Vector& u1, const Vector& u2, double tol = 1e-9) {
  return infty_positive_report(s, u1, u2, tol).orthogonal;
}

// ---------------------------------------------------------------------------
// Orthonormal sets

struct OrthonormalReport {
  bool pairwise_ok = true;
  bool unit_norms_ok = true;
  bool total = false;
  bool additivity_spotcheck = true;  // no falsifying triple found
  std::size_t rank = 0;
  std::size_t triples_checked = 0;
  std::vector<std::pair<std::size_t, std::size_t>> failing_pairs;
};

/// Pairwise orthogonality and unit norms of U, totality (U spans the space),
/// and a falsification search for additivity: triples x, y, z built from
/// disjoint index groups of U with x orthogonal to y and z but not to y + z.
inline OrthonormalReport orthonormal_set_verify(const SpaceSpec& s, const std::vector<Vector>& U, Exponent p,
                                                const OrthoConfig& cfg = {}, std::size_t triples = 50,
                                                std::uint64_t seed = 0) {
  require_valid_exponent(p);
  if (U.empty()) throw InputError("orthonormal_set_verify: empty set");
  for (const auto& u : U) {
    check_dim(s, u, "orthonormal_set_verify");
    if (is_zero(u)) throw InputError("orthonormal_set_verify: zero vector in set");
  }
  OrthonormalReport r;
  for (const auto& u : U)
    if (std::abs(norm(s, u) - 1.0) > 1e-9) r.unit_norms_ok = false;
  for (std::size_t i = 0; i < U.size(); ++i)
    for (std::size_t j = i + 1; j < U.size(); ++j)
      if (!p_orthogonal_numeric(s, U[i], U[j], p, cfg).orthogonal()) {
        r.pairwise_ok = false;
        r.failing_pairs.emplace_back(i, j);
      }
  r.rank = rank_of(U);
  r.total = r.rank == s.dim;

  if (U.size() >= 2) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    for (std::size_t t = 0; t < triples; ++t) {
      std::vector<std::size_t> idx(U.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      std::shuffle(idx.begin(), idx.end(), rng);
      const std::size_t cut = 1 + rng() % (U.size() - 1);
      Vector x(s.dim, 0.0), y(s.dim, 0.0), z(s.dim, 0.0);
      for (std::size_t i = 0; i < cut; ++i) x = axpy(x, nd(rng), U[idx[i]]);
      for (std::size_t i = cut; i < idx.size(); ++i) {
        y = axpy(y, nd(rng), U[idx[i]]);
        z = axpy(z, nd(rng), U[idx[i]]);
      }
      if (is_zero(y + z)) continue;
      ++r.triples_checked;
      if (p_orthogonal_numeric(s, x, y, p, cfg).orthogonal() && p_orthogonal_numeric(s, x, z, p, cfg).orthogonal() &&
          !p_orthogonal_numeric(s, x, y + z, p, cfg).orthogonal())
        r.additivity_spotcheck = false;
    }
  }
  return r;
}

}  // namespace porth
