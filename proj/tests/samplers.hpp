#pragma once

// Random instances shared by the unit tests and the acceptance run.

#include <cmath>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "porth/lp.hpp"
#include "porth/spaces.hpp"

namespace porth::fixtures {

// Sparse pairs in R^8 with small integer entries; a third of them are built
// to be orthogonal in l_p.
inline std::pair<Vector, Vector> sparse_pair(Exponent p, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> val(-3, 3);
  std::uniform_int_distribution<int> kind(0, 2);
  std::bernoulli_distribution keep(0.4);
  Vector x(8, 0.0), y(8, 0.0);
  const int mode = kind(rng);
  for (std::size_t i = 0; i < 8; ++i) {
    if (keep(rng)) x[i] = val(rng);
    if (keep(rng)) y[i] = val(rng);
    if (mode == 0 && x[i] != 0.0) y[i] = 0.0;
  }
  if (is_zero(x)) x[0] = 1.0;
  if (is_zero(y)) y[7] = -2.0;
  if (mode == 1 && p == Exponent(2.0)) y = axpy(y, -dot(x, y) / dot(x, x), x);
  if (mode == 1 && p.is_infinite()) {
    // y small wherever x is nonzero: x attains its max off supp(y)
    const double mx = norm_max(x);
    for (std::size_t i = 0; i < 8; ++i)
      if (x[i] != 0.0) y[i] = 0.25 * y[i] * (mx - std::abs(x[i])) / 3.0;
  }
  return {x, y};
}

struct BoundedLp {
  Vector c;
  std::vector<Vector> rows;
  Vector rhs;

  LpProblem problem() const {
    LpProblem p;
    p.objective = c;
    p.lower_bounds.assign(c.size(), std::nullopt);
    for (std::size_t i = 0; i < rows.size(); ++i) p.inequalities.push_back({rows[i], rhs[i]});
    return p;
  }
};

// max c.x over a random polytope of dimension 1..4: x >= 0, a bounding
// simplex and three random cuts that keep the origin feasible.
inline BoundedLp random_bounded_lp(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::uniform_int_distribution<int> dim_dist(1, 4);
  const int n = dim_dist(rng);
  BoundedLp lp;
  for (int j = 0; j < n; ++j) {
    Vector r(n, 0.0);
    r[j] = -1.0;
    lp.rows.push_back(r);
    lp.rhs.push_back(0.0);
  }
  lp.rows.emplace_back(n, 1.0);
  lp.rhs.push_back(1.0 + std::abs(unif(rng)));
  for (int k = 0; k < 3; ++k) {
    Vector r(n);
    for (auto& v : r) v = unif(rng);
    lp.rows.push_back(r);
    lp.rhs.push_back(0.2 + std::abs(unif(rng)));
  }
  lp.c.resize(n);
  for (auto& v : lp.c) v = unif(rng);
  return lp;
}

}  // namespace porth::fixtures
