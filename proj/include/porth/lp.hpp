#pragma once

// Dense two-phase simplex with Bland's anti-cycling rule.
//
// Problems are stated as maximisation of objective . x subject to equality
// rows, "<=" rows and per-variable lower bounds. A variable without a lower
// bound is free. An empty lower_bounds vector means every variable is >= 0.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "porth/linalg.hpp"

namespace porth {

struct LinearConstraint {
  Vector row;
  double bound = 0.0;
};

struct LpProblem {
  Vector objective;                               // maximised
  std::vector<LinearConstraint> equalities;       // row . x == bound
  std::vector<LinearConstraint> inequalities;     // row . x <= bound
  std::vector<std::optional<double>> lower_bounds;  // nullopt = free; empty = all >= 0
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpOutcome {
  LpStatus status = LpStatus::infeasible;
  double optimum = 0.0;
  Vector argument;
};

struct LpOptions {
  double pivot_tol = 1e-9;
  double feasibility_tol = 1e-9;
  int max_pivots = 50000;
};

namespace detail {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), t_((rows + 1) * (cols + 1), 0.0) {}

  double& at(std::size_t i, std::size_t j) { return t_[i * (cols_ + 1) + j]; }
  [[nodiscard]] double at(std::size_t i, std::size_t j) const { return t_[i * (cols_ + 1) + j]; }
  double& rhs(std::size_t i) { return at(i, cols_); }
  // Row `rows_` holds reduced costs (minimisation form).
  double& cost(std::size_t j) { return at(rows_, j); }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const std::size_t w = cols_ + 1;
    double* prow = &t_[pr * w];
    const double inv = 1.0 / prow[pc];
    for (std::size_t j = 0; j < w; ++j) prow[j] *= inv;
    prow[pc] = 1.0;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == pr) continue;
      double* row = &t_[i * w];
      const double f = row[pc];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < w; ++j) row[j] -= f * prow[j];
      row[pc] = 0.0;
    }
  }

  void drop_row(std::size_t r) {
    const std::size_t w = cols_ + 1;
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r * w), t_.begin() + static_cast<std::ptrdiff_t>((r + 1) * w));
    --rows_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> t_;
};

enum class PhaseResult { optimal, unbounded, stalled };

// Minimises the cost row over columns allowed by `enterable`, Bland's rule.
inline PhaseResult run_simplex(Tableau& t, std::vector<std::size_t>& basis, const std::vector<bool>& enterable,
                               const LpOptions& opt) {
  for (int it = 0; it < opt.max_pivots; ++it) {
    std::size_t enter = t.cols();
    for (std::size_t j = 0; j < t.cols(); ++j) {
      if (enterable[j] && t.cost(j) < -opt.pivot_tol) {
        enter = j;
        break;
      }
    }
    if (enter == t.cols()) return PhaseResult::optimal;

    std::size_t leave = t.rows();
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.rows(); ++i) {
      const double a = t.at(i, enter);
      if (a <= opt.pivot_tol) continue;
      const double ratio = t.rhs(i) / a;
      if (ratio < best_ratio - 1e-15 ||
          (std::abs(ratio - best_ratio) <= 1e-15 && leave < t.rows() && basis[i] < basis[leave])) {
        best_ratio = ratio;
        leave = i;
      }
    }
    if (leave == t.rows()) return PhaseResult::unbounded;
    t.pivot(leave, enter);
    basis[leave] = enter;
  }
  return PhaseResult::stalled;
}

}  // namespace detail

inline void validate_lp(const LpProblem& p) {
  const std::size_t n = p.objective.size();
  if (n == 0) throw InputError("solve_lp: empty objective");
  require_finite(p.objective, "solve_lp objective");
  for (const auto* group : {&p.equalities, &p.inequalities}) {
    for (const auto& c : *group) {
      if (c.row.size() != n) throw InputError("solve_lp: constraint row length differs from objective");
      require_finite(c.row, "solve_lp constraint");
      if (!std::isfinite(c.bound)) throw InputError("solve_lp: non-finite bound");
    }
  }
  if (!p.lower_bounds.empty()) {
    if (p.lower_bounds.size() != n) throw InputError("solve_lp: lower_bounds length differs from objective");
    for (const auto& lb : p.lower_bounds)
      if (lb && !std::isfinite(*lb)) throw InputError("solve_lp: non-finite lower bound");
  }
}

/// Maximises the objective. Feasibility of the returned argument is checked
/// against every constraint at the feasibility tolerance (scaled by the row
/// magnitude).
inline LpOutcome solve_lp(const LpProblem& problem, const LpOptions& opt = {}) {
  validate_lp(problem);
  const std::size_t n = problem.objective.size();

  // Standard-form columns: each original variable maps to one column (shifted
  // by its lower bound) or to a (+, -) pair when free.
  std::vector<std::size_t> pos_col(n), neg_col(n, SIZE_MAX);
  Vector shift(n, 0.0);
  std::size_t ncols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::optional<double> lb = problem.lower_bounds.empty() ? std::optional<double>(0.0) : problem.lower_bounds[j];
    pos_col[j] = ncols++;
    if (lb) {
      shift[j] = *lb;
    } else {
      neg_col[j] = ncols++;
    }
  }
  const std::size_t n_struct = ncols;
  const std::size_t n_slack = problem.inequalities.size();
  const std::size_t m = problem.equalities.size() + n_slack;
  const std::size_t n_art = m;
  const std::size_t total = n_struct + n_slack + n_art;

  detail::Tableau t(m, total);
  std::vector<std::size_t> basis(m);
  auto fill_row = [&](std::size_t r, const LinearConstraint& c, std::optional<std::size_t> slack) {
    double b = c.bound;
    for (std::size_t j = 0; j < n; ++j) b -= c.row[j] * shift[j];
    const double sign = b < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      t.at(r, pos_col[j]) = sign * c.row[j];
      if (neg_col[j] != SIZE_MAX) t.at(r, neg_col[j]) = -sign * c.row[j];
    }
    if (slack) t.at(r, *slack) = sign;
    t.at(r, n_struct + n_slack + r) = 1.0;
    t.rhs(r) = sign * b;
    basis[r] = n_struct + n_slack + r;
  };
  std::size_t r = 0;
  for (const auto& c : problem.equalities) fill_row(r++, c, std::nullopt);
  for (std::size_t k = 0; k < n_slack; ++k, ++r) fill_row(r, problem.inequalities[k], n_struct + k);

  // Phase one: minimise the sum of artificials.
  for (std::size_t j = 0; j < total; ++j) t.cost(j) = 0.0;
  t.rhs(m) = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n_struct + n_slack; ++j) t.cost(j) -= t.at(i, j);
    t.rhs(m) -= t.rhs(i);
  }
  std::vector<bool> enterable(total, true);
  if (detail::run_simplex(t, basis, enterable, opt) == detail::PhaseResult::stalled) {
    throw std::runtime_error("solve_lp: pivot limit reached in phase one");
  }
  double bscale = 1.0;
  for (std::size_t i = 0; i < m; ++i) bscale = std::max(bscale, std::abs(t.rhs(i)));
  if (-t.rhs(m) > opt.feasibility_tol * bscale) return {LpStatus::infeasible, 0.0, {}};

  // Drive artificials out of the basis; drop redundant rows.
  for (std::size_t i = 0; i < t.rows();) {
    if (basis[i] < n_struct + n_slack) {
      ++i;
      continue;
    }
    std::size_t pc = total;
    for (std::size_t j = 0; j < n_struct + n_slack; ++j) {
      if (std::abs(t.at(i, j)) > opt.pivot_tol) {
        pc = j;
        break;
      }
    }
    if (pc == total) {
      t.drop_row(i);
      basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
      continue;
    }
    t.pivot(i, pc);
    basis[i] = pc;
    ++i;
  }
  for (std::size_t j = n_struct + n_slack; j < total; ++j) enterable[j] = false;

  // Phase two: minimise -objective.
  Vector cost(total, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    cost[pos_col[j]] = -problem.objective[j];
    if (neg_col[j] != SIZE_MAX) cost[neg_col[j]] = problem.objective[j];
  }
  const std::size_t mrow = t.rows();
  for (std::size_t j = 0; j < total; ++j) t.cost(j) = cost[j];
  t.rhs(mrow) = 0.0;
  for (std::size_t i = 0; i < mrow; ++i) {
    const double cb = cost[basis[i]];
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j < total; ++j) t.cost(j) -= cb * t.at(i, j);
    t.rhs(mrow) -= cb * t.rhs(i);
  }
  const auto res = detail::run_simplex(t, basis, enterable, opt);
  if (res == detail::PhaseResult::stalled) throw std::runtime_error("solve_lp: pivot limit reached in phase two");
  if (res == detail::PhaseResult::unbounded) return {LpStatus::unbounded, 0.0, {}};

  Vector y(total, 0.0);
  for (std::size_t i = 0; i < mrow; ++i) y[basis[i]] = std::max(0.0, t.rhs(i));
  LpOutcome out;
  out.status = LpStatus::optimal;
  out.argument.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    out.argument[j] = shift[j] + y[pos_col[j]] - (neg_col[j] != SIZE_MAX ? y[neg_col[j]] : 0.0);
  }
  out.optimum = dot(problem.objective, out.argument);
  return out;
}

/// Largest constraint violation of x (equalities, inequalities, lower bounds).
inline double lp_violation(const LpProblem& p, const Vector& x) {
  double v = 0.0;
  for (const auto& c : p.equalities) v = std::max(v, std::abs(dot(c.row, x) - c.bound));
  for (const auto& c : p.inequalities) v = std::max(v, dot(c.row, x) - c.bound);
  for (std::size_t j = 0; j < p.lower_bounds.size(); ++j)
    if (p.lower_bounds[j]) v = std::max(v, *p.lower_bounds[j] - x[j]);
  if (p.lower_bounds.empty())
    for (double xj : x) v = std::max(v, -xj);
  return v;
}

// ---------------------------------------------------------------------------
// Builder with sparse affine expressions over named variables.

struct LinExpr {
  std::vector<std::pair<std::size_t, double>> terms;
  double constant = 0.0;

  LinExpr() = default;
  explicit LinExpr(double c) : constant(c) {}
  static LinExpr var(std::size_t v, double coef = 1.0) {
    LinExpr e;
    e.terms.emplace_back(v, coef);
    return e;
  }

  LinExpr& add(std::size_t v, double coef) {
    if (coef != 0.0) terms.emplace_back(v, coef);
    return *this;
  }
  LinExpr& add(const LinExpr& o, double scale = 1.0) {
    for (const auto& [v, c] : o.terms) add(v, scale * c);
    constant += scale * o.constant;
    return *this;
  }
};

inline LinExpr operator-(const LinExpr& a, const LinExpr& b) {
  LinExpr r = a;
  r.add(b, -1.0);
  return r;
}

inline LinExpr operator+(const LinExpr& a, const LinExpr& b) {
  LinExpr r = a;
  r.add(b, 1.0);
  return r;
}

using LinVec = std::vector<LinExpr>;

inline LinVec constant_vec(const Vector& v) {
  LinVec r;
  r.reserve(v.size());
  for (double x : v) r.emplace_back(x);
  return r;
}

/// sum_k coeffs[k] * vectors[k], coefficient expressions times constant vectors.
inline LinVec combine(const std::vector<Vector>& vectors, const std::vector<std::size_t>& coeff_vars) {
  const std::size_t n = vectors.front().size();
  LinVec r(n);
  for (std::size_t k = 0; k < vectors.size(); ++k)
    for (std::size_t i = 0; i < n; ++i) r[i].add(coeff_vars[k], vectors[k][i]);
  return r;
}

/// f . x for a variable vector f and constant vector x.
inline LinExpr pair_with(const LinVec& f, const Vector& x) {
  LinExpr r;
  for (std::size_t i = 0; i < f.size(); ++i) r.add(f[i], x[i]);
  return r;
}

class LpBuilder {
 public:
  std::size_t add_var(std::optional<double> lower = 0.0) {
    lower_.push_back(lower);
    return lower_.size() - 1;
  }

  std::vector<std::size_t> add_vars(std::size_t count, std::optional<double> lower = 0.0) {
    std::vector<std::size_t> ids(count);
    for (auto& id : ids) id = add_var(lower);
    return ids;
  }

  LinVec add_var_vec(std::size_t count, std::optional<double> lower = 0.0) {
    LinVec r;
    for (std::size_t i = 0; i < count; ++i) r.push_back(LinExpr::var(add_var(lower)));
    return r;
  }

  void add_eq(const LinExpr& lhs, double rhs) { eqs_.emplace_back(lhs, rhs); }
  void add_le(const LinExpr& lhs, double rhs) { les_.emplace_back(lhs, rhs); }
  void add_ge(const LinExpr& lhs, double rhs) {
    LinExpr neg;
    neg.add(lhs, -1.0);
    les_.emplace_back(neg, -rhs);
  }
  void add_eq(const LinVec& lhs, const LinVec& rhs) {
    for (std::size_t i = 0; i < lhs.size(); ++i) add_eq(lhs[i] - rhs[i], 0.0);
  }

  void maximize(const LinExpr& obj) {
    objective_ = obj;
    minimize_ = false;
  }
  void minimize(const LinExpr& obj) {
    objective_ = obj;
    minimize_ = true;
  }

  [[nodiscard]] std::size_t num_vars() const { return lower_.size(); }

  [[nodiscard]] LpProblem build() const {
    const std::size_t n = lower_.size();
    LpProblem p;
    p.objective.assign(n, 0.0);
    const double sense = minimize_ ? -1.0 : 1.0;
    for (const auto& [v, c] : objective_.terms) p.objective[v] += sense * c;
    auto dense = [&](const LinExpr& e, double rhs) {
      LinearConstraint c{Vector(n, 0.0), rhs - e.constant};
      for (const auto& [v, k] : e.terms) c.row[v] += k;
      return c;
    };
    for (const auto& [e, rhs] : eqs_) p.equalities.push_back(dense(e, rhs));
    for (const auto& [e, rhs] : les_) p.inequalities.push_back(dense(e, rhs));
    p.lower_bounds = lower_;
    return p;
  }

  /// Solves and reports the optimum in the sense requested (min or max),
  /// including the objective's constant term.
  [[nodiscard]] LpOutcome solve(const LpOptions& opt = {}) const {
    LpOutcome o = solve_lp(build(), opt);
    if (o.status == LpStatus::optimal) o.optimum = value(objective_, o.argument);
    return o;
  }

  [[nodiscard]] static double value(const LinExpr& e, const Vector& x) {
    double s = e.constant;
    for (const auto& [v, c] : e.terms) s += c * x[v];
    return s;
  }

  [[nodiscard]] static Vector value(const LinVec& e, const Vector& x) {
    Vector r(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) r[i] = value(e[i], x);
    return r;
  }

 private:
  std::vector<std::optional<double>> lower_;
  std::vector<std::pair<LinExpr, double>> eqs_;
  std::vector<std::pair<LinExpr, double>> les_;
  LinExpr objective_;
  bool minimize_ = false;
};

}  // namespace porth
