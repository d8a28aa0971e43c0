#pragma once

// Suite runner: which suites apply to which family, the default families,
// and seeded execution.

#include <chrono>
#include <cstdint>
#include <exception>
#include <random>
#include <string>
#include <vector>

#include "porth/cones.hpp"
#include "porth/report.hpp"
#include "porth/sampling.hpp"
#include "porth/spaces.hpp"
#include "porth/suites.hpp"

namespace porth {

inline constexpr double kDefaultSuiteTol = 1e-8;

namespace detail {

inline bool order_unit_family(const SpaceSpec& s) {
  return s.p_class.is_infinite() && order_unit_of(s).has_value() && (s.cone.polyhedral() || is_psd_family(s));
}

inline bool base_family(const SpaceSpec& s) {
  return s.p_class.is_one() && base_functional_of(s).has_value() && s.cone.polyhedral();
}

}  // namespace detail

/// Whether the suite's hypotheses and constructions apply to the family.
inline bool suite_supports(SuiteId id, const SpaceSpec& s) {
  const auto view = coordinate_view(s);
  const bool coord = is_coordinate_family(s) && view->p == s.p_class;
  const bool workable = s.cone.polyhedral() ? (is_polyhedral_norm(s) || coord) : is_psd_family(s);
  switch (id) {
    case SuiteId::thm21_lp_characterization:
    case SuiteId::prop25_span_smooth:
    case SuiteId::lem27_positive_pair:
    case SuiteId::lem28_cone_coeffs:
      return coord;
    case SuiteId::thm26_order_iso:
      return coord && !view->p.is_infinite();
    case SuiteId::thm36_c0:
      return coord && view->p.is_infinite();
    case SuiteId::def22_Op1:
      return workable;
    case SuiteId::def22_Op2:
    case SuiteId::prop32_supp_nonempty:
      return workable;
    case SuiteId::thm23_duality:
      return workable && dual_space(s).has_value();
    case SuiteId::thm24_OSp2:
      return coord || is_psd_family(s) ||
             (is_polyhedral_norm(s) && (s.p_class.is_one() || s.p_class.is_infinite()));
    case SuiteId::thm33_equivalence:
    case SuiteId::rem34_extension:
    case SuiteId::cor35_infty_pair:
    case SuiteId::cor38_order_unit:
    case SuiteId::cor310_crust:
    case SuiteId::rem311_greatest:
      return detail::order_unit_family(s) && s.dim >= 2;
    case SuiteId::thm44_duality:
      return detail::order_unit_family(s);
    case SuiteId::thm41_one_orth:
    case SuiteId::rem42_restriction:
    case SuiteId::lem43_base_orth:
      return detail::base_family(s) && s.dim >= 2;
    case SuiteId::ex46_nonuniqueness:
      return true;
  }
  return false;
}

namespace detail {

inline void dispatch(SuiteId id, SuiteRun& run, std::size_t example_grid) {
  switch (id) {
    case SuiteId::thm21_lp_characterization: return suite_embedding(run, false, true);
    case SuiteId::def22_Op1: return suite_op1(run);
    case SuiteId::def22_Op2: return suite_op2(run);
    case SuiteId::thm23_duality: return suite_duality(run);
    case SuiteId::thm24_OSp2: return suite_exact_dual_split(run);
    case SuiteId::prop25_span_smooth: return suite_span_smooth(run);
    case SuiteId::thm26_order_iso: return suite_embedding(run, true, false);
    case SuiteId::lem27_positive_pair: return suite_positive_pair(run);
    case SuiteId::lem28_cone_coeffs: return suite_cone_coefficients(run);
    case SuiteId::prop32_supp_nonempty: return suite_support_exists(run);
    case SuiteId::thm33_equivalence: return suite_three_way(run);
    case SuiteId::rem34_extension: return suite_extension(run);
    case SuiteId::cor35_infty_pair: return suite_infty_pair(run);
    case SuiteId::thm36_c0: return suite_embedding(run, true, false);
    case SuiteId::cor38_order_unit: return suite_below_unit(run);
    case SuiteId::cor310_crust: return suite_crust(run);
    case SuiteId::rem311_greatest: return suite_greatest(run);
    case SuiteId::thm41_one_orth: return suite_one_orth(run);
    case SuiteId::rem42_restriction: return suite_restriction(run);
    case SuiteId::lem43_base_orth: return suite_base_orth(run);
    case SuiteId::thm44_duality: return suite_dual_split(run);
    case SuiteId::ex46_nonuniqueness: return suite_example_46(run, example_grid);
  }
}

}  // namespace detail

struct RunOptions {
  std::size_t samples = 200;
  double tol = kDefaultSuiteTol;
  std::uint64_t seed = 0;
  std::size_t example_grid = kExample46Grid;  // grid size for the cos x example
};

/// Runs one suite. The sampling stream depends only on (seed, suite), so
/// reports are reproducible and independent of execution order. Suites
/// that do not apply to the family report status unsupported.
inline SuiteReport run_suite(SuiteId id, const SpaceSpec& s, const RunOptions& opt) {
  SuiteReport r;
  r.suite = id;
  r.space = s;
  r.seed = opt.seed;
  r.tolerance = opt.tol;
  if (!(opt.tol > 0.0)) throw InputError("tolerance must be positive");
  validate_space(s);
  if (id == SuiteId::ex46_nonuniqueness) {
    if (opt.example_grid < 3) throw InputError("example grid needs n >= 3");
    r.space = sup_space(opt.example_grid);
  }
  if (!suite_supports(id, s)) {
    r.status = SuiteStatus::unsupported;
    r.notes.emplace_back("suite does not apply to this family");
    return r;
  }
  std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                    static_cast<std::uint32_t>(id)};
  Rng rng(seq);
  detail::SuiteRun run(r, rng);
  run.set_target(opt.samples);
  const auto start = std::chrono::steady_clock::now();
  try {
    detail::dispatch(id, run, opt.example_grid);
  } catch (const std::exception& ex) {
    run.check(false, 0.0, std::string("error: ") + ex.what());
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline SuiteReport run_suite(SuiteId id, const SpaceSpec& s, std::size_t samples, double tol, std::uint64_t seed) {
  RunOptions opt;
  opt.samples = samples;
  opt.tol = tol;
  opt.seed = seed;
  return run_suite(id, s, opt);
}

// ---------------------------------------------------------------------------
// Default families

struct NamedSpace {
  std::string name;
  SpaceSpec space;
};

/// The ray cone over the square {(1, x) : |x_j| <= 1} in R^4, generated by
/// (1, +-1, +-1, +-1), with order unit (1, 0, 0, 0).
inline SpaceSpec cube_space() {
  std::vector<Vector> gens;
  for (int m = 0; m < 8; ++m)
    gens.push_back({1.0, (m & 1) ? 1.0 : -1.0, (m & 2) ? 1.0 : -1.0, (m & 4) ? 1.0 : -1.0});
  return order_unit_space(ConeSpec::rays(std::move(gens)), {1.0, 0.0, 0.0, 0.0});
}

inline std::vector<NamedSpace> default_families() {
  Functional phi(8);
  for (std::size_t i = 0; i < 8; ++i) phi[i] = 1.0 + 0.25 * static_cast<double>(i);
  return {
      {"l1_8", lp_space(8, 1.0)},
      {"l1.5_8", lp_space(8, 1.5)},
      {"l2_8", lp_space(8, 2.0)},
      {"l3_8", lp_space(8, 3.0)},
      {"sup_8", sup_space(8)},
      {"base_8", base_space(ConeSpec::orthant(8), phi)},
      {"spectral_4", spectral_space(4)},
      {"cube_4", cube_space()},
  };
}

struct CatalogEntry {
  std::string family;
  SuiteReport report;
};

/// Every suite on every default family it applies to.
inline std::vector<CatalogEntry> run_all(const RunOptions& opt) {
  std::vector<CatalogEntry> out;
  for (const auto& info : kSuites) {
    if (info.id == SuiteId::ex46_nonuniqueness) {
      out.push_back({"grid", run_suite(info.id, sup_space(3), opt)});
      continue;
    }
    for (const auto& fam : default_families())
      if (suite_supports(info.id, fam.space)) out.push_back({fam.name, run_suite(info.id, fam.space, opt)});
  }
  return out;
}

/// Every suite that applies to the given family.
inline std::vector<SuiteReport> run_all_on(const SpaceSpec& s, const RunOptions& opt) {
  std::vector<SuiteReport> out;
  for (const auto& info : kSuites)
    if (suite_supports(info.id, s)) out.push_back(run_suite(info.id, s, opt));
  return out;
}

}  // namespace porth
