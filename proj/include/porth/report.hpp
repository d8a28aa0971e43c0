#pragma once

// Suite catalogue and the report produced by running one suite.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "porth/linalg.hpp"
#include "porth/spaces.hpp"

namespace porth {

inline constexpr const char* kVersion = "0.1.0";

enum class SuiteId {
  thm21_lp_characterization,
  def22_Op1,
  def22_Op2,
  thm23_duality,
  thm24_OSp2,
  prop25_span_smooth,
  thm26_order_iso,
  lem27_positive_pair,
  lem28_cone_coeffs,
  prop32_supp_nonempty,
  thm33_equivalence,
  rem34_extension,
  cor35_infty_pair,
  thm36_c0,
  cor38_order_unit,
  cor310_crust,
  rem311_greatest,
  thm41_one_orth,
  rem42_restriction,
  lem43_base_orth,
  thm44_duality,
  ex46_nonuniqueness,
};

struct SuiteInfo {
  SuiteId id;
  const char* name;
  const char* checks;  // one-line summary of the assertion
};

inline constexpr std::array<SuiteInfo, 22> kSuites{{
    {SuiteId::thm21_lp_characterization, "thm21_lp_characterization",
     "spans of p-orthonormal sets are isometric to l_p of the coefficients"},
    {SuiteId::def22_Op1, "def22_Op1", "|v| <= (|v-a|^p + |v+b|^p)^(1/p) for a, b positive"},
    {SuiteId::def22_Op2, "def22_Op2", "v = u1 - u2 with positive parts and aggregate within epsilon of |v|"},
    {SuiteId::thm23_duality, "thm23_duality", "both smoothness conditions hold in the space and its dual"},
    {SuiteId::thm24_OSp2, "thm24_OSp2", "every functional splits into positive parts with exact dual aggregate"},
    {SuiteId::prop25_span_smooth, "prop25_span_smooth", "the span of an orthonormal set is order smooth"},
    {SuiteId::thm26_order_iso, "thm26_order_iso", "positive orthonormal spans are order isometric to l_p"},
    {SuiteId::lem27_positive_pair, "lem27_positive_pair", "u1 - u2 leaves the cone for orthogonal positive pairs"},
    {SuiteId::lem28_cone_coeffs, "lem28_cone_coeffs", "span elements are positive iff all coefficients are"},
    {SuiteId::prop32_supp_nonempty, "prop32_supp_nonempty", "every positive element has a positive support"},
    {SuiteId::thm33_equivalence, "thm33_equivalence", "three characterisations of infinity-orthogonality agree"},
    {SuiteId::rem34_extension, "rem34_extension", "supports of orthogonal pairs combine with additive dual norm"},
    {SuiteId::cor35_infty_pair, "cor35_infty_pair", "u1 - u2 leaves the cone for infinity-orthogonal pairs"},
    {SuiteId::thm36_c0, "thm36_c0", "positive infinity-orthonormal spans are order isometric to l_inf"},
    {SuiteId::cor38_order_unit, "cor38_order_unit", "infinity-orthogonal iff normalized sum is below e"},
    {SuiteId::cor310_crust, "cor310_crust", "a crust exists iff an infinity-orthogonal partner exists"},
    {SuiteId::rem311_greatest, "rem311_greatest", "every unit partner lies below e - u/|u|"},
    {SuiteId::thm41_one_orth, "thm41_one_orth", "1-orthogonality with vanishing cross terms iff restricted supports are infinity-orthogonal"},
    {SuiteId::rem42_restriction, "rem42_restriction", "infinity-orthogonal supports restrict to infinity-orthogonal functionals"},
    {SuiteId::lem43_base_orth, "lem43_base_orth", "vanishing cross terms of supports force 1-orthogonality"},
    {SuiteId::thm44_duality, "thm44_duality", "functionals split into 1-orthogonal positive parts"},
    {SuiteId::ex46_nonuniqueness, "ex46_nonuniqueness", "cos x has two different infinity-orthogonal decompositions"},
}};

inline const SuiteInfo& suite_info(SuiteId id) { return kSuites[static_cast<std::size_t>(id)]; }
inline const char* suite_name(SuiteId id) { return suite_info(id).name; }

inline std::optional<SuiteId> parse_suite_id(std::string_view name) {
  for (const auto& s : kSuites)
    if (name == s.name) return s.id;
  return std::nullopt;
}

struct Counterexample {
  std::vector<std::pair<std::string, Vector>> input;
  double residual = 0.0;
  std::string location;
};

enum class SuiteStatus { ok, unsupported };

struct SuiteReport {
  SuiteId suite = SuiteId::def22_Op1;
  SpaceSpec space;
  std::size_t samples = 0;
  std::size_t passes = 0;
  std::vector<Counterexample> counterexamples;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  double elapsed_ms = 0.0;
  SuiteStatus status = SuiteStatus::ok;
  std::vector<std::string> notes;
  std::map<std::string, double> metrics;

  [[nodiscard]] bool passed() const { return status == SuiteStatus::ok && counterexamples.empty(); }
};

}  // namespace porth
