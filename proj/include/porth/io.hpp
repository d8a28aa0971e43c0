#pragma once

// JSON space specifications, JSON reports and CSV vectors.
//
// Space files look like
//   {"dim": 3, "cone": {"kind": "nonneg"}, "norm": {"kind": "lp", "p": 1}, "p_class": 1}
// with cone kinds nonneg | rays (+ "generators") | psd, norm kinds
// lp (+ "p", optional "weights") | sup | order_unit (+ "unit") | base (+ "phi")
// | spectral, and exponents given as numbers or the string "inf". A psd cone
// lives on flattened d x d matrices, so dim must be a square.

#include <charconv>
#include <cmath>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "porth/cones.hpp"
#include "porth/decomp.hpp"
#include "porth/linalg.hpp"
#include "porth/ortho.hpp"
#include "porth/report.hpp"
#include "porth/spaces.hpp"

namespace porth {

using Json = nlohmann::json;

namespace detail {

inline void reject_unknown_keys(const Json& obj, std::set<std::string> allowed, const std::string& where) {
  if (!obj.is_object()) throw InputError(where + ": expected an object");
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) throw InputError(where + ": unknown key \"" + k + "\"");
}

inline const Json& require_key(const Json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + ": missing \"" + key + "\"");
  return *it;
}

inline Vector vector_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array of numbers");
  Vector v;
  for (const auto& x : j) {
    if (!x.is_number()) throw InputError(where + ": expected an array of numbers");
    v.push_back(x.get<double>());
  }
  require_finite(v, where.c_str());
  return v;
}

}  // namespace detail

inline Exponent exponent_from_json(const Json& j, const std::string& where) {
  Exponent p;
  if (j.is_string() && j.get<std::string>() == "inf") {
    p = Exponent::infinity();
  } else if (j.is_number()) {
    p = Exponent(j.get<double>());
  } else {
    throw InputError(where + ": expected a number or \"inf\"");
  }
  if (!p.valid()) throw InputError(where + ": invalid exponent");
  return p;
}

inline Json exponent_to_json(Exponent p) { return p.is_infinite() ? Json("inf") : Json(p.value()); }

/// "inf" or a decimal >= 1.
inline Exponent parse_exponent(std::string_view text) {
  if (text == "inf") return Exponent::infinity();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) throw InputError("invalid exponent");
  const Exponent p(v);
  if (!p.valid()) throw InputError("invalid exponent");
  return p;
}

/// Comma-separated decimals without whitespace.
inline Vector parse_csv(std::string_view text) {
  if (text.empty()) throw InputError("empty vector");
  Vector out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    const std::string_view tok = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    double v = 0.0;
    const char* b = tok.data();
    const char* e = tok.data() + tok.size();
    if (!tok.empty() && *b == '+') ++b;
    const auto [ptr, ec] = std::from_chars(b, e, v);
    if (tok.empty() || ec != std::errc() || ptr != e || !std::isfinite(v))
      throw InputError("malformed vector entry \"" + std::string(tok) + "\"");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline SpaceSpec space_from_json(const Json& j) {
  detail::reject_unknown_keys(j, {"dim", "cone", "norm", "p_class"}, "space");
  const Json& dj = detail::require_key(j, "dim", "space");
  if (!dj.is_number_integer() || dj.get<long long>() <= 0) throw InputError("dim: expected a positive integer");
  SpaceSpec s;
  s.dim = dj.get<std::size_t>();

  const Json& cj = detail::require_key(j, "cone", "space");
  const std::string ckind = detail::require_key(cj, "kind", "cone").is_string() ? cj["kind"].get<std::string>() : "";
  if (ckind == "nonneg") {
    detail::reject_unknown_keys(cj, {"kind"}, "cone");
    s.cone = ConeSpec::orthant(s.dim);
  } else if (ckind == "rays") {
    detail::reject_unknown_keys(cj, {"kind", "generators"}, "cone");
    const Json& gj = detail::require_key(cj, "generators", "cone");
    if (!gj.is_array()) throw InputError("cone.generators: expected an array of vectors");
    std::vector<Vector> gens;
    for (const auto& g : gj) gens.push_back(detail::vector_from_json(g, "cone.generators"));
    s.cone = ConeSpec::rays(std::move(gens));
  } else if (ckind == "psd") {
    detail::reject_unknown_keys(cj, {"kind"}, "cone");
    const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(s.dim))));
    if (d * d != s.dim) throw InputError("cone: psd cone needs dim = d*d");
    s.cone = ConeSpec::psd(d);
  } else {
    throw InputError("cone.kind: expected \"nonneg\", \"rays\" or \"psd\"");
  }

  const Json& nj = detail::require_key(j, "norm", "space");
  const std::string nkind = detail::require_key(nj, "kind", "norm").is_string() ? nj["kind"].get<std::string>() : "";
  if (nkind == "lp") {
    detail::reject_unknown_keys(nj, {"kind", "p", "weights"}, "norm");
    Vector w;
    if (nj.contains("weights")) w = detail::vector_from_json(nj["weights"], "norm.weights");
    s.norm = NormSpec::lp(exponent_from_json(detail::require_key(nj, "p", "norm"), "norm.p"), std::move(w));
  } else if (nkind == "sup") {
    detail::reject_unknown_keys(nj, {"kind"}, "norm");
    s.norm = NormSpec::sup();
  } else if (nkind == "order_unit") {
    detail::reject_unknown_keys(nj, {"kind", "unit"}, "norm");
    s.norm = NormSpec::order_unit(detail::vector_from_json(detail::require_key(nj, "unit", "norm"), "norm.unit"));
  } else if (nkind == "base") {
    detail::reject_unknown_keys(nj, {"kind", "phi"}, "norm");
    s.norm = NormSpec::base(detail::vector_from_json(detail::require_key(nj, "phi", "norm"), "norm.phi"));
  } else if (nkind == "spectral") {
    detail::reject_unknown_keys(nj, {"kind"}, "norm");
    s.norm = NormSpec::spectral();
  } else {
    throw InputError("norm.kind: expected \"lp\", \"sup\", \"order_unit\", \"base\" or \"spectral\"");
  }

  s.p_class = exponent_from_json(detail::require_key(j, "p_class", "space"), "p_class");
  validate_space(s);
  return s;
}

inline SpaceSpec parse_space_spec(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("space file is not valid JSON: ") + e.what());
  }
  return space_from_json(j);
}

inline Json space_to_json(const SpaceSpec& s) {
  Json j;
  j["dim"] = s.dim;
  switch (s.cone.kind) {
    case ConeKind::nonneg_orthant: j["cone"] = {{"kind", "nonneg"}}; break;
    case ConeKind::rays: j["cone"] = {{"kind", "rays"}, {"generators", s.cone.generators}}; break;
    case ConeKind::psd: j["cone"] = {{"kind", "psd"}}; break;
  }
  Json n{{"kind", norm_kind_name(s.norm.kind)}};
  switch (s.norm.kind) {
    case NormKind::lp:
      n["p"] = exponent_to_json(s.norm.p);
      if (!s.norm.weights.empty()) n["weights"] = s.norm.weights;
      break;
    case NormKind::order_unit: n["unit"] = s.norm.unit; break;
    case NormKind::base: n["phi"] = s.norm.phi; break;
    default: break;
  }
  j["norm"] = n;
  j["p_class"] = exponent_to_json(s.p_class);
  return j;
}

inline std::string serialize_space(const SpaceSpec& s) { return space_to_json(s).dump(); }

// ---------------------------------------------------------------------------
// Results

inline Json report_to_json(const SuiteReport& r) {
  Json cx = Json::array();
  for (const auto& c : r.counterexamples) {
    Json in = Json::object();
    for (const auto& [name, v] : c.input) in[name] = v;
    cx.push_back({{"input", in}, {"residual", c.residual}, {"location", c.location}});
  }
  return {{"suite", suite_name(r.suite)},
          {"space", space_to_json(r.space)},
          {"samples", r.samples},
          {"passes", r.passes},
          {"counterexamples", cx},
          {"seed", r.seed},
          {"tolerance", r.tolerance},
          {"elapsed_ms", r.elapsed_ms},
          {"version", kVersion},
          {"status", r.status == SuiteStatus::ok ? "ok" : "unsupported"},
          {"notes", r.notes},
          {"metrics", r.metrics}};
}

inline Json verdict_to_json(const OrthoVerdict& v) {
  return {{"verdict", verdict_name(v.verdict)},
          {"worst_residual", v.worst_residual},
          {"witness_k", v.witness_k},
          {"k_grid", v.k_grid}};
}

inline Json decomposition_to_json(const Decomposition& d) {
  Json j{{"status", decomp_status_name(d.status)},
         {"u1", d.u1},
         {"u2", d.u2},
         {"p", exponent_to_json(d.p)},
         {"norm_aggregate", d.norm_aggregate},
         {"iterations", d.iterations},
         {"note", d.note}};
  if (d.ortho_verdict) j["ortho_verdict"] = verdict_to_json(*d.ortho_verdict);
  return j;
}

}  // namespace porth
