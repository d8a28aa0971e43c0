#pragma once

// Command-line front end. run_cli returns the process exit code:
// 0 when everything requested passed, 1 when a counterexample (or a failed
// certificate) was found, 2 on input errors.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "porth/decomp.hpp"
#include "porth/harness.hpp"
#include "porth/io.hpp"
#include "porth/ortho.hpp"
#include "porth/support.hpp"

namespace porth {

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void emit(const Json& j, const std::string& out_file, std::ostream& out) {
  if (out_file.empty()) {
    out << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(out_file);
  if (!f) throw InputError("cannot write " + out_file);
  f << j.dump(2) << "\n";
}

struct VerifyArgs {
  std::string suite;
  std::string space_file;
  std::string out_file;
  std::size_t samples = 200;
  double tol = kDefaultSuiteTol;
  std::uint64_t seed = 0;
  std::size_t n = kExample46Grid;
};

inline int run_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err, const std::string& usage) {
  RunOptions opt{a.samples, a.tol, a.seed, a.n};
  std::vector<std::pair<std::string, SuiteReport>> reports;
  bool requested_unsupported = false;
  std::optional<SpaceSpec> space;
  if (!a.space_file.empty()) space = parse_space_spec(read_file(a.space_file));

  if (a.suite == "all") {
    if (space) {
      for (auto& r : run_all_on(*space, opt)) reports.emplace_back(a.space_file, std::move(r));
    } else {
      for (auto& e : run_all(opt)) reports.emplace_back(e.family, std::move(e.report));
    }
  } else {
    const auto id = parse_suite_id(a.suite);
    if (!id) {
      err << "unknown suite \"" << a.suite << "\"\n" << usage;
      return 2;
    }
    if (*id == SuiteId::ex46_nonuniqueness) {
      reports.emplace_back("grid", run_suite(*id, sup_space(3), opt));
    } else if (space) {
      auto r = run_suite(*id, *space, opt);
      requested_unsupported = r.status == SuiteStatus::unsupported;
      reports.emplace_back(a.space_file, std::move(r));
    } else {
      for (const auto& fam : default_families())
        if (suite_supports(*id, fam.space)) reports.emplace_back(fam.name, run_suite(*id, fam.space, opt));
    }
  }

  Json list = Json::array();
  std::size_t failing = 0;
  for (const auto& [family, r] : reports) {
    Json j = report_to_json(r);
    j["family"] = family;
    list.push_back(std::move(j));
    if (!r.counterexamples.empty()) ++failing;
  }
  emit({{"version", kVersion}, {"reports", list}}, a.out_file, out);
  if (!a.out_file.empty())
    out << reports.size() << " report(s), " << failing << " with counterexamples -> " << a.out_file << "\n";
  if (requested_unsupported) {
    err << "suite " << a.suite << " does not apply to this space\n";
    return 2;
  }
  return failing == 0 ? 0 : 1;
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Orthogonality and decomposition checks in ordered normed spaces", "porth"};
  app.require_subcommand(1);

  detail::VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run a property suite (or all) and print a JSON report");
  verify->add_option("suite", va.suite, "suite id or 'all'")->required();
  verify->add_option("--space", va.space_file, "space specification file (default: the built-in families)");
  verify->add_option("--samples", va.samples, "instances per suite")->check(CLI::PositiveNumber);
  verify->add_option("--tol", va.tol, "relative tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--seed", va.seed, "random seed");
  verify->add_option("--out", va.out_file, "write the report here instead of stdout");
  verify->add_option("--n", va.n, "grid size for the cos x example")->check(CLI::Range(3, 1 << 24));

  std::string space_file, x_csv, y_csv, v_csv, p_text, out_file;
  double eps = 1e-6;
  double otol = 1e-9;
  bool positive = false;
  std::size_t n = kExample46Grid;

  auto* ortho = app.add_subcommand("ortho", "Decide x p-orthogonal to y on the k grid");
  ortho->add_option("--space", space_file)->required();
  ortho->add_option("--x", x_csv)->required();
  ortho->add_option("--y", y_csv)->required();
  ortho->add_option("--p", p_text, "exponent or 'inf'")->required();
  ortho->add_option("--tol", otol, "relative tolerance")->check(CLI::PositiveNumber);

  auto* decompose = app.add_subcommand("decompose", "Split v into positive parts of near-minimal aggregate norm");
  decompose->add_option("--space", space_file)->required();
  decompose->add_option("--v", v_csv)->required();
  decompose->add_option("--p", p_text, "exponent or 'inf' (default: the space's class)");
  decompose->add_option("--eps", eps, "slack over |v|")->check(CLI::PositiveNumber);

  auto* support = app.add_subcommand("support", "A norm-one functional attaining |v|");
  support->add_option("--space", space_file)->required();
  support->add_option("--v", v_csv)->required();
  support->add_flag("--positive", positive, "require a positive functional");

  auto* crust = app.add_subcommand("crust", "Crust of a positive u in an order-unit space");
  crust->add_option("--space", space_file)->required();
  crust->add_option("--u", v_csv)->required();

  auto* example = app.add_subcommand("example46", "The two decompositions of cos x on a grid");
  example->add_option("--n", n, "grid size")->check(CLI::Range(3, 1 << 24));
  example->add_option("--out", out_file);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return 0;
    err << app.help();
    return 2;
  }

  try {
    if (verify->parsed()) return detail::run_verify(va, out, err, app.help());

    if (example->parsed()) {
      const auto ex = build_example_46(n);
      RunOptions opt;
      opt.example_grid = n;
      const auto r = run_suite(SuiteId::ex46_nonuniqueness, sup_space(3), opt);
      const Json j{{"n", n},          {"x", ex.x},   {"f", ex.f},   {"fplus", ex.fplus},
                   {"fminus", ex.fminus}, {"g1", ex.g1}, {"g2", ex.g2}, {"report", report_to_json(r)}};
      detail::emit(j, out_file, out);
      return r.passed() ? 0 : 1;
    }

    const SpaceSpec s = parse_space_spec(detail::read_file(space_file));

    if (ortho->parsed()) {
      const Vector x = parse_csv(x_csv);
      const Vector y = parse_csv(y_csv);
      const Exponent p = parse_exponent(p_text);
      OrthoConfig cfg;
      cfg.tol = otol;
      const auto v = p_orthogonal_numeric(s, x, y, p, cfg);
      Json j = verdict_to_json(v);
      if (is_coordinate_family(s) && coordinate_view(s)->p == p)
        j["exact"] = detail::coordinate_orthogonal_exact(s, x, y);
      out << j.dump(2) << "\n";
      return v.verdict == Verdict::inconclusive ? 1 : 0;
    }

    if (decompose->parsed()) {
      const Vector v = parse_csv(v_csv);
      const Exponent p = p_text.empty() ? s.p_class : parse_exponent(p_text);
      DecomposeOptions opt;
      opt.epsilon = eps;
      const auto d = opt_decompose(s, v, p, opt);
      Json j = decomposition_to_json(d);
      j["norm_v"] = norm(s, v);
      out << j.dump(2) << "\n";
      return d.ok() ? 0 : 1;
    }

    if (support->parsed()) {
      const Vector v = parse_csv(v_csv);
      const auto r = positive ? positive_support(s, v) : support_functional(s, v);
      const Json j{{"functional", r.functional},
                   {"attained_value", r.attained_value},
                   {"is_positive", r.is_positive},
                   {"dual_norm", dual_norm(s, r.functional)},
                   {"norm_v", norm(s, v)}};
      out << j.dump(2) << "\n";
      return 0;
    }

    if (crust->parsed()) {
      const Vector u = parse_csv(v_csv);
      const auto probe = crust_probe(s, u);
      Json j{{"crust", nullptr}, {"partner", axpy(*order_unit_of(s), -1.0 / norm(s, u), u)}, {"partner_orthogonal", false}};
      if (probe) {
        j["crust"] = {{"functional", probe->crust.functional},
                      {"value_at_u", probe->crust.attained_value},
                      {"dual_norm", dual_norm(s, probe->crust.functional)}};
        j["partner_orthogonal"] = probe->partner_orthogonal;
      }
      out << j.dump(2) << "\n";
      return 0;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace porth
