#pragma once

// The `geoecc` command line. run() is separate from main() so tests can
// drive it with in-memory streams.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "geoecc/geoecc.hpp"

namespace geoecc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Thrown for flag combinations CLI11 cannot express; maps to exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CodeFlags {
  std::string family;
  std::optional<int> n;
  std::string matrix_path;
};

inline void add_code_flags(CLI::App& cmd, CodeFlags& flags, bool allow_matrix) {
  auto* family = cmd.add_option("--family", flags.family, "code family")
                     ->check(CLI::IsMember({"dual-polygonal", "dual-icosahedral", "dual-dodecahedral"}));
  cmd.add_option("--n", flags.n, "length of the dual polygonal code");
  if (allow_matrix) {
    auto* matrix = cmd.add_option("--matrix", flags.matrix_path, "generator matrix JSON file");
    family->excludes(matrix);
  } else {
    family->required();
  }
}

inline FamilyTag resolve_family(const CodeFlags& flags) {
  const FamilyKind kind = parse_family(flags.family);
  switch (kind) {
    case FamilyKind::DualPolygonal:
      if (!flags.n) throw UsageError("--n is required for dual-polygonal");
      return FamilyTag::dual_polygonal(*flags.n);
    case FamilyKind::DualIcosahedral:
      if (flags.n && *flags.n != 6) throw UsageError("dual-icosahedral has n = 6");
      return FamilyTag::dual_icosahedral();
    case FamilyKind::DualDodecahedral:
      if (flags.n && *flags.n != 10) throw UsageError("dual-dodecahedral has n = 10");
      return FamilyTag::dual_dodecahedral();
    case FamilyKind::Custom: break;
  }
  throw UsageError("unsupported family");
}

inline GeneratorMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidParameter, "cannot open matrix file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    fail(ErrorKind::InvalidParameter, std::string("malformed matrix JSON: ") + e.what());
  }
  return matrix_from_json(j);
}

inline GeneratorMatrix resolve_matrix(const CodeFlags& flags) {
  if (!flags.matrix_path.empty()) {
    if (flags.n) throw UsageError("--n cannot be combined with --matrix");
    return load_matrix(flags.matrix_path);
  }
  if (flags.family.empty()) throw UsageError("one of --family or --matrix is required");
  return builtin_matrix(resolve_family(flags));
}

inline MHeightProfile compute_profile(const GeneratorMatrix& g, const std::string& method) {
  if (method == "closed") return closed_profile(g.family());
  return exact_profile(g);
}

inline ExtendedHeight compute_height(const GeneratorMatrix& g, int m, const std::string& method,
                                     std::optional<int> resolution) {
  require(m >= 1 && static_cast<std::size_t>(m) < g.n(), "m must lie in [1, n-1]");
  const auto mm = static_cast<std::size_t>(m);
  if (method == "lp") return exact_mheight(g, mm);
  if (method == "search") {
    if (!resolution) return domain_search(g, mm);
    return domain_search(g, mm, default_domain(g.family()), *resolution);
  }
  const FamilyTag f = g.family();
  switch (f.kind) {
    case FamilyKind::DualPolygonal: return polygonal_height(f.n, m);
    case FamilyKind::DualIcosahedral: return icosahedral_height(m);
    case FamilyKind::DualDodecahedral: return dodecahedral_height(m);
    case FamilyKind::Custom: break;
  }
  fail(ErrorKind::UnsupportedFamily, "closed forms exist only for the built-in families");
}

inline Json code_header(const GeneratorMatrix& g) {
  Json j;
  j["family"] = family_json(g.family());
  j["n"] = g.n();
  return j;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geometric analog error-correcting codes: construction, m-heights and capability", "geoecc"};
  app.require_subcommand(1);

  CodeFlags gen_flags;
  auto* gen = app.add_subcommand("gen", "print a generator matrix as JSON");
  add_code_flags(*gen, gen_flags, false);

  CodeFlags height_flags;
  int height_m = 0;
  std::string height_method = "lp";
  std::optional<int> resolution;
  auto* height = app.add_subcommand("height", "compute one m-height");
  add_code_flags(*height, height_flags, true);
  height->add_option("--m", height_m, "m")->required();
  height->add_option("--method", height_method, "closed, lp or search")
      ->check(CLI::IsMember({"closed", "lp", "search"}));
  height->add_option("--resolution", resolution, "search grid resolution");

  CodeFlags profile_flags;
  std::string profile_method = "lp";
  std::string format = "json";
  auto* profile = app.add_subcommand("profile", "compute the full m-height profile");
  add_code_flags(*profile, profile_flags, true);
  profile->add_option("--method", profile_method, "closed or lp")->check(CLI::IsMember({"closed", "lp"}));
  profile->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  std::string suite;
  std::size_t samples = kDefaultSuiteSamples;
  std::uint64_t seed = 0;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite, "suite name")
      ->required()
      ->check(CLI::IsMember(std::vector<std::string>(suite_names().begin(), suite_names().end())));
  verify->add_option("--samples", samples, "random samples per check");
  verify->add_option("--seed", seed, "random seed");

  CodeFlags cap_flags;
  std::string cap_method = "closed";
  std::optional<double> ratio;
  std::optional<int> tau, sigma;
  std::optional<double> delta, Delta;
  auto* capability = app.add_subcommand("capability", "outlier-handling capability of a code");
  add_code_flags(*capability, cap_flags, true);
  capability->add_option("--method", cap_method, "profile method: closed or lp")
      ->check(CLI::IsMember({"closed", "lp"}));
  auto* ratio_opt = capability->add_option("--ratio", ratio, "Delta / delta");
  auto* tau_opt = capability->add_option("--tau", tau, "locatable outliers");
  capability->add_option("--sigma", sigma, "extra detectable outliers");
  capability->add_option("--delta", delta, "noise bound");
  capability->add_option("--Delta", Delta, "outlier threshold");
  ratio_opt->excludes(tau_opt);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*gen) {
      out << dump(to_json(builtin_matrix(resolve_family(gen_flags))));
    } else if (*height) {
      const auto g = resolve_matrix(height_flags);
      const auto h = compute_height(g, height_m, height_method, resolution);
      Json j = code_header(g);
      j["method"] = height_method;
      const Json body = height_json(static_cast<std::size_t>(height_m), h);
      for (const auto& [key, value] : body.items()) j[key] = value;
      out << dump(j);
    } else if (*profile) {
      const auto p = compute_profile(resolve_matrix(profile_flags), profile_method);
      out << (format == "csv" ? profile_csv(p) : dump(to_json(p)));
    } else if (*verify) {
      const auto report = run_suite(suite, samples, seed);
      out << dump(to_json(report));
      return report.passed() ? kExitOk : kExitDomain;
    } else if (*capability) {
      const bool spec_mode = tau || sigma || delta || Delta;
      if (!ratio && !spec_mode) throw UsageError("capability needs --ratio or --tau/--sigma/--delta/--Delta");
      if (ratio && spec_mode) throw UsageError("--ratio cannot be combined with --tau/--sigma/--delta/--Delta");
      const auto p = compute_profile(resolve_matrix(cap_flags), cap_method);
      if (ratio) {
        out << dump(capability_json(*ratio, feasible_pairs(p, *ratio)));
      } else {
        if (!tau || !sigma || !delta || !Delta) throw UsageError("--tau, --sigma, --delta and --Delta go together");
        const CapabilitySpec spec{*tau, *sigma, *delta, *Delta};
        const bool feasible = check_spec(p, spec);
        const auto m = static_cast<std::size_t>(2 * spec.tau + spec.sigma);
        const auto& h = p.at(m);
        Json j;
        j["tau"] = spec.tau;
        j["sigma"] = spec.sigma;
        j["delta"] = spec.delta;
        j["Delta"] = spec.Delta;
        j["ratio"] = spec.Delta / spec.delta;
        j["m"] = m;
        j["height"] = height_value(h.value);
        j["required_ratio"] = h.is_infinite() ? Json("inf") : Json(required_ratio(h));
        j["feasible"] = feasible;
        out << dump(j);
      }
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const Error& e) {
    out << dump(error_json(e.kind(), e.what()));
    return kExitDomain;
  }
  return kExitOk;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace geoecc::cli
