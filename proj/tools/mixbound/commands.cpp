#include "commands.hpp"

#include "chain_options.hpp"
#include "manifest.hpp"
#include "mixbound/analysis.hpp"
#include "mixbound/bounds.hpp"
#include "mixbound/brw.hpp"
#include "mixbound/chain_io.hpp"
#include "mixbound/errors.hpp"
#include "mixbound/report.hpp"
#include "mixbound/sandwich.hpp"
#include "mixbound/version.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

namespace mixbound::cli {

namespace {

// Writes the manifest and data to --out, or to `out` when the path is "-".
void emit(const std::string& path, std::ostream& out, const RunManifest& manifest,
          const std::string& data) {
  if (path.empty() || path == "-") {
    write_manifest(out, manifest);
    out << data;
    out.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw BadRange("cannot open output file " + path);
  write_manifest(file, manifest);
  file << data;
  if (!file) throw BadRange("failed writing " + path);
}

std::string bool_cell(bool v) { return v ? "true" : "false"; }

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
  ChainOptions chain;
  std::string out_path;
  bool co_trend = false;
};

int analyze(const AnalyzeArgs& args, const std::vector<std::string>& argv, std::ostream& out) {
  const auto specs = args.chain.resolve();
  std::ostringstream data;
  if (args.co_trend) {
    const auto table = corollary11_diag(specs);
    data << "kernel,t_rel,t_hit,t_mix_inf,t_target,t_ave_mix,mix_over_hit,rel_over_hit\n";
    for (const auto& r : table.rows) {
      data << csv_field(r.label);
      for (double v : {r.t_rel, r.t_hit, r.t_inf, r.t_target, r.t_ave, r.mix_over_hit,
                       r.rel_over_hit}) {
        data << ',' << format_number(v);
      }
      data << '\n';
    }
    data << "# co_trend_proxy: mix_ratio_shrinks=" << bool_cell(table.mix_ratio_shrinks)
         << " rel_ratio_shrinks=" << bool_cell(table.rel_ratio_shrinks)
         << " co_trend=" << bool_cell(table.co_trend)
         << " (finite-size proxy: largest-size ratio below half the smallest-size ratio)\n";
  } else {
    write_summary_header(data);
    for (const auto& spec : specs) write_summary_row(data, summarize(ChainAnalysis(build_family(spec))));
  }
  emit(args.out_path, out, RunManifest::make(argv, specs, std::nullopt), data.str());
  return kOk;
}

// ----------------------------------------------------------------- verify

struct VerifyArgs {
  ChainOptions chain;
  std::vector<int> ell{1};
  std::vector<double> eps{0.5};
  std::string out_path;
  double rhs_scale = 1.0;
};

int verify(const VerifyArgs& args, const std::vector<std::string>& argv, std::ostream& out,
           std::ostream& err) {
  const auto specs = args.chain.resolve();
  std::vector<BoundReport> all;
  for (const auto& spec : specs) {
    const ChainAnalysis a(build_family(spec));
    auto reports = full_sweep(a, args.eps, args.ell);
    if (args.rhs_scale != 1.0) {
      for (auto& r : reports) {
        r.rhs *= args.rhs_scale;
        r.evaluate();
      }
    }
    all.insert(all.end(), reports.begin(), reports.end());
  }
  std::ostringstream data;
  write_reports_csv(data, all);
  emit(args.out_path, out, RunManifest::make(argv, specs, std::nullopt), data.str());
  std::size_t failed = 0;
  for (const auto& r : all) failed += r.pass ? 0 : 1;
  if (failed > 0) {
    err << "verify: " << failed << " of " << all.size() << " bounds failed\n";
    return kCheckFailed;
  }
  return kOk;
}

// ---------------------------------------------------------------- profile

struct ProfileArgs {
  ChainOptions chain;
  double tmax = 0.0;
  int points = 200;
  std::string out_path;
};

int profile(const ProfileArgs& args, const std::vector<std::string>& argv, std::ostream& out) {
  if (args.points < 2) throw BadRange("--points must be at least 2");
  if (args.tmax < 0.0) throw BadRange("--tmax must be nonnegative");
  const auto specs = args.chain.resolve();
  std::ostringstream data;
  data << "kernel,t,d_inf,d2_max,tv_max,ave_l2\n";
  for (const auto& spec : specs) {
    const ChainAnalysis a(build_family(spec));
    const MixingProfile& p = a.profile;
    const double tmax = args.tmax > 0.0 ? args.tmax : p.mixing_time(ProfileKind::Linf, 1e-2);
    const std::string label = csv_field(a.label());
    for (int i = 0; i < args.points; ++i) {
      const double t = tmax * i / (args.points - 1);
      data << label << ',' << format_number(t) << ',' << format_number(p.d_inf(t)) << ','
           << format_number(p.d2_max(t)) << ',' << format_number(0.5 * p.d1_max(t)) << ','
           << format_number(p.ave_l2(t)) << '\n';
    }
  }
  emit(args.out_path, out, RunManifest::make(argv, specs, std::nullopt), data.str());
  return kOk;
}

// -------------------------------------------------------------------- brw

struct BrwArgs {
  ChainOptions chain;
  std::string target = "hit";
  int replicates = 2000;
  std::uint64_t seed = 7;
  bool sandwich = false;
  double max_time = 0.0;
  std::string out_path;
};

BRWTarget parse_target(const std::string& s) {
  if (s == "hit") return BRWTarget::Hit;
  if (s == "intersect") return BRWTarget::Intersection;
  if (s == "plain") return BRWTarget::Plain;
  throw BadRange("--target must be hit, intersect or plain");
}

int brw(const BrwArgs& args, const std::vector<std::string>& argv, std::ostream& out,
        std::ostream& err) {
  const BRWTarget target = parse_target(args.target);
  if (args.max_time < 0.0) throw BadRange("--max-time must be nonnegative");
  const auto specs = args.chain.resolve();
  if (args.sandwich && specs.size() < 3) throw BadRange("--sandwich needs at least three sizes");
  const SandwichTable table = run_sandwich(target, specs, args.replicates, args.seed, args.max_time);

  std::ostringstream data;
  data << "kernel,target,size,estimate,stderr,exact_reference,ratio,upper_ratio,censor_rate,"
          "replicates_used,band_lo,band_hi,lower_applicable,band_pass,censor_pass\n";
  for (const auto& r : table.rows) {
    data << csv_field(r.label) << ',' << target_name(target) << ',' << r.size << ','
         << format_number(r.estimate.mean) << ',' << format_number(r.estimate.std_error) << ','
         << format_number(r.exact_reference) << ',' << format_number(r.ratio) << ','
         << format_number(r.upper_ratio) << ',' << format_number(r.estimate.censor_rate) << ','
         << r.estimate.replicates_used << ',';
    if (r.band) data << format_number(r.band->lo) << ',' << format_number(r.band->hi);
    else data << ',';
    data << ',' << bool_cell(r.lower_applicable) << ',' << bool_cell(r.band_pass) << ','
         << bool_cell(r.censor_pass) << '\n';
  }
  data << "# trend_slope: " << format_number(table.slope)
       << " trend_pass=" << bool_cell(table.trend_pass) << '\n';
  emit(args.out_path, out, RunManifest::make(argv, specs, args.seed), data.str());
  if (args.sandwich && !table.pass()) {
    err << "brw: sandwich check failed\n";
    return kCheckFailed;
  }
  return kOk;
}

// --------------------------------------------------------------- optcheck

struct OptArgs {
  OptProblem problem;
  int random = 0;
  std::uint64_t seed = 1;
  std::string out_path;
};

int optcheck(const OptArgs& args, const std::vector<std::string>& argv, std::ostream& out,
             std::ostream& err) {
  std::vector<OptProblem> problems;
  if (args.random > 0) {
    // Random instances inside the regime t >= ell / (2 lambda2).
    Rng rng(args.seed);
    for (int i = 0; i < args.random; ++i) {
      OptProblem p;
      p.lambda2 = 1e-3 + 2.0 * rng.uniform();
      p.lambdan = p.lambda2 * (1.0 + 20.0 * rng.uniform()) + 1e-6;
      p.ell = 1 + static_cast<int>(6.0 * rng.uniform());
      p.t = p.ell / (2.0 * p.lambda2) * (1.0 + 10.0 * rng.uniform());
      p.budget = 1e-2 + 1e3 * rng.uniform();
      problems.push_back(p);
    }
  } else {
    problems.push_back(args.problem);
  }
  std::ostringstream data;
  data << "t,ell,budget,lambda2,lambdan,numeric_max,claimed,argmax_beta,extremal_regime,"
          "certified\n";
  int failed = 0;
  for (const auto& p : problems) {
    const OptResult r = opt_verify(p);
    failed += r.certified ? 0 : 1;
    data << format_number(p.t) << ',' << p.ell << ',' << format_number(p.budget) << ','
         << format_number(p.lambda2) << ',' << format_number(p.lambdan) << ','
         << format_number(r.numeric_max) << ',' << format_number(r.claimed) << ','
         << format_number(r.argmax_beta) << ',' << bool_cell(r.extremal_regime) << ','
         << bool_cell(r.certified) << '\n';
  }
  const std::optional<std::uint64_t> seed =
      args.random > 0 ? std::optional<std::uint64_t>(args.seed) : std::nullopt;
  emit(args.out_path, out, RunManifest::make(argv, {}, seed), data.str());
  if (failed > 0) {
    err << "optcheck: " << failed << " instances not certified\n";
    return kCheckFailed;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mixing, hitting and branching-walk bounds for reversible Markov chains",
               "mixbound"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  auto* analyze_cmd = app.add_subcommand("analyze", "Exact summary quantities per chain");
  analyze_args.chain.add_to(analyze_cmd);
  analyze_cmd->add_option("--out", analyze_args.out_path, "Output CSV (default stdout)");
  analyze_cmd->add_flag("--co-trend", analyze_args.co_trend,
                        "Emit the ratio table for a size sequence instead");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Evaluate every bound; exit 1 if any fails");
  verify_args.chain.add_to(verify_cmd);
  verify_cmd->add_option("--ell", verify_args.ell, "Comma-separated ell values")
      ->delimiter(',')
      ->capture_default_str();
  verify_cmd->add_option("--eps", verify_args.eps, "Comma-separated eps values")
      ->delimiter(',')
      ->capture_default_str();
  verify_cmd->add_option("--out", verify_args.out_path, "Output CSV (default stdout)");
  // Test hook: scales every right-hand side before the pass/fail decision.
  verify_cmd->add_option("--rhs-scale", verify_args.rhs_scale)->group("");

  ProfileArgs profile_args;
  auto* profile_cmd = app.add_subcommand("profile", "Distance-to-stationarity profiles");
  profile_args.chain.add_to(profile_cmd);
  profile_cmd->add_option("--tmax", profile_args.tmax,
                          "Last time on the grid (default: L-infinity mixing time at 0.01)");
  profile_cmd->add_option("--points", profile_args.points, "Grid points")->capture_default_str();
  profile_cmd->add_option("--out", profile_args.out_path, "Output CSV (default stdout)");

  BrwArgs brw_args;
  auto* brw_cmd = app.add_subcommand("brw", "Monte-Carlo branching random walk estimates");
  brw_args.chain.add_to(brw_cmd);
  brw_cmd->add_option("--target", brw_args.target, "hit | intersect | plain")
      ->capture_default_str();
  brw_cmd->add_option("--replicates", brw_args.replicates, "Replicates per size")
      ->capture_default_str();
  brw_cmd->add_option("--seed", brw_args.seed, "Master seed")->capture_default_str();
  brw_cmd->add_flag("--sandwich", brw_args.sandwich,
                    "Check frozen bands and the size trend; exit 1 on failure");
  brw_cmd->add_option("--max-time", brw_args.max_time,
                      "Time cap per replicate (default: 50 t_rel log(1 + t_hit / t_rel))");
  brw_cmd->add_option("--out", brw_args.out_path, "Output CSV (default stdout)");

  OptArgs opt_args;
  auto* opt_cmd = app.add_subcommand("optcheck", "Certify the spectral optimization maximum");
  opt_cmd->add_option("--t", opt_args.problem.t)->capture_default_str();
  opt_cmd->add_option("--ell", opt_args.problem.ell)->capture_default_str();
  opt_cmd->add_option("--budget", opt_args.problem.budget)->capture_default_str();
  opt_cmd->add_option("--lambda2", opt_args.problem.lambda2)->capture_default_str();
  opt_cmd->add_option("--lambdan", opt_args.problem.lambdan)->capture_default_str();
  opt_cmd->add_option("--random", opt_args.random, "Check this many random instances instead");
  opt_cmd->add_option("--seed", opt_args.seed, "Seed for --random")->capture_default_str();
  opt_cmd->add_option("--out", opt_args.out_path, "Output CSV (default stdout)");

  std::vector<std::string> rest(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << version() << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "mixbound: " << e.what() << '\n';
    return kInvalidInput;
  }

  try {
    if (*analyze_cmd) return analyze(analyze_args, argv, out);
    if (*verify_cmd) return verify(verify_args, argv, out, err);
    if (*profile_cmd) return profile(profile_args, argv, out);
    if (*brw_cmd) return brw(brw_args, argv, out, err);
    if (*opt_cmd) return optcheck(opt_args, argv, out, err);
  } catch (const InvalidSpec& e) {
    err << "mixbound: invalid chain spec: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const BadEps& e) {
    err << "mixbound: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const BadRange& e) {
    err << "mixbound: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const NotReversible& e) {
    err << "mixbound: chain is not reversible: " << e.what() << '\n';
    return kBadChain;
  } catch (const NotIrreducible& e) {
    err << "mixbound: chain is not irreducible: " << e.what() << '\n';
    return kBadChain;
  } catch (const AllCensored& e) {
    err << "mixbound: " << e.what() << '\n';
    return kAllCensored;
  } catch (const std::exception& e) {
    err << "mixbound: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kInvalidInput;
}

}  // namespace mixbound::cli
