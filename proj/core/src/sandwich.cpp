#include "mixbound/sandwich.hpp"

#include "mixbound/analysis.hpp"
#include "mixbound/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace mixbound {

namespace {

// Produced by calibrate_bands at 20000 replicates per size with master seed
// 20240607: lo = min(ratio) / 1.5, hi = max(ratio or upper_ratio) * 1.5.
const std::map<std::string, Band>& band_table() {
  static const std::map<std::string, Band> table = {
    {"hit:torus2", {0.65313735208155288, 1.2926183548307859}},
    {"hit:cycle", {0.64681565440917399, 1.228428582372874}},
    {"hit:complete", {0.62003709361929682, 1.228112590111794}},
    {"intersect:torus2", {0.55587340379559569, 1.3662743533493158}},
    {"intersect:hypercube", {0.55499052266991844, 1.5425515727826316}},
    {"plain:complete", {0.47766845154134252, 1.191933641935685}},
    {"plain:torus2", {0.49993927125260584, 1.1826290657359368}},
  };
  return table;
}

SandwichRow make_row(const ChainAnalysis& a, BRWEstimate est, double reference,
                     double upper_scale) {
  SandwichRow row;
  row.label = a.label();
  row.size = a.kernel.size();
  row.estimate = est;
  row.exact_reference = reference;
  row.ratio = est.mean / reference;
  row.upper_ratio = est.mean / upper_scale;
  row.censor_pass = est.censor_rate <= kMaxCensorRate;
  return row;
}

void finish(SandwichTable& table, const std::vector<ChainFamilySpec>& specs, bool upper_on_ratio) {
  std::vector<double> sizes, ratios;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    auto& row = table.rows[i];
    row.band = frozen_band(table.target, specs[i]);
    row.band_pass = false;
    if (row.band) {
      const double upper = upper_on_ratio ? row.ratio : row.upper_ratio;
      const bool lower_ok = !row.lower_applicable || row.ratio >= row.band->lo;
      row.band_pass = lower_ok && upper <= row.band->hi;
    }
    sizes.push_back(static_cast<double>(row.size));
    ratios.push_back(row.ratio);
  }
  table.slope = log_log_slope(sizes, ratios);
  table.trend_pass = std::abs(table.slope) <= kMaxTrendSlope;
}

BRWConfig config(const ChainAnalysis& a, int replicates, std::uint64_t master_seed,
                 double max_time) {
  auto cfg = BRWConfig::for_chain(a, replicates, master_seed);
  if (max_time > 0.0) cfg.caps.max_time = max_time;
  return cfg;
}

void check_specs(const std::vector<ChainFamilySpec>& specs) {
  if (specs.empty()) throw BadRange("sandwich: no family sizes given");
}

}  // namespace

std::string fixture_key(BRWTarget target, const ChainFamilySpec& spec) {
  std::string fam = family_name(spec.family);
  if (spec.family == Family::Torus) fam += std::to_string(spec.d);
  return target_name(target) + ":" + fam;
}

std::optional<Band> frozen_band(BRWTarget target, const ChainFamilySpec& spec) {
  const auto& table = band_table();
  auto it = table.find(fixture_key(target, spec));
  if (it == table.end()) return std::nullopt;
  return it->second;
}

bool SandwichTable::pass() const {
  return trend_pass && std::all_of(rows.begin(), rows.end(), [](const SandwichRow& r) {
           return r.band_pass && r.censor_pass;
         });
}

double log_log_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(xs[i]);
    my += std::log(ys[i]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(xs[i]) - mx;
    sxy += dx * (std::log(ys[i]) - my);
    sxx += dx * dx;
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

SandwichTable thm3_sandwich(const std::vector<ChainFamilySpec>& specs, int replicates,
                            std::uint64_t master_seed, double max_time) {
  check_specs(specs);
  SandwichTable table;
  table.target = BRWTarget::Hit;
  for (const auto& spec : specs) {
    const ChainAnalysis a(build_family(spec));
    Index x = 0;
    a.hitting.t_pi_to.maxCoeff(&x);
    const double t_rel = a.t_rel();
    const double J = t_rel * std::log1p(a.hitting.t_pi_to(x) / t_rel);
    const double t_tv = a.profile.mixing_time(ProfileKind::TV, 0.5);
    const auto cfg = config(a, replicates, master_seed, max_time);
    table.rows.push_back(make_row(a, simulate_hit(a.kernel, x, cfg), J, t_tv + J));
  }
  finish(table, specs, false);
  return table;
}

SandwichTable thm4_sandwich(const std::vector<ChainFamilySpec>& specs, int replicates,
                            std::uint64_t master_seed, double max_time) {
  check_specs(specs);
  SandwichTable table;
  table.target = BRWTarget::Intersection;
  for (const auto& spec : specs) {
    const ChainAnalysis a(build_family(spec));
    const double t_rel = a.t_rel();
    double rho_min = INFINITY, rho_max = 0.0;
    for (Index x = 0; x < a.kernel.size(); ++x) {
      const double rho = rho_x_ell(a.decomp, x, 2);
      rho_min = std::min(rho_min, rho);
      rho_max = std::max(rho_max, rho);
    }
    const double reference = t_rel * std::log1p(std::sqrt(q_ell(a.decomp, 2)) / t_rel);
    const double upper = t_rel * std::log1p(std::sqrt(rho_max) / t_rel);
    const auto cfg = config(a, replicates, master_seed, max_time);
    auto row = make_row(a, simulate_intersection(a.kernel, cfg), reference, upper);
    row.lower_applicable = rho_min >= kLowerBoundC1 * t_rel * t_rel;
    table.rows.push_back(row);
  }
  finish(table, specs, true);
  return table;
}

SandwichTable plain_sandwich(const std::vector<ChainFamilySpec>& specs, int replicates,
                             std::uint64_t master_seed, double max_time) {
  check_specs(specs);
  SandwichTable table;
  table.target = BRWTarget::Plain;
  for (const auto& spec : specs) {
    const ChainAnalysis a(build_family(spec));
    const double reference = std::sqrt(q_ell(a.decomp, 2));
    const auto cfg = config(a, replicates, master_seed, max_time);
    table.rows.push_back(make_row(a, plain_intersection(a.kernel, cfg), reference, reference));
  }
  finish(table, specs, true);
  return table;
}

SandwichTable run_sandwich(BRWTarget target, const std::vector<ChainFamilySpec>& specs,
                           int replicates, std::uint64_t master_seed, double max_time) {
  switch (target) {
    case BRWTarget::Hit: return thm3_sandwich(specs, replicates, master_seed, max_time);
    case BRWTarget::Intersection: return thm4_sandwich(specs, replicates, master_seed, max_time);
    case BRWTarget::Plain: return plain_sandwich(specs, replicates, master_seed, max_time);
  }
  throw BadRange("run_sandwich: unknown target");
}

}  // namespace mixbound
