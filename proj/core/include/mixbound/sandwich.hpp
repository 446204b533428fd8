#pragma once

#include "mixbound/brw.hpp"
#include "mixbound/chain.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mixbound {

/// Frozen constant-factor band for one fixture.
struct Band {
  double lo = 0.0;
  double hi = 0.0;
};

/// Bands committed from calibration runs (see tools/calibrate_bands), keyed by
/// target and family: "hit:torus2", "intersect:hypercube", "plain:complete", ...
std::optional<Band> frozen_band(BRWTarget target, const ChainFamilySpec& spec);
std::string fixture_key(BRWTarget target, const ChainFamilySpec& spec);

/// Threshold constant in the lower bound for intersections: the lower band
/// edge applies only when rho_min >= kLowerBoundC1 t_rel^2.
inline constexpr double kLowerBoundC1 = 1.0;

/// Highest acceptable censoring rate per size.
inline constexpr double kMaxCensorRate = 0.01;

/// Largest acceptable |slope| of log(ratio) against log(state count).
inline constexpr double kMaxTrendSlope = 0.25;

struct SandwichRow {
  std::string label;
  Index size = 0;               ///< state count
  BRWEstimate estimate;
  double exact_reference = 0.0; ///< exact scale the estimate is compared with
  double ratio = 0.0;           ///< estimate / exact_reference
  double upper_ratio = 0.0;     ///< estimate / (upper-bound scale)
  bool lower_applicable = true; ///< false when the lower edge is skipped
  std::optional<Band> band;
  bool band_pass = false;       ///< false when no band is frozen for the fixture
  bool censor_pass = true;
};

struct SandwichTable {
  BRWTarget target = BRWTarget::Hit;
  std::vector<SandwichRow> rows;
  double slope = 0.0;
  bool trend_pass = true;
  /// Every row within its band and censoring limit, and the trend check.
  bool pass() const;
};

/// Hitting time of x = argmax t_pi->x.
///   exact_reference = J_x = t_rel log(1 + t_pi->x / t_rel)
///   upper_ratio     = estimate / (t_TV + J_x)
/// Band: ratio >= lo and upper_ratio <= hi.
SandwichTable thm3_sandwich(const std::vector<ChainFamilySpec>& specs, int replicates,
                            std::uint64_t master_seed, double max_time = 0.0);

/// Intersection time of two branching walks.
///   exact_reference = t_rel log(1 + sqrt(Q_2) / t_rel)
///   upper_ratio     = estimate / (t_rel log(1 + sqrt(rho_max) / t_rel))
/// Band: ratio in [lo, hi], lower edge skipped when rho_min < C1 t_rel^2.
SandwichTable thm4_sandwich(const std::vector<ChainFamilySpec>& specs, int replicates,
                            std::uint64_t master_seed, double max_time = 0.0);

/// Plain-walk intersection time against exact_reference = sqrt(Q_2).
/// Band: ratio in [lo, hi]; upper_ratio equals ratio.
SandwichTable plain_sandwich(const std::vector<ChainFamilySpec>& specs, int replicates,
                             std::uint64_t master_seed, double max_time = 0.0);

/// max_time > 0 replaces the default time cap of BRWConfig::for_chain.
SandwichTable run_sandwich(BRWTarget target, const std::vector<ChainFamilySpec>& specs,
                           int replicates, std::uint64_t master_seed, double max_time = 0.0);

/// Least-squares slope of log(ys) against log(xs).
double log_log_slope(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace mixbound
