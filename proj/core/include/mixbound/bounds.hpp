#pragma once

#include "mixbound/analysis.hpp"
#include "mixbound/report.hpp"

#include <string>
#include <vector>

namespace mixbound {

// Each *_report function evaluates exact left-hand sides against the stated
// upper bounds. Reports quantified over states keep only the state with the
// smallest relative slack, recorded in BoundReport::x. All logs are natural.

/// Hitting-time mixing bounds:
///   thm1.linf   t_inf(eps)  <= t_rel max{1, log(max_x t_pi->x / (eps t_rel))}
///   thm1.l2x    t2x(eps)    <= t_rel/2 max{1, log(t_pi->x / (eps^2 t_rel))}
///   thm1.ave    t_ave(1/2)  <= t_rel/2 log(4 t_target / t_rel)
std::vector<BoundReport> thm1_report(const ChainAnalysis& a, double eps);

/// The same three statements with Q_ell and sigma_{x,ell} in place of the
/// hitting times and max{., ell} in place of max{1, .}:
///   thm2.ave    t_ave(eps)  <= t_rel/2 max{log(eps^-2 Q_ell / t_rel^ell), ell}
///   thm2.l2x    t2x(eps)    <= t_rel/2 max{log(eps^-2 sigma_{x,ell} / t_rel^ell), ell}
///   thm2.linf   t_inf(eps)  <= t_rel max{log(eps^-1 sigma_ell / t_rel^ell), ell}
/// With ell = 1 the right-hand sides coincide with thm1_report.
std::vector<BoundReport> thm2_report(const ChainAnalysis& a, int ell, double eps);

/// kappa_ell sigma_{x,ell} <= rho_{x,ell} <= sigma_{x,ell}; also the identity
/// sum_x pi(x) sigma_{x,ell} = Q_ell as |difference| <= 1e-8 (1 + Q_ell).
std::vector<BoundReport> prop12_report(const ChainAnalysis& a, int ell);

/// Full versus truncated (at T = M t_rel) integrals of f(s) = H_s(x,x) - pi(x),
/// in spectral closed form, with q = exp(-M):
///   lemma22.integral  int_0^inf f    <= (1 - q)^-1 int_0^T f
///   lemma22.weighted  int_0^inf s f  <= (1 - q)^-1 int_0^T s f + T q (1 - q)^-2 int_0^T f
/// Both follow from f(s + u) <= exp(-u / t_rel) f(s) and are equalities for a
/// single relaxation rate. Throws BadRange for M <= 0.
std::vector<BoundReport> lemma22_check(const ChainAnalysis& a, Index x, double M);

/// The factor 1 + sum_{i>=1} (i+1) q^i sometimes quoted for the weighted
/// integral alone. A single rate lambda gives the exact ratio
/// 1 / (1 - (1 + M) q), which exceeds this factor for every M > 0, so it is
/// not a valid bound; kept so tests can exhibit the counterexample.
double lemma22_stated_weighted_factor(double M);

/// Worst state over all x.
std::vector<BoundReport> lemma22_report(const ChainAnalysis& a, double M);

/// max_x t_pi->x <= t_hit <= t_target + max_x t_pi->x <= 2 max_x t_pi->x.
std::vector<BoundReport> fact21_report(const ChainAnalysis& a);

/// t_hit <= 2 max_x t_pi->x <= (2e/(e-1)) (1/pi_min) int_0^{t_rel} (H_s(x,x) - pi(x)) ds
///       <= (2e/(e-1)) t_rel (1 - pi_min) / pi_min, at x = argmax t_pi->x.
std::vector<BoundReport> corollary23_report(const ChainAnalysis& a);

/// t2x(1/2) <= 2 ell sigma_{x,ell}^{1/ell} and t_ave(1/2) <= 2 ell Q_ell^{1/ell}.
std::vector<BoundReport> extra_inequalities(const ChainAnalysis& a, int ell);

/// Every report above for the given eps and ell lists, plus the mixing-time
/// hierarchy (eps in (0,1) only), the integral comparisons at M in {1, 2, 5},
/// the hitting-tail bounds and the hitting-time chains, all labeled with the
/// kernel.
std::vector<BoundReport> full_sweep(const ChainAnalysis& a, const std::vector<double>& eps_list,
                                    const std::vector<int>& ell_list);

/// P_pi[T_y > t] <= exp(-t / t_hit) on a time grid and E_pi[T_y^2] <= 2 t_hit^2,
/// worst target y.
std::vector<BoundReport> hitting_tail_report(const ChainAnalysis& a);

/// Maximize sum_i a_i exp(-2 beta_i t) subject to sum_i a_i beta_i^-ell = budget,
/// beta_i in [lambda2, lambdan].
struct OptProblem {
  double t = 1.0;
  int ell = 1;
  double budget = 1.0;
  double lambda2 = 1.0;
  double lambdan = 2.0;
};

struct OptResult {
  double numeric_max = 0.0;
  double claimed = 0.0;      ///< budget lambda2^ell exp(-2 lambda2 t)
  double argmax_beta = 0.0;
  bool extremal_regime = false;  ///< t >= ell / (2 lambda2)
  /// In the extremal regime: argmax == lambda2 and numeric_max matches claimed
  /// to 1e-10 relative. Always true outside it.
  bool certified = false;
};

/// The objective is linear in a, so the optimum puts all mass on one beta and
/// equals budget max_beta beta^ell exp(-2 beta t). That map is unimodal with
/// its peak at ell / (2t); it is maximized by golden-section search plus
/// endpoint evaluation. Throws BadRange on an invalid problem.
OptResult opt_verify(const OptProblem& prob);

/// One row per family size.
struct Corollary11Row {
  std::string label;
  double t_rel = 0.0;
  double t_hit = 0.0;
  double t_inf = 0.0;
  double t_target = 0.0;
  double t_ave = 0.0;
  double mix_over_hit = 0.0;  ///< t_inf / t_hit
  double rel_over_hit = 0.0;  ///< t_rel / t_hit
};

/// Finite-size proxy for an asymptotic equivalence: the two ratios are said to
/// co-trend when at the largest size both have dropped below half of their
/// smallest-size values, or neither has.
struct Corollary11Table {
  std::vector<Corollary11Row> rows;
  bool mix_ratio_shrinks = false;
  bool rel_ratio_shrinks = false;
  bool co_trend = false;
};

/// Needs at least three specs, ordered by size. Throws BadRange otherwise.
Corollary11Table corollary11_diag(const std::vector<ChainFamilySpec>& specs);

}  // namespace mixbound
