#pragma once

#include "mixbound/chain.hpp"
#include "mixbound/report.hpp"
#include "mixbound/spectral.hpp"

#include <vector>

namespace mixbound {

enum class ProfileKind {
  Linf,   ///< d_inf(t) <= eps
  L2x,    ///< d_{2,x}(t) <= eps for one start x
  L2,     ///< max_x d_{2,x}(t) <= eps
  TV,     ///< max_x d_{1,x}(t) <= 2 eps, i.e. total variation <= eps
  AveL2,  ///< sum_{i>=2} exp(-2 lambda_i t) <= eps^2
};

/// Distance-to-stationarity profiles of the rate-1 heat kernel, all evaluated
/// from the spectral decomposition. Every profile is nonincreasing in t.
class MixingProfile {
 public:
  MixingProfile(const TransitionKernel& kernel, const SpectralDecomposition& decomp);

  Index size() const { return lambdas_.size(); }
  double t_rel() const { return 1.0 / lambdas_(1); }
  double pi_min() const { return pi_min_; }

  /// max_y H_t(y,y)/pi(y) - 1.
  double d_inf(double t) const;
  /// sqrt(H_{2t}(x,x)/pi(x) - 1).
  double d2x(Index x, double t) const;
  double d2_max(double t) const;
  /// sum_y |H_t(x,y) - pi(y)|.
  double d1x(Index x, double t) const;
  /// max_x d1x; on transitive kernels evaluated at x = 0 only.
  double d1_max(double t) const;
  /// sum_{i>=2} exp(-2 lambda_i t).
  double ave_l2(double t) const;
  /// sum_x pi(x) d_{2,x}(t)^2, evaluated state by state.
  double weighted_ave_l2(double t) const;

  /// inf{t >= 0 : profile(t) <= threshold(eps)}, by bracketing and bisection
  /// to full double precision. Throws BadEps for eps <= 0.
  double mixing_time(ProfileKind kind, double eps, Index x = 0) const;

 private:
  double profile(ProfileKind kind, Index x, double t) const;
  Vector decay(double t) const;

  Vector lambdas_;
  Matrix F_;         ///< columns 1..n-1 of the eigenfunction matrix
  Matrix F2_;        ///< entrywise square of F_
  Vector pi_;
  double pi_min_ = 0.0;
  bool transitive_ = false;
};

/// sum_y |H_t(x,y) - pi(y)|.
double d_tv(const TransitionKernel& kernel, const SpectralDecomposition& decomp, Index x,
            double t);

/// The classical chain of comparisons, for eps in (0,1):
///   t_rel |log eps| <= t_TV(eps/2) <= t2(eps) = t_inf(eps^2)/2 <= t_rel |log(eps^2 pi_min)|
/// and t_inf(1/2) <= 9 t_hit. Five reports; the equality is reported as
/// |t2(eps) - t_inf(eps^2)/2| <= 1e-8 (1 + t2(eps)).
std::vector<BoundReport> hierarchy_check(const MixingProfile& profile, double t_hit, double eps);

}  // namespace mixbound
