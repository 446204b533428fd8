#include "mixbound/mixing.hpp"

#include "mixbound/errors.hpp"

#include <cfloat>
#include <cmath>
#include <string>

namespace mixbound {

MixingProfile::MixingProfile(const TransitionKernel& kernel, const SpectralDecomposition& decomp)
    : lambdas_(decomp.lambdas()),
      F_(decomp.eigfuncs().rightCols(decomp.size() - 1)),
      pi_(kernel.pi()),
      pi_min_(kernel.pi_min()),
      transitive_(kernel.transitive()) {
  F2_ = F_.array().square().matrix();
}

Vector MixingProfile::decay(double t) const {
  return (-t * lambdas_.tail(lambdas_.size() - 1).array()).exp().matrix();
}

double MixingProfile::d_inf(double t) const {
  return std::max(0.0, (F2_ * decay(t)).maxCoeff());
}

double MixingProfile::d2x(Index x, double t) const {
  return std::sqrt(std::max(0.0, F2_.row(x).dot(decay(2.0 * t))));
}

double MixingProfile::d2_max(double t) const { return std::sqrt(d_inf(2.0 * t)); }

double MixingProfile::d1x(Index x, double t) const {
  const Vector coef = F_.row(x).transpose().cwiseProduct(decay(t));
  const Vector rel = F_ * coef;  // H_t(x,y)/pi(y) - 1
  return pi_.dot(rel.cwiseAbs());
}

double MixingProfile::d1_max(double t) const {
  if (transitive_) return d1x(0, t);
  const Matrix G = F_ * decay(t).asDiagonal() * F_.transpose();
  return (G.cwiseAbs() * pi_).maxCoeff();
}

double MixingProfile::ave_l2(double t) const { return decay(2.0 * t).sum(); }

double MixingProfile::weighted_ave_l2(double t) const {
  double s = 0.0;
  for (Index x = 0; x < size(); ++x) {
    const double d = d2x(x, t);
    s += pi_(x) * d * d;
  }
  return s;
}

double MixingProfile::profile(ProfileKind kind, Index x, double t) const {
  switch (kind) {
    case ProfileKind::Linf: return d_inf(t);
    case ProfileKind::L2x: return d2x(x, t);
    case ProfileKind::L2: return d2_max(t);
    case ProfileKind::TV: return d1_max(t);
    case ProfileKind::AveL2: return ave_l2(t);
  }
  return 0.0;
}

double MixingProfile::mixing_time(ProfileKind kind, double eps, Index x) const {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw BadEps("mixing_time: eps must be positive");
  if (x < 0 || x >= size()) throw BadRange("mixing_time: state out of range");
  double threshold = eps;
  if (kind == ProfileKind::TV) threshold = 2.0 * eps;
  if (kind == ProfileKind::AveL2) threshold = eps * eps;

  auto above = [&](double t) { return profile(kind, x, t) > threshold; };
  if (!above(0.0)) return 0.0;

  // Every profile is at most (1/pi_min) exp(-t / t_rel), which gives this bracket.
  double hi = t_rel() * (1.0 + std::abs(std::log(eps * eps * pi_min_)));
  for (int i = 0; above(hi); ++i) {
    if (i > 200) throw NumericalFailure("mixing_time: failed to bracket the crossing");
    hi *= 2.0;
  }
  double lo = 0.0;
  for (int i = 0; i < 400 && hi - lo > 4.0 * DBL_EPSILON * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (above(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

double d_tv(const TransitionKernel& kernel, const SpectralDecomposition& decomp, Index x,
            double t) {
  return MixingProfile(kernel, decomp).d1x(x, t);
}

std::vector<BoundReport> hierarchy_check(const MixingProfile& profile, double t_hit, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw BadEps("hierarchy_check: eps must lie in (0,1)");
  const double t_rel = profile.t_rel();
  const double t_tv = profile.mixing_time(ProfileKind::TV, eps / 2.0);
  const double t_l2 = profile.mixing_time(ProfileKind::L2, eps);
  const double t_inf_sq = profile.mixing_time(ProfileKind::Linf, eps * eps);
  const double t_inf = profile.mixing_time(ProfileKind::Linf, 0.5);

  std::vector<BoundReport> out;
  out.push_back(BoundReport::make("hier.spectral_lower", t_rel * std::abs(std::log(eps)), t_tv));
  out.push_back(BoundReport::make("hier.tv_le_l2", t_tv, t_l2));
  out.push_back(BoundReport::make("hier.l2_eq_half_linf", std::abs(t_l2 - 0.5 * t_inf_sq),
                                  1e-8 * (1.0 + t_l2)));
  out.push_back(BoundReport::make("hier.linf_upper", 0.5 * t_inf_sq,
                                  t_rel * std::abs(std::log(eps * eps * profile.pi_min()))));
  out.push_back(BoundReport::make("hier.linf_le_9thit", t_inf, 9.0 * t_hit));
  for (auto& r : out) r.with_eps(eps);
  return out;
}

}  // namespace mixbound
