#pragma once

#include "mixbound/chain.hpp"
#include "mixbound/spectral.hpp"

#include <iosfwd>

namespace mixbound {

/// Exact expected hitting times of single states. Convention: T_y = 0 when
/// the chain starts at y.
struct HittingSummary {
  Matrix hit_matrix;        ///< (x, y) -> E_x[T_y]; zero diagonal.
  Vector t_pi_to;           ///< x -> E_pi[T_x].
  Vector target_by_start;   ///< x -> sum_y pi(y) E_x[T_y]; constant in x.
  double t_hit = 0.0;       ///< max entry of hit_matrix.
  double t_target = 0.0;    ///< random-target time (pi-average of target_by_start).

  double max_t_pi_to() const { return t_pi_to.maxCoeff(); }
  double min_t_pi_to() const { return t_pi_to.minCoeff(); }
};

enum class HitSolver {
  /// BirthDeath for tridiagonal kernels, FundamentalMatrix otherwise.
  Auto,
  /// One LU of I - P + 1 pi^T; E_x[T_y] = (Z(y,y) - Z(x,y)) / pi(y). O(n^3).
  /// t_pi_to stays accurate on any kernel; entries of hit_matrix lose
  /// relative accuracy roughly in proportion to 1 / pi_min.
  FundamentalMatrix,
  /// hit_column for every target. O(n^4), accurate entrywise.
  RestrictedColumns,
  /// Sums of one-step passage times; tridiagonal kernels only. O(n^2).
  BirthDeath,
};

/// Throws SingularSystem when a linear system is numerically singular and
/// BadRange when BirthDeath is requested for a kernel that is not tridiagonal.
HittingSummary hit_times(const TransitionKernel& kernel, HitSolver solver = HitSolver::Auto);

/// Column y of the hitting matrix from the restricted system (I - P)|_{V\y} h = 1,
/// by Gaussian elimination without subtractions (censoring one state at a time),
/// which keeps every entry to high relative accuracy regardless of conditioning.
Vector hit_column(const TransitionKernel& kernel, Index y);

/// True iff P(i,j) == 0 whenever |i - j| > 1.
bool is_birth_death(const TransitionKernel& kernel);

/// |t_target - Q_1|.
double eigentime_check(const HittingSummary& hitting, const SpectralDecomposition& decomp);
double eigentime_check(const TransitionKernel& kernel, const SpectralDecomposition& decomp);

/// Law of T_y under P_pi: a mixture of exponentials
/// P_pi[T_y > t] = sum_k weight_k exp(-rate_k t) from the Dirichlet spectrum
/// of the symmetrized substochastic block on V \ {y}.
class HittingTailLaw {
 public:
  HittingTailLaw(const TransitionKernel& kernel, Index y);

  Index target() const { return target_; }
  const Vector& rates() const { return rates_; }
  const Vector& weights() const { return weights_; }

  /// P_pi[T_y > t]; equals 1 - pi(y) at t = 0.
  double tail(double t) const;
  /// P_pi[T_y > t + s | T_y >= s].
  double conditional_tail(double t, double s) const;
  double mean() const;
  /// E_pi[T_y^2] = 2 sum_k weight_k / rate_k^2.
  double second_moment() const;

 private:
  Index target_;
  Vector rates_;
  Vector weights_;
};

double hitting_tail(const TransitionKernel& kernel, Index y, double t);
double second_moment_pi(const TransitionKernel& kernel, Index y);

}  // namespace mixbound
