#pragma once

#include "mixbound/chain.hpp"

#include <iosfwd>
#include <vector>

namespace mixbound {

/// Eigenpairs of the Laplacian I - P in the pi-weighted inner product.
///
/// lambdas() is nondecreasing with lambdas()(0) == 0 exactly. Column i of
/// eigfuncs() is f_i with sum_y pi(y) f_i(y) f_j(y) = delta_ij, f_0 == 1, and
/// the first entry of each f_i that is not negligible is positive.
class SpectralDecomposition {
 public:
  Index size() const { return lambdas_.size(); }
  const Vector& lambdas() const { return lambdas_; }
  const Matrix& eigfuncs() const { return eigfuncs_; }
  const Vector& pi() const { return pi_; }

  double gap() const { return lambdas_(1); }
  double t_rel() const { return 1.0 / lambdas_(1); }
  double lambda_max() const { return lambdas_(size() - 1); }

  /// max |F^T diag(pi) F - I| measured after construction.
  double orthonormality_residual() const { return orthonormality_residual_; }

 private:
  friend SpectralDecomposition decompose(const TransitionKernel& kernel);

  Vector lambdas_;
  Matrix eigfuncs_;
  Vector pi_;
  double orthonormality_residual_ = 0.0;
};

/// Eigendecomposes S = D^{1/2} (I - P) D^{-1/2}, D = diag(pi), and maps the
/// eigenvectors back to f_i = D^{-1/2} v_i.
/// Throws NotIrreducible when a second eigenvalue sits at zero and
/// NumericalFailure when the orthonormality residual exceeds 1e-6.
SpectralDecomposition decompose(const TransitionKernel& kernel);

/// H_t(x,x) / pi(x) = sum_i f_i(x)^2 exp(-lambda_i t).
double heat_diag_ratio(const SpectralDecomposition& decomp, Index x, double t);

/// H_t(x,y) reconstructed from the spectrum.
double heat_kernel(const SpectralDecomposition& decomp, Index x, Index y, double t);

/// Q_ell = sum_{i>=2} lambda_i^{-ell}.
double q_ell(const SpectralDecomposition& decomp, int ell);

/// sigma_{x,ell} = sum_{i>=2} f_i(x)^2 / lambda_i^ell.
double sigma_x_ell(const SpectralDecomposition& decomp, Index x, int ell);

/// rho_{x,ell}: the heat-diagonal moment integral truncated at 2 ell t_rel,
/// sum_{i>=2} (f_i(x)^2 / lambda_i^ell) G_ell(2 ell t_rel lambda_i).
double rho_x_ell(const SpectralDecomposition& decomp, Index x, int ell);

/// kappa_ell = P[Gamma(ell, 1) <= 2 ell] = G_ell(2 ell).
double kappa_ell(int ell);

/// Regularized lower incomplete gamma at integer shape:
/// G_shape(z) = 1 - exp(-z) sum_{k<shape} z^k / k!.
double regularized_gamma_lower(int shape, double z);

/// `lambda` header plus one eigenvalue per line.
void write_spectrum_csv(std::ostream& os, const SpectralDecomposition& decomp);

/// Header `x,sigma_1,...,sigma_L,rho_1,...,rho_L`, one row per state.
void write_sigma_rho_csv(std::ostream& os, const SpectralDecomposition& decomp,
                         const std::vector<int>& ells);

}  // namespace mixbound
