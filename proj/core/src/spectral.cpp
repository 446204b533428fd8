#include "mixbound/spectral.hpp"

#include "mixbound/chain_io.hpp"
#include "mixbound/errors.hpp"

#include <cmath>
#include <ostream>
#include <string>

namespace mixbound {

namespace {

constexpr double kZeroEigenvalue = 1e-10;
constexpr double kOrthonormalityFailure = 1e-6;

double ipow(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

SpectralDecomposition decompose(const TransitionKernel& kernel) {
  const Index n = kernel.size();
  const Matrix& P = kernel.P();
  const Vector& pi = kernel.pi();

  // Off-diagonal sqrt(pi_x / pi_y) P(x,y) equals sqrt(P(x,y) P(y,x)) under
  // detailed balance; this form is exactly symmetric.
  Matrix S(n, n);
  for (Index x = 0; x < n; ++x) {
    S(x, x) = 1.0 - P(x, x);
    for (Index y = x + 1; y < n; ++y) {
      const double v = -std::sqrt(P(x, y) * P(y, x));
      S(x, y) = v;
      S(y, x) = v;
    }
  }

  Eigen::SelfAdjointEigenSolver<Matrix> solver(S);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure(kernel.label() + ": symmetric eigensolver did not converge");
  }

  SpectralDecomposition d;
  d.pi_ = pi;
  d.lambdas_ = solver.eigenvalues();
  if (std::abs(d.lambdas_(0)) > kZeroEigenvalue) {
    throw NumericalFailure(kernel.label() + ": smallest Laplacian eigenvalue is not zero");
  }
  if (d.lambdas_(1) <= kZeroEigenvalue) {
    throw NotIrreducible(kernel.label() + ": zero eigenvalue is not simple");
  }
  d.lambdas_(0) = 0.0;

  const Vector inv_sqrt_pi = pi.cwiseSqrt().cwiseInverse();
  d.eigfuncs_ = inv_sqrt_pi.asDiagonal() * solver.eigenvectors();
  for (Index i = 0; i < n; ++i) {
    auto col = d.eigfuncs_.col(i);
    const double scale = col.cwiseAbs().maxCoeff();
    for (Index y = 0; y < n; ++y) {
      if (std::abs(col(y)) > 1e-10 * scale) {
        if (col(y) < 0.0) col = -col;
        break;
      }
    }
  }

  // f_1 is the constant function; measure before overwriting with exact ones.
  double residual = (d.eigfuncs_.col(0).array() - 1.0).abs().maxCoeff();
  d.eigfuncs_.col(0).setOnes();
  const Matrix gram = d.eigfuncs_.transpose() * pi.asDiagonal() * d.eigfuncs_;
  residual = std::max(residual, (gram - Matrix::Identity(n, n)).cwiseAbs().maxCoeff());
  d.orthonormality_residual_ = residual;
  if (residual > kOrthonormalityFailure) {
    throw NumericalFailure(kernel.label() + ": eigenfunctions lost pi-orthonormality (" +
                           std::to_string(residual) + ")");
  }
  return d;
}

double heat_diag_ratio(const SpectralDecomposition& decomp, Index x, double t) {
  const auto& lam = decomp.lambdas();
  const auto& F = decomp.eigfuncs();
  double s = 0.0;
  for (Index i = decomp.size() - 1; i >= 1; --i) {
    s += F(x, i) * F(x, i) * std::exp(-lam(i) * t);
  }
  return 1.0 + s;
}

double heat_kernel(const SpectralDecomposition& decomp, Index x, Index y, double t) {
  const auto& lam = decomp.lambdas();
  const auto& F = decomp.eigfuncs();
  double s = 0.0;
  for (Index i = decomp.size() - 1; i >= 1; --i) {
    s += F(x, i) * F(y, i) * std::exp(-lam(i) * t);
  }
  return decomp.pi()(y) * (1.0 + s);
}

double q_ell(const SpectralDecomposition& decomp, int ell) {
  double s = 0.0;
  for (Index i = decomp.size() - 1; i >= 1; --i) s += 1.0 / ipow(decomp.lambdas()(i), ell);
  return s;
}

double sigma_x_ell(const SpectralDecomposition& decomp, Index x, int ell) {
  const auto& F = decomp.eigfuncs();
  double s = 0.0;
  for (Index i = decomp.size() - 1; i >= 1; --i) {
    s += F(x, i) * F(x, i) / ipow(decomp.lambdas()(i), ell);
  }
  return s;
}

double rho_x_ell(const SpectralDecomposition& decomp, Index x, int ell) {
  const auto& F = decomp.eigfuncs();
  const double horizon = 2.0 * ell * decomp.t_rel();
  double s = 0.0;
  for (Index i = decomp.size() - 1; i >= 1; --i) {
    const double lam = decomp.lambdas()(i);
    s += F(x, i) * F(x, i) / ipow(lam, ell) * regularized_gamma_lower(ell, horizon * lam);
  }
  return s;
}

double regularized_gamma_lower(int shape, double z) {
  if (z <= 0.0) return 0.0;
  if (z < shape) {
    // Upper series e^{-z} sum_{k>=shape} z^k/k!: all terms positive, no cancellation.
    double term = std::exp(-z);
    for (int k = 1; k <= shape; ++k) term *= z / k;
    double sum = 0.0;
    for (int k = shape; term > 1e-18 * sum || k == shape; ++k) {
      sum += term;
      term *= z / (k + 1);
    }
    return sum;
  }
  double term = 1.0;
  double partial = 1.0;
  for (int k = 1; k < shape; ++k) {
    term *= z / k;
    partial += term;
  }
  return 1.0 - std::exp(-z) * partial;
}

double kappa_ell(int ell) { return regularized_gamma_lower(ell, 2.0 * ell); }

void write_spectrum_csv(std::ostream& os, const SpectralDecomposition& decomp) {
  os << "lambda\n";
  for (Index i = 0; i < decomp.size(); ++i) os << format_number(decomp.lambdas()(i)) << '\n';
}

void write_sigma_rho_csv(std::ostream& os, const SpectralDecomposition& decomp,
                         const std::vector<int>& ells) {
  os << 'x';
  for (int l : ells) os << ",sigma_" << l;
  for (int l : ells) os << ",rho_" << l;
  os << '\n';
  for (Index x = 0; x < decomp.size(); ++x) {
    os << x;
    for (int l : ells) os << ',' << format_number(sigma_x_ell(decomp, x, l));
    for (int l : ells) os << ',' << format_number(rho_x_ell(decomp, x, l));
    os << '\n';
  }
}

}  // namespace mixbound
