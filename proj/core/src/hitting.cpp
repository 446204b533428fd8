#include "mixbound/hitting.hpp"

#include "mixbound/errors.hpp"

#include <cmath>
#include <string>

namespace mixbound {

namespace {

// Backward-error test: the residual of a solve scales with the solution size.
bool solve_ok(double residual, double solution_scale, Index n) {
  return residual <= 1e-10 * static_cast<double>(n) * (1.0 + solution_scale);
}

void finish_summary(const TransitionKernel& kernel, HittingSummary& h) {
  const Vector& pi = kernel.pi();
  h.hit_matrix.diagonal().setZero();
  h.t_pi_to = h.hit_matrix.transpose() * pi;
  h.target_by_start = h.hit_matrix * pi;
  h.t_target = pi.dot(h.target_by_start);
  h.t_hit = h.hit_matrix.maxCoeff();
}

}  // namespace

Vector hit_column(const TransitionKernel& kernel, Index y) {
  const Index n = kernel.size();
  if (y < 0 || y >= n) throw BadRange("hit_column: state out of range");
  const Matrix& P = kernel.P();
  const Index m = n - 1;
  // a holds the off-diagonal transition mass among V \ {y} (diagonal unused),
  // e the mass absorbed at y. Eliminating state k censors the chain on the
  // remaining states, so every update is a sum of nonnegative terms and the
  // pivot is the outflow of the censored chain rather than 1 - P(k,k).
  Matrix a(m, m);
  Vector e(m), b = Vector::Ones(m), d(m);
  for (Index i = 0, r = 0; i < n; ++i) {
    if (i == y) continue;
    for (Index j = 0, c = 0; j < n; ++j) {
      if (j == y) continue;
      a(r, c++) = (i == j) ? 0.0 : P(i, j);
    }
    e(r++) = P(i, y);
  }
  for (Index k = 0; k < m; ++k) {
    double pivot = e(k);
    for (Index j = k + 1; j < m; ++j) pivot += a(k, j);
    if (!(pivot > 0.0)) {
      throw SingularSystem(kernel.label() + ": restricted system for target " +
                           std::to_string(y) + " is singular");
    }
    d(k) = pivot;
    for (Index i = k + 1; i < m; ++i) {
      const double f = a(i, k) / pivot;
      if (f == 0.0) continue;
      for (Index j = k + 1; j < m; ++j) {
        if (j != i) a(i, j) += f * a(k, j);
      }
      e(i) += f * e(k);
      b(i) += f * b(k);
    }
  }
  Vector h(m);
  for (Index k = m - 1; k >= 0; --k) {
    double acc = b(k);
    for (Index j = k + 1; j < m; ++j) acc += a(k, j) * h(j);
    h(k) = acc / d(k);
  }
  if (!h.allFinite()) {
    throw SingularSystem(kernel.label() + ": restricted system for target " +
                         std::to_string(y) + " is singular");
  }
  Vector col(n);
  for (Index i = 0, r = 0; i < n; ++i) col(i) = (i == y) ? 0.0 : h(r++);
  return col;
}

bool is_birth_death(const TransitionKernel& kernel) {
  const Matrix& P = kernel.P();
  for (Index i = 0; i < P.rows(); ++i) {
    for (Index j = 0; j < P.cols(); ++j) {
      if (std::abs(i - j) > 1 && P(i, j) != 0.0) return false;
    }
  }
  return true;
}

namespace {

// E_i[T_{i+1}] = pi([0, i]) / (pi(i) P(i, i+1)) and symmetrically downward;
// other entries are sums of these one-step times.
Matrix birth_death_hits(const TransitionKernel& kernel) {
  const Index n = kernel.size();
  const Matrix& P = kernel.P();
  const Vector& pi = kernel.pi();
  Vector up = Vector::Zero(n), down = Vector::Zero(n);
  double mass = 0.0;
  for (Index i = 0; i + 1 < n; ++i) {
    mass += pi(i);
    up(i) = mass / (pi(i) * P(i, i + 1));
  }
  mass = 0.0;
  for (Index i = n - 1; i > 0; --i) {
    mass += pi(i);
    down(i) = mass / (pi(i) * P(i, i - 1));
  }
  Matrix H = Matrix::Zero(n, n);
  for (Index x = 0; x < n; ++x) {
    for (Index y = x + 1; y < n; ++y) H(x, y) = H(x, y - 1) + up(y - 1);
    for (Index y = x - 1; y >= 0; --y) H(x, y) = H(x, y + 1) + down(y + 1);
  }
  return H;
}

}  // namespace

HittingSummary hit_times(const TransitionKernel& kernel, HitSolver solver) {
  const Index n = kernel.size();
  const Vector& pi = kernel.pi();
  HittingSummary h;
  h.hit_matrix.resize(n, n);

  if (solver == HitSolver::Auto) {
    solver = is_birth_death(kernel) ? HitSolver::BirthDeath : HitSolver::FundamentalMatrix;
  }
  if (solver == HitSolver::BirthDeath) {
    if (!is_birth_death(kernel)) {
      throw BadRange(kernel.label() + ": not a birth-death kernel");
    }
    h.hit_matrix = birth_death_hits(kernel);
  } else if (solver == HitSolver::RestrictedColumns) {
    for (Index y = 0; y < n; ++y) h.hit_matrix.col(y) = hit_column(kernel, y);
  } else {
    Matrix A = Matrix::Identity(n, n) - kernel.P();
    A.rowwise() += pi.transpose();
    Eigen::PartialPivLU<Matrix> lu(A);
    const Matrix Z = lu.inverse();
    const double residual = (A * Z - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
    if (!Z.allFinite() || !solve_ok(residual, Z.cwiseAbs().maxCoeff(), n)) {
      throw SingularSystem(kernel.label() + ": fundamental matrix is singular");
    }
    for (Index y = 0; y < n; ++y) {
      for (Index x = 0; x < n; ++x) h.hit_matrix(x, y) = (Z(y, y) - Z(x, y)) / pi(y);
    }
  }
  finish_summary(kernel, h);
  return h;
}

double eigentime_check(const HittingSummary& hitting, const SpectralDecomposition& decomp) {
  return std::abs(hitting.t_target - q_ell(decomp, 1));
}

double eigentime_check(const TransitionKernel& kernel, const SpectralDecomposition& decomp) {
  return eigentime_check(hit_times(kernel), decomp);
}

HittingTailLaw::HittingTailLaw(const TransitionKernel& kernel, Index y) : target_(y) {
  const Index n = kernel.size();
  const Matrix& P = kernel.P();
  const Vector& pi = kernel.pi();

  // Symmetrized Dirichlet Laplacian on V \ {y}.
  Matrix S(n - 1, n - 1);
  Vector sqrt_pi(n - 1);
  for (Index i = 0, r = 0; i < n; ++i) {
    if (i == y) continue;
    sqrt_pi(r) = std::sqrt(pi(i));
    for (Index j = 0, c = 0; j < n; ++j) {
      if (j == y) continue;
      S(r, c) = (i == j) ? 1.0 - P(i, i) : -std::sqrt(P(i, j) * P(j, i));
      ++c;
    }
    ++r;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(S);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure(kernel.label() + ": Dirichlet eigensolver did not converge");
  }
  rates_ = solver.eigenvalues();
  if (rates_.minCoeff() <= 0.0) {
    throw SingularSystem(kernel.label() + ": Dirichlet block is singular");
  }
  weights_ = (solver.eigenvectors().transpose() * sqrt_pi).array().square();
}

double HittingTailLaw::tail(double t) const {
  double s = 0.0;
  for (Index k = 0; k < rates_.size(); ++k) s += weights_(k) * std::exp(-rates_(k) * t);
  return s;
}

double HittingTailLaw::conditional_tail(double t, double s) const {
  // P[T_y >= 0] = 1 because of the mass at T_y = 0; for s > 0 the law has no atom.
  if (s <= 0.0) return tail(t);
  // Rescale both sums by exp(r_min s) so neither underflows for large s.
  const double r0 = rates_.minCoeff();
  double num = 0.0, den = 0.0;
  for (Index k = 0; k < rates_.size(); ++k) {
    const double w = weights_(k) * std::exp(-(rates_(k) - r0) * s);
    num += w * std::exp(-rates_(k) * t);
    den += w;
  }
  return num / den;
}

double HittingTailLaw::mean() const {
  return (weights_.array() / rates_.array()).sum();
}

double HittingTailLaw::second_moment() const {
  return 2.0 * (weights_.array() / rates_.array().square()).sum();
}

double hitting_tail(const TransitionKernel& kernel, Index y, double t) {
  return HittingTailLaw(kernel, y).tail(t);
}

double second_moment_pi(const TransitionKernel& kernel, Index y) {
  return HittingTailLaw(kernel, y).second_moment();
}

}  // namespace mixbound
