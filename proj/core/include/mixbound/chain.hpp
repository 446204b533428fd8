#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace mixbound {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Absolute tolerance for row sums, stationary mass and detailed balance.
inline constexpr double kKernelTolerance = 1e-12;

struct ValidationCheck {
  std::string name;
  double residual = 0.0;
  double tolerance = kKernelTolerance;
  bool pass = true;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool pass() const;
  double max_residual() const;
  const ValidationCheck* find(const std::string& name) const;
};

/// Measures every kernel invariant on raw data (which need not be valid).
ValidationReport validate(const Matrix& P, const Vector& pi);

/// True iff the directed support graph of P is strongly connected.
bool strongly_connected(const Matrix& P);

/// Unique left fixed vector of an irreducible row-stochastic matrix.
/// Throws NotIrreducible when the support graph is not strongly connected.
Vector stationary(const Matrix& P);

/// A finite, irreducible, reversible transition matrix together with its
/// stationary distribution. Instances always satisfy every invariant checked
/// by validate(); construction throws otherwise.
class TransitionKernel {
 public:
  /// Computes pi from P, then validates.
  static TransitionKernel from_matrix(Matrix P, std::string label = "custom");

  /// Uses a caller-supplied pi (e.g. a closed form), then validates.
  /// `transitive` marks kernels whose per-state quantities are state-independent.
  static TransitionKernel with_stationary(Matrix P, Vector pi, std::string label,
                                          bool transitive = false);

  Index size() const { return P_.rows(); }
  const Matrix& P() const { return P_; }
  const Vector& pi() const { return pi_; }
  double pi_min() const { return pi_.minCoeff(); }
  const std::string& label() const { return label_; }
  bool transitive() const { return transitive_; }

 private:
  TransitionKernel(Matrix P, Vector pi, std::string label, bool transitive);

  Matrix P_;
  Vector pi_;
  std::string label_;
  bool transitive_ = false;
};

enum class Family { Cycle, Torus, Complete, Hypercube, DlpBirthDeath, Custom };

/// Parameters of a built-in chain family. States are 0..n-1; torus states are
/// row-major flattenings of (i_1, ..., i_d) with i_1 most significant.
struct ChainFamilySpec {
  Family family = Family::Cycle;
  int n = 0;
  int d = 0;
  int m = 0;
  double lambda = 0.0;
  double eps = 0.0;
  int k = 0;
  Matrix custom;

  static ChainFamilySpec cycle(int n);
  static ChainFamilySpec torus(int d, int m);
  static ChainFamilySpec complete(int n);
  static ChainFamilySpec hypercube(int d);
  /// Birth-death chain with k states (the rightmost block) at rate lambda and
  /// the remaining n-k at rate 1/2. k == n is the unmodified construction.
  static ChainFamilySpec dlp(int n, double lambda, double eps, int k);
  static ChainFamilySpec custom_matrix(Matrix P);

  /// Throws InvalidSpec when a parameter is out of range.
  void check() const;
  int state_count() const;
  std::string label() const;
};

std::string family_name(Family f);
Family parse_family(const std::string& name);

TransitionKernel build_family(const ChainFamilySpec& spec);

}  // namespace mixbound
