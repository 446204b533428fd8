#include "mixbound/chain.hpp"

#include "mixbound/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace mixbound {

namespace {

std::vector<std::vector<Index>> support_lists(const Matrix& P, bool transpose) {
  const Index n = P.rows();
  std::vector<std::vector<Index>> adj(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (P(i, j) > 0.0) {
        if (transpose) {
          adj[static_cast<std::size_t>(j)].push_back(i);
        } else {
          adj[static_cast<std::size_t>(i)].push_back(j);
        }
      }
    }
  }
  return adj;
}

bool reaches_all(const std::vector<std::vector<Index>>& adj) {
  std::vector<char> seen(adj.size(), 0);
  std::vector<Index> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const Index v = stack.back();
    stack.pop_back();
    for (Index w : adj[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == adj.size();
}

}  // namespace

bool ValidationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

double ValidationReport::max_residual() const {
  double r = 0.0;
  for (const auto& c : checks) r = std::max(r, c.residual);
  return r;
}

const ValidationCheck* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

bool strongly_connected(const Matrix& P) {
  if (P.rows() == 0) return false;
  return reaches_all(support_lists(P, false)) && reaches_all(support_lists(P, true));
}

ValidationReport validate(const Matrix& P, const Vector& pi) {
  ValidationReport report;
  auto add = [&](std::string name, double residual, bool pass) {
    report.checks.push_back({std::move(name), residual, kKernelTolerance, pass});
  };

  const Index n = P.rows();
  if (n < 2 || P.cols() != n || pi.size() != n) {
    add("shape", 1.0, false);
    return report;
  }
  add("shape", 0.0, true);

  double row_residual = 0.0;
  for (Index i = 0; i < n; ++i) {
    row_residual = std::max(row_residual, std::abs(P.row(i).sum() - 1.0));
  }
  add("row_sum", row_residual, row_residual <= kKernelTolerance);

  const double min_entry = P.minCoeff();
  add("nonnegative", std::max(0.0, -min_entry), min_entry >= 0.0);

  const double pi_min = pi.minCoeff();
  add("pi_positive", std::max(0.0, -pi_min), pi_min > 0.0);

  const double pi_sum_residual = std::abs(pi.sum() - 1.0);
  add("pi_sum", pi_sum_residual, pi_sum_residual <= kKernelTolerance);

  double balance = 0.0;
  for (Index x = 0; x < n; ++x) {
    for (Index y = x + 1; y < n; ++y) {
      balance = std::max(balance, std::abs(pi(x) * P(x, y) - pi(y) * P(y, x)));
    }
  }
  add("detailed_balance", balance, balance <= kKernelTolerance);

  const bool connected = strongly_connected(P);
  add("irreducible", connected ? 0.0 : 1.0, connected);
  return report;
}

Vector stationary(const Matrix& P) {
  const Index n = P.rows();
  if (n < 1 || P.cols() != n) throw InvalidSpec("stationary: matrix must be square");
  if (!strongly_connected(P)) {
    throw NotIrreducible("stationary: support graph is not strongly connected");
  }
  // pi (P - I) = 0 with the last equation replaced by sum(pi) = 1.
  Matrix A = P.transpose() - Matrix::Identity(n, n);
  A.row(n - 1).setOnes();
  Vector b = Vector::Zero(n);
  b(n - 1) = 1.0;
  Vector pi = A.fullPivLu().solve(b);
  if (!pi.allFinite() || pi.minCoeff() <= 0.0) {
    throw NumericalFailure("stationary: solve produced a non-positive vector");
  }
  return pi / pi.sum();
}

TransitionKernel::TransitionKernel(Matrix P, Vector pi, std::string label, bool transitive)
    : P_(std::move(P)), pi_(std::move(pi)), label_(std::move(label)), transitive_(transitive) {
  const ValidationReport report = validate(P_, pi_);
  for (const auto& c : report.checks) {
    if (c.pass) continue;
    std::ostringstream msg;
    msg << label_ << ": check '" << c.name << "' failed (residual " << c.residual << ")";
    if (c.name == "irreducible") throw NotIrreducible(msg.str());
    if (c.name == "detailed_balance") throw NotReversible(msg.str());
    throw InvalidSpec(msg.str());
  }
}

TransitionKernel TransitionKernel::from_matrix(Matrix P, std::string label) {
  if (P.rows() < 2 || P.cols() != P.rows()) {
    throw InvalidSpec("kernel must be a square matrix with at least 2 states");
  }
  if (P.minCoeff() < 0.0) throw InvalidSpec("kernel has negative entries");
  for (Index i = 0; i < P.rows(); ++i) {
    if (std::abs(P.row(i).sum() - 1.0) > kKernelTolerance) {
      throw InvalidSpec("kernel row " + std::to_string(i) + " does not sum to 1");
    }
  }
  Vector pi = stationary(P);
  return TransitionKernel(std::move(P), std::move(pi), std::move(label), false);
}

TransitionKernel TransitionKernel::with_stationary(Matrix P, Vector pi, std::string label,
                                                   bool transitive) {
  return TransitionKernel(std::move(P), std::move(pi), std::move(label), transitive);
}

// ---------------------------------------------------------------------------

ChainFamilySpec ChainFamilySpec::cycle(int n) {
  ChainFamilySpec s;
  s.family = Family::Cycle;
  s.n = n;
  return s;
}

ChainFamilySpec ChainFamilySpec::torus(int d, int m) {
  ChainFamilySpec s;
  s.family = Family::Torus;
  s.d = d;
  s.m = m;
  return s;
}

ChainFamilySpec ChainFamilySpec::complete(int n) {
  ChainFamilySpec s;
  s.family = Family::Complete;
  s.n = n;
  return s;
}

ChainFamilySpec ChainFamilySpec::hypercube(int d) {
  ChainFamilySpec s;
  s.family = Family::Hypercube;
  s.d = d;
  return s;
}

ChainFamilySpec ChainFamilySpec::dlp(int n, double lambda, double eps, int k) {
  ChainFamilySpec s;
  s.family = Family::DlpBirthDeath;
  s.n = n;
  s.lambda = lambda;
  s.eps = eps;
  s.k = k;
  return s;
}

ChainFamilySpec ChainFamilySpec::custom_matrix(Matrix P) {
  ChainFamilySpec s;
  s.family = Family::Custom;
  s.n = static_cast<int>(P.rows());
  s.custom = std::move(P);
  return s;
}

namespace {

// Dense kernels are stored as n x n doubles; cap far above the desk scale.
constexpr double kMaxStates = 8192;

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidSpec(what);
}

}  // namespace

int ChainFamilySpec::state_count() const {
  switch (family) {
    case Family::Cycle:
    case Family::Complete:
    case Family::DlpBirthDeath:
    case Family::Custom:
      return n;
    case Family::Torus:
      return static_cast<int>(std::lround(std::pow(static_cast<double>(m), d)));
    case Family::Hypercube:
      return 1 << d;
  }
  return 0;
}

void ChainFamilySpec::check() const {
  switch (family) {
    case Family::Cycle:
    case Family::Complete:
      require(n >= 2, "n must be >= 2");
      require(n <= kMaxStates, "n too large");
      break;
    case Family::Torus:
      require(d >= 1, "d must be >= 1");
      require(m >= 2, "m must be >= 2");
      require(std::pow(static_cast<double>(m), d) <= kMaxStates, "torus has too many states");
      break;
    case Family::Hypercube:
      require(d >= 1, "d must be >= 1");
      require(d <= 13, "hypercube dimension too large");
      break;
    case Family::DlpBirthDeath:
      require(n >= 2, "n must be >= 2");
      require(n <= kMaxStates, "n too large");
      require(lambda > 0.0 && lambda <= 1.0, "lambda must lie in (0, 1]");
      require(eps > 0.0 && eps < 0.5, "eps must lie in (0, 1/2)");
      require(k >= 0 && k <= n, "k must lie in [0, n]");
      break;
    case Family::Custom:
      require(custom.rows() >= 2 && custom.rows() == custom.cols(),
              "custom matrix must be square with n >= 2");
      break;
  }
}

std::string ChainFamilySpec::label() const {
  std::ostringstream os;
  os << family_name(family) << '(';
  switch (family) {
    case Family::Cycle:
    case Family::Complete:
      os << n;
      break;
    case Family::Torus:
      os << d << ',' << m;
      break;
    case Family::Hypercube:
      os << d;
      break;
    case Family::DlpBirthDeath:
      os << n << ',' << lambda << ',' << eps << ',' << k;
      break;
    case Family::Custom:
      os << custom.rows();
      break;
  }
  os << ')';
  return os.str();
}

std::string family_name(Family f) {
  switch (f) {
    case Family::Cycle: return "cycle";
    case Family::Torus: return "torus";
    case Family::Complete: return "complete";
    case Family::Hypercube: return "hypercube";
    case Family::DlpBirthDeath: return "dlp";
    case Family::Custom: return "custom";
  }
  return "unknown";
}

Family parse_family(const std::string& name) {
  if (name == "cycle") return Family::Cycle;
  if (name == "torus") return Family::Torus;
  if (name == "complete") return Family::Complete;
  if (name == "hypercube") return Family::Hypercube;
  if (name == "dlp" || name == "dlp_birth_death") return Family::DlpBirthDeath;
  if (name == "custom") return Family::Custom;
  throw InvalidSpec("unknown family '" + name + "'");
}

namespace {

Matrix torus_matrix(int d, int m) {
  const int n = static_cast<int>(std::lround(std::pow(static_cast<double>(m), d)));
  Matrix P = Matrix::Zero(n, n);
  const double w = 1.0 / (2.0 * d);
  std::vector<int> coord(static_cast<std::size_t>(d));
  for (int s = 0; s < n; ++s) {
    int rest = s;
    for (int j = d - 1; j >= 0; --j) {
      coord[static_cast<std::size_t>(j)] = rest % m;
      rest /= m;
    }
    int stride = 1;
    for (int j = d - 1; j >= 0; --j) {
      const int c = coord[static_cast<std::size_t>(j)];
      const int up = s + (((c + 1) % m) - c) * stride;
      const int down = s + (((c + m - 1) % m) - c) * stride;
      P(s, up) += w;
      P(s, down) += w;
      stride *= m;
    }
  }
  return P;
}

Matrix hypercube_matrix(int d) {
  const int n = 1 << d;
  Matrix P = Matrix::Zero(n, n);
  for (int s = 0; s < n; ++s) {
    for (int j = 0; j < d; ++j) P(s, s ^ (1 << j)) = 1.0 / d;
  }
  return P;
}

TransitionKernel dlp_kernel(const ChainFamilySpec& spec) {
  const int n = spec.n;
  const double eps = spec.eps;
  // Edge (i, i+1) carries rate c_i: up-move c_i (1 - eps), down-move c_i eps.
  // States 0..n-k-1 form the rate-1/2 block; the crossing edge takes the mean
  // rate so the up/down ratio stays (1 - eps) / eps everywhere.
  const int left = n - spec.k;
  auto edge_rate = [&](int i) {
    const bool a_left = i < left;
    const bool b_left = i + 1 < left;
    if (a_left && b_left) return 0.5;
    if (!a_left && !b_left) return spec.lambda;
    return 0.5 * (0.5 + spec.lambda);
  };
  Matrix P = Matrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    const double c = edge_rate(i);
    P(i, i + 1) = c * (1.0 - eps);
    P(i + 1, i) = c * eps;
  }
  for (int i = 0; i < n; ++i) P(i, i) = 1.0 - (P.row(i).sum() - P(i, i));

  // pi(i) proportional to r^i with r = (1 - eps) / eps, computed in log space.
  const double log_r = std::log1p(-eps) - std::log(eps);
  Vector pi(n);
  for (int i = 0; i < n; ++i) pi(i) = std::exp((i - (n - 1)) * log_r);
  pi /= pi.sum();
  if (pi.minCoeff() < 1e-290) {
    throw InvalidSpec("dlp: stationary mass underflows double precision; increase eps");
  }
  return TransitionKernel::with_stationary(std::move(P), std::move(pi), spec.label(), false);
}

}  // namespace

TransitionKernel build_family(const ChainFamilySpec& spec) {
  spec.check();
  switch (spec.family) {
    case Family::Cycle: {
      const int n = spec.n;
      Matrix P = Matrix::Zero(n, n);
      for (int i = 0; i < n; ++i) {
        P(i, (i + 1) % n) += 0.5;
        P(i, (i + n - 1) % n) += 0.5;
      }
      return TransitionKernel::with_stationary(std::move(P), Vector::Constant(n, 1.0 / n),
                                               spec.label(), true);
    }
    case Family::Torus: {
      Matrix P = torus_matrix(spec.d, spec.m);
      const Index n = P.rows();
      return TransitionKernel::with_stationary(
          std::move(P), Vector::Constant(n, 1.0 / static_cast<double>(n)), spec.label(), true);
    }
    case Family::Complete: {
      const int n = spec.n;
      Matrix P = Matrix::Constant(n, n, 1.0 / (n - 1));
      P.diagonal().setZero();
      return TransitionKernel::with_stationary(std::move(P), Vector::Constant(n, 1.0 / n),
                                               spec.label(), true);
    }
    case Family::Hypercube: {
      Matrix P = hypercube_matrix(spec.d);
      const Index n = P.rows();
      return TransitionKernel::with_stationary(
          std::move(P), Vector::Constant(n, 1.0 / static_cast<double>(n)), spec.label(), true);
    }
    case Family::DlpBirthDeath:
      return dlp_kernel(spec);
    case Family::Custom:
      return TransitionKernel::from_matrix(spec.custom, spec.label());
  }
  throw InvalidSpec("unhandled family");
}

}  // namespace mixbound
