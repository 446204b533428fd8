#include <doctest.h>

#include "kernel_set.hpp"
#include "mixbound/spectral.hpp"
#include "oracles.hpp"
#include "random_kernels.hpp"

#include <cmath>
#include <sstream>

using namespace mixbound;
using doctest::Approx;

namespace {

TransitionKernel two_state(double p, double q) {
  Matrix P(2, 2);
  P << 1 - p, p, q, 1 - q;
  return TransitionKernel::from_matrix(P, "two_state");
}

}  // namespace

TEST_CASE("complete(4) spectrum") {
  const auto k = build_family(ChainFamilySpec::complete(4));
  const auto d = decompose(k);
  CHECK(d.lambdas()(0) == 0.0);
  for (Index i = 1; i < 4; ++i) CHECK(d.lambdas()(i) == Approx(4.0 / 3).epsilon(1e-13));
  const Vector oracle = testing::laplacian_eigenvalues_general(k);
  CHECK((oracle - d.lambdas()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("cycle(4) spectrum is 1 - cos(2 pi j / 4)") {
  const auto d = decompose(build_family(ChainFamilySpec::cycle(4)));
  CHECK(d.lambdas()(1) == Approx(1.0).epsilon(1e-13));
  CHECK(d.lambdas()(2) == Approx(1.0).epsilon(1e-13));
  CHECK(d.lambdas()(3) == Approx(2.0).epsilon(1e-13));
}

TEST_CASE("two-state p = q = 1/2") {
  const auto d = decompose(two_state(0.5, 0.5));
  CHECK(d.lambdas()(1) == Approx(1.0));
  CHECK(d.eigfuncs()(0, 1) == Approx(1.0));
  CHECK(d.eigfuncs()(1, 1) == Approx(-1.0));
  CHECK(sigma_x_ell(d, 0, 1) == Approx(1.0));
  CHECK(rho_x_ell(d, 0, 2) == Approx(1 - 5 * std::exp(-4.0)).epsilon(1e-14));
}

TEST_CASE("heat diagonal on complete(4)") {
  const auto d = decompose(build_family(ChainFamilySpec::complete(4)));
  CHECK(heat_diag_ratio(d, 0, 0.0) == Approx(4.0).epsilon(1e-14));
  CHECK(heat_diag_ratio(d, 2, 0.75) == Approx(1 + 3 * std::exp(-1.0)).epsilon(1e-14));
  CHECK(heat_diag_ratio(d, 1, 1e6) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Q_ell, sigma and rho closed forms on small chains") {
  const auto c4 = decompose(build_family(ChainFamilySpec::complete(4)));
  CHECK(q_ell(c4, 1) == Approx(2.25).epsilon(1e-14));
  CHECK(q_ell(c4, 2) == Approx(1.6875).epsilon(1e-14));
  for (Index x = 0; x < 4; ++x) {
    CHECK(sigma_x_ell(c4, x, 1) == Approx(2.25).epsilon(1e-13));
    CHECK(sigma_x_ell(c4, x, 2) == Approx(1.6875).epsilon(1e-13));
    CHECK(rho_x_ell(c4, x, 1) == Approx(2.25 * (1 - std::exp(-2.0))).epsilon(1e-13));
  }
  const auto cy4 = decompose(build_family(ChainFamilySpec::cycle(4)));
  CHECK(q_ell(cy4, 1) == Approx(2.5).epsilon(1e-14));
}

TEST_CASE("kappa_ell values") {
  CHECK(kappa_ell(1) == Approx(1 - std::exp(-2.0)).epsilon(1e-15));
  CHECK(kappa_ell(2) == Approx(1 - 5 * std::exp(-4.0)).epsilon(1e-15));
  CHECK(kappa_ell(5) == Approx(0.970747311923039).epsilon(1e-12));
  // Quadrature of the Gamma(ell, 1) density on [0, 2 ell].
  for (int ell = 1; ell <= 6; ++ell) {
    double fact = 1.0;
    for (int k = 2; k < ell; ++k) fact *= k;
    const double q = testing::adaptive_simpson(
        [&](double s) { return std::pow(s, ell - 1) * std::exp(-s) / fact; }, 0.0, 2.0 * ell,
        1e-14);
    CHECK(kappa_ell(ell) == Approx(q).epsilon(1e-11));
  }
}

TEST_CASE("regularized gamma series branches agree near the switch") {
  for (int shape : {1, 2, 3, 7, 12}) {
    const double below = regularized_gamma_lower(shape, shape * (1 - 1e-12));
    const double above = regularized_gamma_lower(shape, shape * (1 + 1e-12));
    CHECK(below == Approx(above).epsilon(1e-10));
    CHECK(regularized_gamma_lower(shape, 0.0) == 0.0);
    CHECK(regularized_gamma_lower(shape, 1e-3) > 0.0);
    CHECK(regularized_gamma_lower(shape, 200.0) == Approx(1.0));
  }
}

TEST_CASE("decomposition invariants on families and random kernels") {
  std::vector<TransitionKernel> kernels;
  for (const auto& s : testing::small_specs()) kernels.push_back(build_family(s));
  for (auto& k : testing::random_reversible_batch(20, 12, 3)) kernels.push_back(std::move(k));
  for (const auto& k : kernels) {
    CAPTURE(k.label());
    const auto d = decompose(k);
    CHECK(d.lambdas()(0) == 0.0);
    CHECK(d.lambdas()(1) > 0.0);
    CHECK(d.lambda_max() <= 2.0 + 1e-9);
    for (Index i = 1; i < d.size(); ++i) CHECK(d.lambdas()(i) >= d.lambdas()(i - 1));
    CHECK(d.orthonormality_residual() <= 1e-9);
    const Vector oracle = testing::laplacian_eigenvalues_general(k);
    CHECK((oracle - d.lambdas()).cwiseAbs().maxCoeff() <= 1e-9);
    // Eigenfunction equation (I - P) f = lambda f.
    const Matrix L = Matrix::Identity(k.size(), k.size()) - k.P();
    CHECK((L * d.eigfuncs() - d.eigfuncs() * d.lambdas().asDiagonal()).cwiseAbs().maxCoeff() <=
          1e-9);
    // Heat kernel reconstruction against the matrix exponential.
    for (double t : {0.0, 0.3, 2.0, 10.0}) {
      const Matrix H = testing::heat_kernel_expm(k, t);
      for (Index x = 0; x < k.size(); x += 2) {
        for (Index y = 0; y < k.size(); y += 3) {
          CHECK(std::abs(heat_kernel(d, x, y, t) - H(x, y)) <= 1e-8);
        }
      }
    }
  }
}

TEST_CASE("sigma and rho match quadrature of the heat-diagonal moments") {
  for (const auto& k : testing::random_reversible_batch(20, 12, 17)) {
    CAPTURE(k.label());
    const auto d = decompose(k);
    for (int ell = 1; ell <= 4; ++ell) {
      const Vector rho_q = testing::moment_integrals(k, ell, 2.0 * ell * d.t_rel());
      const Vector sigma_q = testing::moment_integrals(k, ell, d.t_rel() * (50.0 + 15.0 * ell));
      for (Index x = 0; x < k.size(); ++x) {
        CHECK(rho_x_ell(d, x, ell) == Approx(rho_q(x)).epsilon(1e-6));
        CHECK(sigma_x_ell(d, x, ell) == Approx(sigma_q(x)).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("heat diagonal decreases and contracts at rate gap") {
  for (const auto& spec : testing::small_specs()) {
    CAPTURE(spec.label());
    const auto k = build_family(spec);
    const auto d = decompose(k);
    for (Index x = 0; x < k.size(); ++x) {
      double prev = heat_diag_ratio(d, x, 0.0);
      CHECK(prev == Approx(1.0 / k.pi()(x)).epsilon(1e-10));
      for (double t = 0.05; t < 20.0 * d.t_rel(); t *= 1.5) {
        const double cur = heat_diag_ratio(d, x, t);
        CHECK(cur < prev);
        prev = cur;
      }
      const double pix = k.pi()(x);
      for (double t : {0.0, 0.5, 2.0, 7.0}) {
        for (double s : {0.1, 1.0, 4.0}) {
          const double lhs = pix * (heat_diag_ratio(d, x, t + s) - 1.0);
          const double rhs = std::exp(-s / d.t_rel()) * pix * (heat_diag_ratio(d, x, t) - 1.0);
          CHECK(lhs > 0.0);
          CHECK(lhs <= rhs + 1e-15);
        }
      }
    }
  }
}

TEST_CASE("kappa sigma <= rho <= sigma for ell 1..4") {
  for (const auto& spec : testing::small_specs()) {
    const auto d = decompose(build_family(spec));
    for (int ell = 1; ell <= 4; ++ell) {
      for (Index x = 0; x < d.size(); ++x) {
        const double s = sigma_x_ell(d, x, ell), r = rho_x_ell(d, x, ell);
        CHECK(kappa_ell(ell) * s <= r * (1 + 1e-12));
        CHECK(r <= s * (1 + 1e-12));
      }
    }
  }
}

TEST_CASE("CSV exports carry a header naming ell") {
  const auto d = decompose(build_family(ChainFamilySpec::complete(3)));
  std::ostringstream spec, table;
  write_spectrum_csv(spec, d);
  std::istringstream lines(spec.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "lambda");
  const double expected[] = {0.0, 1.5, 1.5};
  for (double e : expected) {
    REQUIRE(std::getline(lines, line));
    CHECK(std::stod(line) == Approx(e).epsilon(1e-14));
  }
  CHECK_FALSE(std::getline(lines, line));
  write_sigma_rho_csv(table, d, {1, 2});
  CHECK(table.str().rfind("x,sigma_1,sigma_2,rho_1,rho_2\n0,", 0) == 0);
}
