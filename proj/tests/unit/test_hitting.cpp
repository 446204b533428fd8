#include <doctest.h>

#include "kernel_set.hpp"
#include "mixbound/errors.hpp"
#include "mixbound/hitting.hpp"
#include "oracles.hpp"
#include "random_kernels.hpp"

#include <cmath>

using namespace mixbound;
using doctest::Approx;

namespace {

TransitionKernel two_state_half() {
  Matrix P(2, 2);
  P << 0.5, 0.5, 0.5, 0.5;
  return TransitionKernel::from_matrix(P, "two_state");
}

}  // namespace

TEST_CASE("complete(4) hitting summary") {
  const auto k = build_family(ChainFamilySpec::complete(4));
  for (auto solver : {HitSolver::FundamentalMatrix, HitSolver::RestrictedColumns}) {
    const auto h = hit_times(k, solver);
    for (Index x = 0; x < 4; ++x) {
      CHECK(h.t_pi_to(x) == Approx(2.25).epsilon(1e-12));
      for (Index y = 0; y < 4; ++y) CHECK(h.hit_matrix(x, y) == Approx(x == y ? 0.0 : 3.0));
    }
    CHECK(h.t_hit == Approx(3.0).epsilon(1e-12));
    CHECK(h.t_target == Approx(2.25).epsilon(1e-12));
  }
}

TEST_CASE("cycle(4) hitting times are d (4 - d)") {
  const auto h = hit_times(build_family(ChainFamilySpec::cycle(4)));
  CHECK(h.hit_matrix(0, 1) == Approx(3.0));
  CHECK(h.hit_matrix(0, 2) == Approx(4.0));
  CHECK(h.hit_matrix(0, 3) == Approx(3.0));
  CHECK(h.t_target == Approx(2.5));
}

TEST_CASE("two-state p = q = 1/2") {
  const auto k = two_state_half();
  const auto h = hit_times(k);
  CHECK(h.hit_matrix(0, 1) == Approx(2.0));
  CHECK(h.t_target == Approx(1.0));
  CHECK(second_moment_pi(k, 0) == Approx(4.0).epsilon(1e-12));
}

TEST_CASE("hitting tails on complete(4)") {
  const auto k = build_family(ChainFamilySpec::complete(4));
  for (Index y = 0; y < 4; ++y) {
    CHECK(hitting_tail(k, y, 0.0) == Approx(0.75).epsilon(1e-13));
    CHECK(hitting_tail(k, y, 1.0) == Approx(0.75 * std::exp(-1.0 / 3)).epsilon(1e-13));
    for (double t = 0.0; t < 30.0; t += 0.7) CHECK(hitting_tail(k, y, t) <= std::exp(-t / 3.0));
    CHECK(second_moment_pi(k, y) == Approx(13.5).epsilon(1e-12));
  }
  const HittingTailLaw law(k, 0);
  CHECK(law.mean() == Approx(2.25).epsilon(1e-12));
}

TEST_CASE("hitting matrix agrees with QR solves on well-conditioned kernels") {
  // A backward-stable dense solve only resolves small entries to relative
  // accuracy ~ 1e-16 / pi_min, so the QR oracle is used where that is tight.
  std::vector<TransitionKernel> kernels;
  for (const auto& s : testing::small_specs()) kernels.push_back(build_family(s));
  for (auto& k : testing::random_reversible_batch(50, 20, 5)) kernels.push_back(std::move(k));
  for (const auto& k : kernels) {
    if (k.pi_min() < 1e-6) continue;
    CAPTURE(k.label());
    const Matrix oracle = testing::hit_matrix_qr(k);
    const double scale = 1.0 + oracle.cwiseAbs().maxCoeff();
    for (auto solver : {HitSolver::Auto, HitSolver::FundamentalMatrix,
                        HitSolver::RestrictedColumns}) {
      const auto h = hit_times(k, solver);
      CHECK((h.hit_matrix - oracle).cwiseAbs().maxCoeff() <= 1e-9 * scale);
      CHECK(h.hit_matrix.diagonal().cwiseAbs().maxCoeff() == 0.0);
      CHECK(h.t_hit == h.hit_matrix.maxCoeff());
    }
  }
}

TEST_CASE("graded birth-death chains keep full relative accuracy") {
  const ChainFamilySpec specs[] = {ChainFamilySpec::dlp(10, 0.2, 0.05, 4),
                                   ChainFamilySpec::dlp(20, 0.3, 0.05, 5),
                                   ChainFamilySpec::dlp(50, 0.5, 0.01, 50)};
  for (const auto& spec : specs) {
    const auto k = build_family(spec);
    CAPTURE(k.label());
    REQUIRE(is_birth_death(k));
    const auto bd = hit_times(k, HitSolver::BirthDeath);
    const auto rc = hit_times(k, HitSolver::RestrictedColumns);
    const auto fm = hit_times(k, HitSolver::FundamentalMatrix);
    const auto d = decompose(k);
    CHECK(hit_times(k).hit_matrix == bd.hit_matrix);
    const Index n = k.size();
    for (Index x = 0; x < n; ++x) {
      for (Index y = 0; y < n; ++y) {
        if (x != y) CHECK(rc.hit_matrix(x, y) == Approx(bd.hit_matrix(x, y)).epsilon(1e-12));
      }
      CHECK(fm.t_pi_to(x) == Approx(bd.t_pi_to(x)).epsilon(1e-12));
      CHECK(sigma_x_ell(d, x, 1) == Approx(bd.t_pi_to(x)).epsilon(1e-8));
    }
    // Commute time across an edge equals the inverse edge conductance.
    for (Index i = 0; i + 1 < n; ++i) {
      const double commute = rc.hit_matrix(i, i + 1) + rc.hit_matrix(i + 1, i);
      CHECK(commute == Approx(1.0 / (k.pi()(i) * k.P()(i, i + 1))).epsilon(1e-12));
    }
    CHECK(bd.t_target == Approx(q_ell(d, 1)).epsilon(1e-8));
  }
  CHECK_THROWS_AS(hit_times(build_family(ChainFamilySpec::cycle(5)), HitSolver::BirthDeath),
                  BadRange);
  CHECK_FALSE(is_birth_death(build_family(ChainFamilySpec::cycle(5))));
  CHECK(is_birth_death(build_family(ChainFamilySpec::complete(2))));
}

TEST_CASE("solver paths agree on stationary-start times") {
  for (const auto& k : testing::random_reversible_batch(30, 20, 41)) {
    const auto fm = hit_times(k, HitSolver::FundamentalMatrix);
    const auto rc = hit_times(k, HitSolver::RestrictedColumns);
    for (Index x = 0; x < k.size(); ++x) {
      CHECK(fm.t_pi_to(x) == Approx(rc.t_pi_to(x)).epsilon(1e-10));
    }
  }
}

TEST_CASE("random target, eigentime and stationary-start identities") {
  std::vector<TransitionKernel> kernels;
  for (const auto& s : testing::small_specs()) kernels.push_back(build_family(s));
  for (auto& k : testing::random_reversible_batch(50, 20, 9)) kernels.push_back(std::move(k));
  for (const auto& k : kernels) {
    CAPTURE(k.label());
    const auto h = hit_times(k);
    const auto d = decompose(k);
    const Vector& r = h.target_by_start;
    const double mean = r.mean();
    CHECK((r.array() - mean).square().mean() <= 1e-16 * h.t_target * h.t_target);
    CHECK(eigentime_check(h, d) <= 1e-8 * (1 + h.t_target));
    CHECK(eigentime_check(k, d) <= 1e-9 * (1 + h.t_target));
    for (Index x = 0; x < k.size(); ++x) {
      CHECK(h.t_pi_to(x) == Approx(sigma_x_ell(d, x, 1)).epsilon(1e-8));
    }
    // max t_pi <= t_hit <= t_target + max t_pi <= 2 max t_pi
    const double tmax = h.max_t_pi_to();
    CHECK(tmax <= h.t_hit * (1 + 1e-12));
    CHECK(h.t_hit <= (h.t_target + tmax) * (1 + 1e-12));
    CHECK(h.t_target <= tmax * (1 + 1e-12));
  }
}

TEST_CASE("tail law: t = 0 mass, monotonicity, exponential bound and aging") {
  std::vector<TransitionKernel> kernels;
  for (const auto& s : testing::small_specs()) kernels.push_back(build_family(s));
  for (auto& k : testing::random_reversible_batch(15, 12, 21)) kernels.push_back(std::move(k));
  for (const auto& k : kernels) {
    CAPTURE(k.label());
    const auto h = hit_times(k);
    for (Index y = 0; y < k.size(); ++y) {
      const HittingTailLaw law(k, y);
      CHECK(law.tail(0.0) == Approx(1.0 - k.pi()(y)).epsilon(1e-12));
      // The smallest Dirichlet rate is resolved to absolute, not relative,
      // accuracy by the symmetric eigensolver.
      const double tol = 1e-8 + 1e-15 / k.pi_min();
      CHECK(law.mean() == Approx(h.t_pi_to(y)).epsilon(tol));
      CHECK(law.second_moment() <= 2 * h.t_hit * h.t_hit + 1e-8);
      double prev = law.tail(0.0);
      for (int i = 1; i <= 10; ++i) {
        const double t = 0.3 * i * h.t_hit;
        const double cur = law.tail(t);
        CHECK(cur <= prev + 1e-15);
        CHECK(cur <= std::exp(-t / h.t_hit) + 1e-12);
        prev = cur;
        for (int j = 0; j < 10; ++j) {
          const double s = 0.3 * j * h.t_hit;
          CHECK(law.conditional_tail(t, s) >= cur - 1e-9);
        }
      }
    }
  }
}

TEST_CASE("cycle(8) second moments stay below 2 t_hit^2") {
  const auto k = build_family(ChainFamilySpec::cycle(8));
  const double t_hit = hit_times(k).t_hit;
  for (Index y = 0; y < 8; ++y) CHECK(second_moment_pi(k, y) <= 2 * t_hit * t_hit);
}
