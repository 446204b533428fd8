#include "mixbound/bounds.hpp"

#include "mixbound/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

namespace mixbound {

namespace {

constexpr double kE = std::numbers::e;

double scaled_slack(const BoundReport& r) { return r.slack / (1.0 + std::abs(r.rhs)); }

// States over which per-state bounds are checked; one suffices when transitive.
Index state_count_to_check(const ChainAnalysis& a) {
  return a.kernel.transitive() ? 1 : a.kernel.size();
}

void keep_worst(std::optional<BoundReport>& best, BoundReport r) {
  if (!best || scaled_slack(r) < scaled_slack(*best)) best = std::move(r);
}

Vector l2x_times(const ChainAnalysis& a, double eps) {
  const Index n = state_count_to_check(a);
  Vector out(n);
  for (Index x = 0; x < n; ++x) out(x) = a.profile.mixing_time(ProfileKind::L2x, eps, x);
  return out;
}

std::vector<BoundReport> thm1_impl(const ChainAnalysis& a, double eps, const Vector& t2x) {
  const double t_rel = a.t_rel();
  const Vector& tpi = a.hitting.t_pi_to;
  std::vector<BoundReport> out;

  const double t_inf = a.profile.mixing_time(ProfileKind::Linf, eps);
  out.push_back(BoundReport::make(
      "thm1.linf", t_inf,
      t_rel * std::max(1.0, std::log(a.hitting.max_t_pi_to() / (eps * t_rel)))));

  std::optional<BoundReport> worst_x;
  for (Index x = 0; x < t2x.size(); ++x) {
    const double rhs = 0.5 * t_rel * std::max(1.0, std::log(tpi(x) / (eps * eps * t_rel)));
    keep_worst(worst_x, BoundReport::make("thm1.l2x", t2x(x), rhs).with_x(x));
  }
  out.push_back(*worst_x);

  const double t_ave = a.profile.mixing_time(ProfileKind::AveL2, 0.5);
  out.push_back(BoundReport::make("thm1.ave", t_ave,
                                  0.5 * t_rel * std::log(4.0 * a.hitting.t_target / t_rel))
                    .with_eps(0.5));
  out[0].with_eps(eps);
  out[1].with_eps(eps);
  return out;
}

std::vector<BoundReport> thm2_impl(const ChainAnalysis& a, int ell, double eps, const Vector& t2x) {
  const double t_rel = a.t_rel();
  const double t_rel_l = std::pow(t_rel, ell);
  const double L = ell;
  std::vector<BoundReport> out;

  const double t_ave = a.profile.mixing_time(ProfileKind::AveL2, eps);
  const double Q = q_ell(a.decomp, ell);
  out.push_back(BoundReport::make(
      "thm2.ave", t_ave, 0.5 * t_rel * std::max(std::log(Q / (eps * eps * t_rel_l)), L)));

  std::optional<BoundReport> worst_x;
  for (Index x = 0; x < t2x.size(); ++x) {
    const double sigma = sigma_x_ell(a.decomp, x, ell);
    const double rhs = 0.5 * t_rel * std::max(std::log(sigma / (eps * eps * t_rel_l)), L);
    keep_worst(worst_x, BoundReport::make("thm2.l2x", t2x(x), rhs).with_x(x));
  }
  out.push_back(*worst_x);

  double sigma_max = 0.0;
  for (Index x = 0; x < state_count_to_check(a); ++x) {
    sigma_max = std::max(sigma_max, sigma_x_ell(a.decomp, x, ell));
  }
  const double t_inf = a.profile.mixing_time(ProfileKind::Linf, eps);
  out.push_back(BoundReport::make("thm2.linf", t_inf,
                                  t_rel * std::max(std::log(sigma_max / (eps * t_rel_l)), L)));
  for (auto& r : out) r.with_eps(eps).with_ell(ell);
  return out;
}

void check_eps(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw BadEps("eps must be positive");
}

void check_ell(int ell) {
  if (ell < 1) throw BadRange("ell must be at least 1");
}

}  // namespace

std::vector<BoundReport> thm1_report(const ChainAnalysis& a, double eps) {
  check_eps(eps);
  return thm1_impl(a, eps, l2x_times(a, eps));
}

std::vector<BoundReport> thm2_report(const ChainAnalysis& a, int ell, double eps) {
  check_eps(eps);
  check_ell(ell);
  return thm2_impl(a, ell, eps, l2x_times(a, eps));
}

std::vector<BoundReport> prop12_report(const ChainAnalysis& a, int ell) {
  check_ell(ell);
  const double kappa = kappa_ell(ell);
  std::optional<BoundReport> lower;
  std::optional<BoundReport> upper;
  for (Index x = 0; x < state_count_to_check(a); ++x) {
    const double sigma = sigma_x_ell(a.decomp, x, ell);
    const double rho = rho_x_ell(a.decomp, x, ell);
    keep_worst(lower, BoundReport::make("prop12.kappa_sigma_le_rho", kappa * sigma, rho).with_x(x));
    keep_worst(upper, BoundReport::make("prop12.rho_le_sigma", rho, sigma).with_x(x));
  }
  const Vector& pi = a.kernel.pi();
  double avg = 0.0;
  for (Index x = 0; x < a.kernel.size(); ++x) avg += pi(x) * sigma_x_ell(a.decomp, x, ell);
  const double Q = q_ell(a.decomp, ell);
  std::vector<BoundReport> out{*lower, *upper,
                               BoundReport::make("prop12.pi_avg_sigma_eq_Q", std::abs(avg - Q),
                                                 1e-8 * (1.0 + Q))};
  for (auto& r : out) r.with_ell(ell);
  return out;
}

std::vector<BoundReport> lemma22_check(const ChainAnalysis& a, Index x, double M) {
  if (!(M > 0.0)) throw BadRange("lemma22_check: M must be positive");
  const Vector& lam = a.decomp.lambdas();
  const Matrix& F = a.decomp.eigfuncs();
  const double pix = a.kernel.pi()(x);
  const double T = M * a.t_rel();

  // H_s(x,x) - pi(x) = sum_{i>=2} c_i exp(-lambda_i s), c_i = pi(x) f_i(x)^2.
  double full0 = 0.0, trunc0 = 0.0, full1 = 0.0, trunc1 = 0.0;
  for (Index i = 1; i < lam.size(); ++i) {
    const double c = pix * F(x, i) * F(x, i);
    const double l = lam(i);
    const double u = l * T;
    full0 += c / l;
    trunc0 += c * -std::expm1(-u) / l;
    full1 += c / (l * l);
    trunc1 += c * (-std::expm1(-u) - u * std::exp(-u)) / (l * l);
  }
  const double q = std::exp(-M);
  const double one_minus_q = -std::expm1(-M);
  // With f(s) = H_s(x,x) - pi(x) and f(iT + r) <= q^i f(r), the piece of the
  // weighted integral on [iT, (i+1)T] is at most q^i (i T F_0 + G_0), where
  // F_0 and G_0 are the plain and weighted integrals over [0, T].
  const double weighted_rhs = trunc1 / one_minus_q + T * trunc0 * q / (one_minus_q * one_minus_q);
  std::vector<BoundReport> out{BoundReport::make("lemma22.integral", full0, trunc0 / one_minus_q),
                               BoundReport::make("lemma22.weighted", full1, weighted_rhs)};
  for (auto& r : out) r.with_x(x).with_M(M);
  return out;
}

double lemma22_stated_weighted_factor(double M) {
  if (!(M > 0.0)) throw BadRange("lemma22_stated_weighted_factor: M must be positive");
  const double q = std::exp(-M);
  return 1.0 + q * (2.0 - q) / ((1.0 - q) * (1.0 - q));
}

std::vector<BoundReport> lemma22_report(const ChainAnalysis& a, double M) {
  std::optional<BoundReport> plain;
  std::optional<BoundReport> weighted;
  for (Index x = 0; x < state_count_to_check(a); ++x) {
    auto r = lemma22_check(a, x, M);
    keep_worst(plain, r[0]);
    keep_worst(weighted, r[1]);
  }
  return {*plain, *weighted};
}

std::vector<BoundReport> fact21_report(const ChainAnalysis& a) {
  const double tmax = a.hitting.max_t_pi_to();
  const double t_hit = a.hitting.t_hit;
  const double mid = a.hitting.t_target + tmax;
  return {BoundReport::make("fact21.tpi_le_thit", tmax, t_hit),
          BoundReport::make("fact21.thit_le_ttarget_plus_tpi", t_hit, mid),
          BoundReport::make("fact21.ttarget_plus_tpi_le_2tpi", mid, 2.0 * tmax)};
}

std::vector<BoundReport> corollary23_report(const ChainAnalysis& a) {
  Index x = 0;
  a.hitting.t_pi_to.maxCoeff(&x);
  const double tmax = a.hitting.t_pi_to(x);
  const double t_rel = a.t_rel();
  const double pi_min = a.kernel.pi_min();
  const Vector& lam = a.decomp.lambdas();
  const Matrix& F = a.decomp.eigfuncs();
  const double pix = a.kernel.pi()(x);
  double head = 0.0;  // int_0^{t_rel} (H_s(x,x) - pi(x)) ds
  for (Index i = 1; i < lam.size(); ++i) {
    head += pix * F(x, i) * F(x, i) * -std::expm1(-lam(i) * t_rel) / lam(i);
  }
  const double c = 2.0 * kE / (kE - 1.0);
  const double mid = c * head / pi_min;
  std::vector<BoundReport> out{
      BoundReport::make("cor23.thit_le_2tpi", a.hitting.t_hit, 2.0 * tmax),
      BoundReport::make("cor23.2tpi_le_integral", 2.0 * tmax, mid),
      BoundReport::make("cor23.integral_le_pimin", mid, c * t_rel * (1.0 - pi_min) / pi_min)};
  for (auto& r : out) r.with_x(x);
  return out;
}

std::vector<BoundReport> extra_inequalities(const ChainAnalysis& a, int ell) {
  check_ell(ell);
  const double L = ell;
  std::optional<BoundReport> worst_x;
  for (Index x = 0; x < state_count_to_check(a); ++x) {
    const double t2x = a.profile.mixing_time(ProfileKind::L2x, 0.5, x);
    const double rhs = 2.0 * L * std::pow(sigma_x_ell(a.decomp, x, ell), 1.0 / L);
    keep_worst(worst_x, BoundReport::make("extra.l2x_moment", t2x, rhs).with_x(x));
  }
  const double t_ave = a.profile.mixing_time(ProfileKind::AveL2, 0.5);
  std::vector<BoundReport> out{
      *worst_x, BoundReport::make("extra.ave_moment", t_ave,
                                  2.0 * L * std::pow(q_ell(a.decomp, ell), 1.0 / L))};
  for (auto& r : out) r.with_ell(ell).with_eps(0.5);
  return out;
}

std::vector<BoundReport> hitting_tail_report(const ChainAnalysis& a) {
  static constexpr double kGrid[] = {0.0, 0.1, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0, 8.0};
  const double t_hit = a.hitting.t_hit;
  std::optional<BoundReport> tail;
  std::optional<BoundReport> moment;
  std::optional<BoundReport> aging;
  for (Index y = 0; y < state_count_to_check(a); ++y) {
    const HittingTailLaw law(a.kernel, y);
    for (double g : kGrid) {
      const double t = g * t_hit;
      keep_worst(tail,
                 BoundReport::make("tail.exp_bound", law.tail(t), std::exp(-t / t_hit)).with_x(y));
      for (double h : kGrid) {
        const double s = h * t_hit;
        keep_worst(aging,
                   BoundReport::make("tail.aging", law.tail(t), law.conditional_tail(t, s)).with_x(y));
      }
    }
    keep_worst(moment, BoundReport::make("tail.second_moment", law.second_moment(),
                                         2.0 * t_hit * t_hit)
                           .with_x(y));
  }
  return {*tail, *moment, *aging};
}

std::vector<BoundReport> full_sweep(const ChainAnalysis& a, const std::vector<double>& eps_list,
                                    const std::vector<int>& ell_list) {
  std::vector<BoundReport> out;
  auto append = [&](std::vector<BoundReport> rs) {
    for (auto& r : rs) out.push_back(std::move(r));
  };
  for (double eps : eps_list) {
    check_eps(eps);
    const Vector t2x = l2x_times(a, eps);
    append(thm1_impl(a, eps, t2x));
    for (int ell : ell_list) {
      check_ell(ell);
      append(thm2_impl(a, ell, eps, t2x));
    }
    if (eps < 1.0) append(hierarchy_check(a.profile, a.hitting.t_hit, eps));
  }
  for (int ell : ell_list) {
    append(prop12_report(a, ell));
    append(extra_inequalities(a, ell));
  }
  for (double M : {1.0, 2.0, 5.0}) append(lemma22_report(a, M));
  append(fact21_report(a));
  append(corollary23_report(a));
  append(hitting_tail_report(a));
  for (auto& r : out) r.with_kernel(a.label());
  return out;
}

OptResult opt_verify(const OptProblem& p) {
  if (!(p.lambda2 > 0.0) || !(p.lambda2 <= p.lambdan) || !std::isfinite(p.lambdan) ||
      !(p.t > 0.0) || !(p.budget > 0.0) || p.ell < 1) {
    throw BadRange("opt_verify: need 0 < lambda2 <= lambdan, t > 0, budget > 0, ell >= 1");
  }
  const double L = p.ell;
  auto h = [&](double beta) { return std::pow(beta, L) * std::exp(-2.0 * beta * p.t); };

  // Golden-section search for the maximum of the unimodal h on [lambda2, lambdan].
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = p.lambda2, hi = p.lambdan;
  double c = hi - invphi * (hi - lo), d = lo + invphi * (hi - lo);
  double hc = h(c), hd = h(d);
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    if (hc >= hd) {
      hi = d;
      d = c;
      hd = hc;
      c = hi - invphi * (hi - lo);
      hc = h(c);
    } else {
      lo = c;
      c = d;
      hc = hd;
      d = lo + invphi * (hi - lo);
      hd = h(d);
    }
  }
  double best_beta = 0.5 * (lo + hi);
  double best = h(best_beta);
  // Endpoints win ties, up to rounding in h, so the extremal case reports
  // exactly lambda2 even when h is flat there (t = ell / (2 lambda2)).
  for (double beta : {p.lambdan, p.lambda2}) {
    if (h(beta) >= best * (1.0 - 1e-14)) {
      best = h(beta);
      best_beta = beta;
    }
  }

  OptResult r;
  r.numeric_max = p.budget * best;
  r.claimed = p.budget * h(p.lambda2);
  r.argmax_beta = best_beta;
  r.extremal_regime = p.t >= L / (2.0 * p.lambda2);
  r.certified = !r.extremal_regime ||
                (best_beta == p.lambda2 &&
                 std::abs(r.numeric_max - r.claimed) <= 1e-10 * std::abs(r.claimed));
  return r;
}

Corollary11Table corollary11_diag(const std::vector<ChainFamilySpec>& specs) {
  if (specs.size() < 3) throw BadRange("corollary11_diag: need at least three sizes");
  Corollary11Table table;
  for (const auto& spec : specs) {
    const ChainAnalysis a(build_family(spec));
    Corollary11Row row;
    row.label = a.label();
    row.t_rel = a.t_rel();
    row.t_hit = a.hitting.t_hit;
    row.t_inf = a.profile.mixing_time(ProfileKind::Linf, 0.5);
    row.t_target = a.hitting.t_target;
    row.t_ave = a.profile.mixing_time(ProfileKind::AveL2, 0.5);
    row.mix_over_hit = row.t_inf / row.t_hit;
    row.rel_over_hit = row.t_rel / row.t_hit;
    table.rows.push_back(row);
  }
  const auto& first = table.rows.front();
  const auto& last = table.rows.back();
  table.mix_ratio_shrinks = last.mix_over_hit < 0.5 * first.mix_over_hit;
  table.rel_ratio_shrinks = last.rel_over_hit < 0.5 * first.rel_over_hit;
  table.co_trend = table.mix_ratio_shrinks == table.rel_ratio_shrinks;
  return table;
}

}  // namespace mixbound
