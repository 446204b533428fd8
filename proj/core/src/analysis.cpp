#include "mixbound/analysis.hpp"

#include "mixbound/chain_io.hpp"
#include "mixbound/report.hpp"

#include <ostream>

namespace mixbound {

ChainAnalysis::ChainAnalysis(TransitionKernel k, HitSolver solver)
    : kernel(std::move(k)),
      decomp(decompose(kernel)),
      hitting(hit_times(kernel, solver)),
      profile(kernel, decomp) {}

ChainSummary summarize(const ChainAnalysis& a) {
  ChainSummary s;
  s.label = a.label();
  s.n = a.kernel.size();
  s.gap = a.decomp.gap();
  s.t_rel = a.decomp.t_rel();
  s.t_hit = a.hitting.t_hit;
  s.t_target = a.hitting.t_target;
  s.t_pi_to_min = a.hitting.min_t_pi_to();
  s.t_pi_to_max = a.hitting.max_t_pi_to();
  for (int l = 1; l <= 4; ++l) s.Q[l - 1] = q_ell(a.decomp, l);
  s.t_inf = a.profile.mixing_time(ProfileKind::Linf, 0.5);
  s.t_l2 = a.profile.mixing_time(ProfileKind::L2, 0.5);
  s.t_tv = a.profile.mixing_time(ProfileKind::TV, 0.5);
  s.t_ave = a.profile.mixing_time(ProfileKind::AveL2, 0.5);
  return s;
}

void write_summary_header(std::ostream& os) {
  os << "kernel,n,gap,t_rel,t_hit,t_target,t_pi_to_min,t_pi_to_max,Q1,Q2,Q3,Q4,"
        "t_mix_inf,t_mix_l2,t_mix_tv,t_ave_mix\n";
}

void write_summary_row(std::ostream& os, const ChainSummary& s) {
  os << csv_field(s.label) << ',' << s.n;
  for (double v : {s.gap, s.t_rel, s.t_hit, s.t_target, s.t_pi_to_min, s.t_pi_to_max, s.Q[0],
                   s.Q[1], s.Q[2], s.Q[3], s.t_inf, s.t_l2, s.t_tv, s.t_ave}) {
    os << ',' << format_number(v);
  }
  os << '\n';
}

void write_summary_csv(std::ostream& os, const ChainSummary& s) {
  write_summary_header(os);
  write_summary_row(os, s);
}

}  // namespace mixbound
