#pragma once

#include "mixbound/chain.hpp"
#include "mixbound/hitting.hpp"
#include "mixbound/mixing.hpp"
#include "mixbound/spectral.hpp"

#include <array>
#include <iosfwd>
#include <string>

namespace mixbound {

/// Everything exact that can be derived from one kernel, computed once.
struct ChainAnalysis {
  explicit ChainAnalysis(TransitionKernel k, HitSolver solver = HitSolver::Auto);

  TransitionKernel kernel;
  SpectralDecomposition decomp;
  HittingSummary hitting;
  MixingProfile profile;

  const std::string& label() const { return kernel.label(); }
  double t_rel() const { return decomp.t_rel(); }
};

struct ChainSummary {
  std::string label;
  Index n = 0;
  double gap = 0.0;
  double t_rel = 0.0;
  double t_hit = 0.0;
  double t_target = 0.0;
  double t_pi_to_min = 0.0;
  double t_pi_to_max = 0.0;
  std::array<double, 4> Q{};  ///< Q_1..Q_4
  // Mixing times at eps = 1/2.
  double t_inf = 0.0;
  double t_l2 = 0.0;
  double t_tv = 0.0;
  double t_ave = 0.0;
};

ChainSummary summarize(const ChainAnalysis& analysis);

void write_summary_header(std::ostream& os);
void write_summary_row(std::ostream& os, const ChainSummary& summary);
/// Header line plus one data row.
void write_summary_csv(std::ostream& os, const ChainSummary& summary);

}  // namespace mixbound
