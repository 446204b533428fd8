#pragma once

#include "mixbound/analysis.hpp"
#include "mixbound/chain.hpp"

#include <cstdint>
#include <queue>
#include <random>
#include <string>
#include <vector>

namespace mixbound {

/// 64-bit mixing step of the splitmix64 generator.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of replicate r, derived from the master seed alone.
std::uint64_t replicate_seed(std::uint64_t master_seed, std::uint64_t r);

/// mt19937_64 with platform-independent uniform and exponential draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double exponential(double rate);

 private:
  std::mt19937_64 gen_;
};

/// Row-wise cumulative transition probabilities over the nonzero entries.
class JumpTable {
 public:
  explicit JumpTable(const TransitionKernel& kernel);

  Index size() const { return static_cast<Index>(row_start_.size()) - 1; }
  /// Next state from `from`, given u uniform on [0, 1).
  Index next(Index from, double u) const;
  /// A state drawn from pi, given u uniform on [0, 1).
  Index stationary(double u) const;

 private:
  std::vector<std::size_t> row_start_;
  std::vector<Index> cols_;
  std::vector<double> cumulative_;
  std::vector<double> pi_cumulative_;
};

/// Event-driven branching random walk. Every particle carries one Exp(1 + gamma)
/// clock; when it rings the particle jumps (probability 1/(1 + gamma)) or splits
/// into two particles at its current state. A global min-heap orders the clocks.
class BranchingWalk {
 public:
  struct Event {
    double time = 0.0;
    std::size_t particle = 0;
    bool split = false;
    Index from = 0;
    Index to = 0;  ///< equals `from` for a split
  };

  BranchingWalk(const JumpTable& table, double gamma, Rng& rng);

  void add_particle(Index state, double time);
  double next_time() const;
  /// Pops and applies the earliest event.
  Event step();
  std::size_t population() const { return state_.size(); }
  Index state(std::size_t particle) const { return state_[particle]; }

 private:
  struct Clock {
    double time;
    std::size_t particle;
    bool operator>(const Clock& o) const { return time > o.time; }
  };

  const JumpTable& table_;
  double gamma_;
  Rng& rng_;
  std::vector<Index> state_;
  std::priority_queue<Clock, std::vector<Clock>, std::greater<>> clocks_;
};

struct BRWCaps {
  std::size_t max_particles = 100000;
  double max_time = 0.0;
};

struct ReplicateOutcome {
  double time = 0.0;
  bool censored = false;
};

/// First time a particle occupies `target`; time 0 when start == target.
ReplicateOutcome run_hit(const JumpTable& table, Index start, Index target, double gamma,
                         const BRWCaps& caps, Rng& rng);

/// First time a particle of one walk occupies a state previously visited by the
/// other walk. Visits begin at time 0; with gamma == 0 these are plain walks.
/// Particle caps apply to the combined population.
ReplicateOutcome run_intersection(const JumpTable& table, Index start_a, Index start_b,
                                  double gamma, const BRWCaps& caps, Rng& rng);

struct BRWConfig {
  double gamma = 0.0;
  int replicates = 1000;
  std::uint64_t master_seed = 0;
  BRWCaps caps;

  /// gamma = gap, max_time = 50 t_rel log(1 + t_hit / t_rel).
  static BRWConfig for_chain(const ChainAnalysis& a, int replicates, std::uint64_t master_seed);
  /// Throws BadRange unless gamma > 0 (or >= 0 when `allow_zero_gamma`),
  /// replicates >= 1 and both caps are positive.
  void check(bool allow_zero_gamma = false) const;
};

enum class BRWTarget { Hit, Intersection, Plain };

std::string target_name(BRWTarget t);

struct BRWEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  int replicates_used = 0;
  int replicates = 0;
  double censor_rate = 0.0;
  BRWTarget target = BRWTarget::Hit;
  Index x = -1;  ///< hit target; -1 for intersections
};

/// Mean and standard error over uncensored outcomes, with compensated
/// summation. Throws AllCensored when nothing is left.
BRWEstimate aggregate(const std::vector<ReplicateOutcome>& outcomes, BRWTarget target, Index x);

/// Starting particle(s) drawn from pi. Replicates run in parallel, each on its
/// own seeded stream, so results do not depend on the thread count.
BRWEstimate simulate_hit(const TransitionKernel& kernel, Index x, const BRWConfig& cfg);
BRWEstimate simulate_intersection(const TransitionKernel& kernel, const BRWConfig& cfg);
/// Two rate-1 walks without branching; cfg.gamma is ignored.
BRWEstimate plain_intersection(const TransitionKernel& kernel, const BRWConfig& cfg);

/// Monte-Carlo mean and standard error of the particle count at each time in
/// `times` (nondecreasing), starting from one particle at state 0.
struct PopulationPoint {
  double time = 0.0;
  double mean = 0.0;
  double std_error = 0.0;
};
std::vector<PopulationPoint> mean_population(const TransitionKernel& kernel, double gamma,
                                             const std::vector<double>& times, int replicates,
                                             std::uint64_t master_seed);

}  // namespace mixbound
