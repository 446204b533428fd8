#include "mixbound/brw.hpp"

#include "mixbound/errors.hpp"
#include "mixbound/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace mixbound {

namespace {

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    comp_ += std::abs(sum_) >= std::abs(v) ? (sum_ - t) + v : (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

std::vector<double> cumulate(const std::vector<double>& w) {
  std::vector<double> c(w.size());
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) c[i] = (s += w[i]);
  return c;
}

// Index of the first cumulative value exceeding u * total within [begin, end).
std::size_t pick(const std::vector<double>& cum, std::size_t begin, std::size_t end, double u) {
  const double target = u * cum[end - 1];
  auto it = std::upper_bound(cum.begin() + static_cast<std::ptrdiff_t>(begin),
                             cum.begin() + static_cast<std::ptrdiff_t>(end), target);
  const auto idx = static_cast<std::size_t>(it - cum.begin());
  return std::min(idx, end - 1);
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  std::uint64_t z = x + 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t replicate_seed(std::uint64_t master_seed, std::uint64_t r) {
  return splitmix64(splitmix64(master_seed) + r);
}

double Rng::exponential(double rate) { return -std::log1p(-uniform()) / rate; }

JumpTable::JumpTable(const TransitionKernel& kernel) {
  const Matrix& P = kernel.P();
  const Index n = kernel.size();
  row_start_.push_back(0);
  for (Index i = 0; i < n; ++i) {
    double s = 0.0;
    for (Index j = 0; j < n; ++j) {
      if (P(i, j) > 0.0) {
        s += P(i, j);
        cols_.push_back(j);
        cumulative_.push_back(s);
      }
    }
    row_start_.push_back(cols_.size());
  }
  pi_cumulative_ = cumulate(std::vector<double>(kernel.pi().begin(), kernel.pi().end()));
}

Index JumpTable::next(Index from, double u) const {
  const auto f = static_cast<std::size_t>(from);
  return cols_[pick(cumulative_, row_start_[f], row_start_[f + 1], u)];
}

Index JumpTable::stationary(double u) const {
  return static_cast<Index>(pick(pi_cumulative_, 0, pi_cumulative_.size(), u));
}

BranchingWalk::BranchingWalk(const JumpTable& table, double gamma, Rng& rng)
    : table_(table), gamma_(gamma), rng_(rng) {}

void BranchingWalk::add_particle(Index state, double time) {
  state_.push_back(state);
  clocks_.push(Clock{time + rng_.exponential(1.0 + gamma_), state_.size() - 1});
}

double BranchingWalk::next_time() const { return clocks_.top().time; }

BranchingWalk::Event BranchingWalk::step() {
  const Clock c = clocks_.top();
  clocks_.pop();
  Event e;
  e.time = c.time;
  e.particle = c.particle;
  e.from = state_[c.particle];
  e.split = rng_.uniform() * (1.0 + gamma_) >= 1.0;
  if (e.split) {
    e.to = e.from;
  } else {
    e.to = table_.next(e.from, rng_.uniform());
    state_[c.particle] = e.to;
  }
  clocks_.push(Clock{c.time + rng_.exponential(1.0 + gamma_), c.particle});
  if (e.split) add_particle(e.from, c.time);
  return e;
}

ReplicateOutcome run_hit(const JumpTable& table, Index start, Index target, double gamma,
                         const BRWCaps& caps, Rng& rng) {
  if (start == target) return {0.0, false};
  BranchingWalk walk(table, gamma, rng);
  walk.add_particle(start, 0.0);
  for (;;) {
    if (walk.next_time() > caps.max_time) return {caps.max_time, true};
    const auto e = walk.step();
    if (!e.split && e.to == target) return {e.time, false};
    if (walk.population() > caps.max_particles) return {e.time, true};
  }
}

ReplicateOutcome run_intersection(const JumpTable& table, Index start_a, Index start_b,
                                  double gamma, const BRWCaps& caps, Rng& rng) {
  if (start_a == start_b) return {0.0, false};
  const auto n = static_cast<std::size_t>(table.size());
  std::vector<char> visited[2] = {std::vector<char>(n, 0), std::vector<char>(n, 0)};
  visited[0][static_cast<std::size_t>(start_a)] = 1;
  visited[1][static_cast<std::size_t>(start_b)] = 1;
  BranchingWalk walks[2] = {BranchingWalk(table, gamma, rng), BranchingWalk(table, gamma, rng)};
  walks[0].add_particle(start_a, 0.0);
  walks[1].add_particle(start_b, 0.0);
  for (;;) {
    const int p = walks[1].next_time() < walks[0].next_time() ? 1 : 0;
    if (walks[p].next_time() > caps.max_time) return {caps.max_time, true};
    const auto e = walks[p].step();
    if (!e.split) {
      const auto z = static_cast<std::size_t>(e.to);
      if (visited[1 - p][z]) return {e.time, false};
      visited[p][z] = 1;
    }
    if (walks[0].population() + walks[1].population() > caps.max_particles) {
      return {e.time, true};
    }
  }
}

BRWConfig BRWConfig::for_chain(const ChainAnalysis& a, int replicates,
                               std::uint64_t master_seed) {
  BRWConfig cfg;
  cfg.gamma = a.decomp.gap();
  cfg.replicates = replicates;
  cfg.master_seed = master_seed;
  const double t_rel = a.t_rel();
  cfg.caps.max_time = 50.0 * t_rel * std::log(1.0 + a.hitting.t_hit / t_rel);
  return cfg;
}

void BRWConfig::check(bool allow_zero_gamma) const {
  const bool gamma_ok = allow_zero_gamma ? gamma >= 0.0 : gamma > 0.0;
  if (!gamma_ok || !std::isfinite(gamma)) throw BadRange("BRWConfig: gamma must be positive");
  if (replicates < 1) throw BadRange("BRWConfig: replicates must be at least 1");
  if (caps.max_particles < 1 || !(caps.max_time > 0.0)) {
    throw BadRange("BRWConfig: caps must be positive");
  }
}

std::string target_name(BRWTarget t) {
  switch (t) {
    case BRWTarget::Hit: return "hit";
    case BRWTarget::Intersection: return "intersect";
    case BRWTarget::Plain: return "plain";
  }
  return "";
}

BRWEstimate aggregate(const std::vector<ReplicateOutcome>& outcomes, BRWTarget target, Index x) {
  BRWEstimate est;
  est.target = target;
  est.x = x;
  est.replicates = static_cast<int>(outcomes.size());
  CompensatedSum sum;
  for (const auto& o : outcomes) {
    if (o.censored) continue;
    sum.add(o.time);
    ++est.replicates_used;
  }
  if (est.replicates_used == 0) throw AllCensored("every replicate hit a cap");
  const double m = est.replicates_used;
  est.mean = sum.value() / m;
  CompensatedSum sq;
  for (const auto& o : outcomes) {
    if (!o.censored) sq.add((o.time - est.mean) * (o.time - est.mean));
  }
  est.std_error = est.replicates_used > 1 ? std::sqrt(sq.value() / (m - 1.0) / m) : 0.0;
  est.censor_rate = 1.0 - m / static_cast<double>(est.replicates);
  return est;
}

namespace {

template <class Body>
std::vector<ReplicateOutcome> run_replicates(const BRWConfig& cfg, Body body) {
  std::vector<ReplicateOutcome> out(static_cast<std::size_t>(cfg.replicates));
  parallel_for(out.size(), [&](std::size_t r) {
    Rng rng(replicate_seed(cfg.master_seed, r));
    out[r] = body(rng);
  });
  return out;
}

}  // namespace

BRWEstimate simulate_hit(const TransitionKernel& kernel, Index x, const BRWConfig& cfg) {
  cfg.check();
  if (x < 0 || x >= kernel.size()) throw BadRange("simulate_hit: state out of range");
  const JumpTable table(kernel);
  auto outcomes = run_replicates(cfg, [&](Rng& rng) {
    const Index start = table.stationary(rng.uniform());
    return run_hit(table, start, x, cfg.gamma, cfg.caps, rng);
  });
  return aggregate(outcomes, BRWTarget::Hit, x);
}

namespace {

BRWEstimate intersection(const TransitionKernel& kernel, const BRWConfig& cfg, double gamma,
                         BRWTarget target) {
  const JumpTable table(kernel);
  auto outcomes = run_replicates(cfg, [&](Rng& rng) {
    const Index a = table.stationary(rng.uniform());
    const Index b = table.stationary(rng.uniform());
    return run_intersection(table, a, b, gamma, cfg.caps, rng);
  });
  return aggregate(outcomes, target, -1);
}

}  // namespace

BRWEstimate simulate_intersection(const TransitionKernel& kernel, const BRWConfig& cfg) {
  cfg.check();
  return intersection(kernel, cfg, cfg.gamma, BRWTarget::Intersection);
}

BRWEstimate plain_intersection(const TransitionKernel& kernel, const BRWConfig& cfg) {
  cfg.check(true);
  return intersection(kernel, cfg, 0.0, BRWTarget::Plain);
}

std::vector<PopulationPoint> mean_population(const TransitionKernel& kernel, double gamma,
                                             const std::vector<double>& times, int replicates,
                                             std::uint64_t master_seed) {
  if (replicates < 1 || !(gamma >= 0.0)) throw BadRange("mean_population: invalid arguments");
  const JumpTable table(kernel);
  const std::size_t k = times.size();
  std::vector<double> counts(static_cast<std::size_t>(replicates) * k);
  parallel_for(static_cast<std::size_t>(replicates), [&](std::size_t r) {
    Rng rng(replicate_seed(master_seed, r));
    BranchingWalk walk(table, gamma, rng);
    walk.add_particle(0, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
      while (walk.next_time() <= times[j]) walk.step();
      counts[r * k + j] = static_cast<double>(walk.population());
    }
  });
  std::vector<PopulationPoint> out(k);
  const double m = replicates;
  for (std::size_t j = 0; j < k; ++j) {
    CompensatedSum s;
    for (std::size_t r = 0; r < static_cast<std::size_t>(replicates); ++r) s.add(counts[r * k + j]);
    const double mean = s.value() / m;
    CompensatedSum sq;
    for (std::size_t r = 0; r < static_cast<std::size_t>(replicates); ++r) {
      const double d = counts[r * k + j] - mean;
      sq.add(d * d);
    }
    out[j] = {times[j], mean, replicates > 1 ? std::sqrt(sq.value() / (m - 1.0) / m) : 0.0};
  }
  return out;
}

}  // namespace mixbound
