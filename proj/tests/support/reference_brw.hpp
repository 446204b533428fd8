#pragma once

#include "mixbound/chain.hpp"

#include <cstdint>

namespace mixbound::testing {

// Independent branching-walk simulator for cross-checking the library engine.
// Uses a single global clock: with N particles the next event comes after an
// Exp(N (1 + gamma)) wait and involves a uniformly chosen particle. Jumps scan
// the dense row of P; starts are drawn from pi by a linear scan.

struct ReferenceStats {
  double mean = 0.0;
  double std_error = 0.0;
  int used = 0;
};

ReferenceStats reference_hit(const TransitionKernel& kernel, Index target, double gamma,
                             int replicates, std::uint64_t seed, double max_time);

ReferenceStats reference_intersection(const TransitionKernel& kernel, double gamma,
                                      int replicates, std::uint64_t seed, double max_time);

}  // namespace mixbound::testing
