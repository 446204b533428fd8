// Prints the band_table entries for core/src/sandwich.cpp. Each fixture runs
// 20000 replicates per size with master seed 20240607; the band is
// [min ratio / 1.5, max ratio * 1.5], where the upper edge uses upper_ratio
// for the hitting target.
#include "mixbound/chain_io.hpp"
#include "mixbound/sandwich.hpp"

#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

namespace {

using mixbound::BRWTarget;
using mixbound::ChainFamilySpec;
using mixbound::Family;

struct Fixture {
  BRWTarget target;
  Family family;
  int d;
  std::vector<int> sizes;
};

ChainFamilySpec make_spec(Family family, int d, int size) {
  switch (family) {
    case Family::Torus: return ChainFamilySpec::torus(d, size);
    case Family::Hypercube: return ChainFamilySpec::hypercube(size);
    case Family::Complete: return ChainFamilySpec::complete(size);
    default: return ChainFamilySpec::cycle(size);
  }
}

}  // namespace

int main() {
  constexpr int kReplicates = 20000;
  constexpr std::uint64_t kSeed = 20240607;
  constexpr double kMargin = 1.5;
  const std::vector<Fixture> fixtures = {
      {BRWTarget::Hit, Family::Torus, 2, {4, 8, 12}},
      {BRWTarget::Hit, Family::Cycle, 1, {16, 32, 64}},
      {BRWTarget::Hit, Family::Complete, 1, {8, 16, 32}},
      {BRWTarget::Intersection, Family::Torus, 2, {4, 8, 12}},
      {BRWTarget::Intersection, Family::Hypercube, 1, {4, 6, 8}},
      {BRWTarget::Plain, Family::Complete, 1, {8, 16, 32}},
      {BRWTarget::Plain, Family::Torus, 2, {4, 8, 16}},
  };
  for (const auto& f : fixtures) {
    std::vector<ChainFamilySpec> specs;
    for (int size : f.sizes) specs.push_back(make_spec(f.family, f.d, size));
    const auto table = mixbound::run_sandwich(f.target, specs, kReplicates, kSeed);
    double lo = 1e300, hi = 0.0;
    for (const auto& r : table.rows) {
      lo = std::min(lo, r.ratio);
      hi = std::max(hi, f.target == BRWTarget::Hit ? r.upper_ratio : r.ratio);
      std::cerr << mixbound::fixture_key(f.target, specs.front()) << ' ' << r.label
                << " ratio=" << r.ratio << " upper_ratio=" << r.upper_ratio
                << " censor=" << r.estimate.censor_rate << '\n';
    }
    std::cerr << "slope=" << table.slope << '\n';
    std::cout << "      {\"" << mixbound::fixture_key(f.target, specs.front()) << "\", {"
              << mixbound::format_number(lo / kMargin) << ", "
              << mixbound::format_number(hi * kMargin) << "}},\n";
  }
  return 0;
}
