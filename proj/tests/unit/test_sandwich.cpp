#include <doctest.h>

#include "mixbound/errors.hpp"
#include "mixbound/sandwich.hpp"

#include <cmath>

using namespace mixbound;
using doctest::Approx;

TEST_CASE("log-log slope") {
  CHECK(log_log_slope({1, 2, 4}, {3, 3, 3}) == Approx(0.0));
  CHECK(log_log_slope({1, 2, 4, 8}, {1, 4, 16, 64}) == Approx(2.0));
  CHECK(log_log_slope({2, 4, 8}, {1, 1.0 / std::sqrt(2.0), 0.5}) == Approx(-0.5));
  CHECK(log_log_slope({5}, {1}) == 0.0);
}

TEST_CASE("fixture keys") {
  CHECK(fixture_key(BRWTarget::Hit, ChainFamilySpec::torus(2, 4)) == "hit:torus2");
  CHECK(fixture_key(BRWTarget::Hit, ChainFamilySpec::cycle(16)) == "hit:cycle");
  CHECK(fixture_key(BRWTarget::Intersection, ChainFamilySpec::hypercube(4)) ==
        "intersect:hypercube");
  CHECK(fixture_key(BRWTarget::Plain, ChainFamilySpec::complete(8)) == "plain:complete");
}

TEST_CASE("every fixture family has a frozen band") {
  const std::pair<BRWTarget, ChainFamilySpec> fixtures[] = {
      {BRWTarget::Hit, ChainFamilySpec::torus(2, 4)},
      {BRWTarget::Hit, ChainFamilySpec::cycle(16)},
      {BRWTarget::Hit, ChainFamilySpec::complete(8)},
      {BRWTarget::Intersection, ChainFamilySpec::torus(2, 4)},
      {BRWTarget::Intersection, ChainFamilySpec::hypercube(4)},
      {BRWTarget::Plain, ChainFamilySpec::complete(8)},
      {BRWTarget::Plain, ChainFamilySpec::torus(2, 4)}};
  for (const auto& [target, spec] : fixtures) {
    const auto band = frozen_band(target, spec);
    REQUIRE(band.has_value());
    CHECK(band->lo > 0.0);
    CHECK(band->lo < band->hi);
  }
  CHECK_FALSE(frozen_band(BRWTarget::Hit, ChainFamilySpec::hypercube(3)).has_value());
}

TEST_CASE("sandwich table on a small run") {
  const auto t = run_sandwich(BRWTarget::Hit,
                              {ChainFamilySpec::cycle(8), ChainFamilySpec::cycle(12),
                               ChainFamilySpec::cycle(16)},
                              300, 5);
  REQUIRE(t.rows.size() == 3);
  for (const auto& r : t.rows) {
    CHECK(r.exact_reference > 0);
    CHECK(r.ratio == Approx(r.estimate.mean / r.exact_reference));
    CHECK(r.upper_ratio <= r.ratio);
    CHECK(r.band.has_value());
  }
  CHECK_THROWS_AS(run_sandwich(BRWTarget::Hit, {}, 10, 1), BadRange);
}
