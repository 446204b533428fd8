#pragma once

#include "mixbound/chain.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mixbound::cli {

/// `#`-prefixed header written at the top of every output file. Everything
/// but the timestamp line is a function of the command line.
struct RunManifest {
  std::string command;
  std::string spec_digest;
  std::optional<std::uint64_t> master_seed;
  std::string timestamp;

  static RunManifest make(const std::vector<std::string>& argv,
                          const std::vector<ChainFamilySpec>& specs,
                          std::optional<std::uint64_t> seed);
};

void write_manifest(std::ostream& os, const RunManifest& m);

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

}  // namespace mixbound::cli
