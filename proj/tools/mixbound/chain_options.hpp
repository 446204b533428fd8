#pragma once

#include "mixbound/chain.hpp"

#include <CLI11.hpp>

#include <string>
#include <vector>

namespace mixbound::cli {

/// Chain selection shared by every subcommand: either one spec file or a
/// family with a list of sizes.
struct ChainOptions {
  std::string spec_path;
  std::string family;
  std::vector<int> sizes;
  int d = 2;
  double lambda = 0.5;
  double dlp_eps = 0.1;
  int k = -1;  ///< -1 selects k = n

  void add_to(CLI::App* cmd);
  /// Throws InvalidSpec when the selection is missing, ambiguous or invalid.
  std::vector<ChainFamilySpec> resolve() const;
};

}  // namespace mixbound::cli
