#include "chain_options.hpp"

#include "mixbound/chain_io.hpp"
#include "mixbound/errors.hpp"

namespace mixbound::cli {

void ChainOptions::add_to(CLI::App* cmd) {
  cmd->add_option("--spec", spec_path, "Chain-spec file (key=value lines)");
  cmd->add_option("--family", family, "cycle | torus | complete | hypercube | dlp");
  cmd->add_option("--sizes", sizes,
                  "Comma-separated sizes: n (cycle, complete, dlp), m (torus), d (hypercube)")
      ->delimiter(',');
  cmd->add_option("--d", d, "Torus dimension")->capture_default_str();
  cmd->add_option("--lambda", lambda, "dlp holding rate")->capture_default_str();
  cmd->add_option("--dlp-eps", dlp_eps, "dlp drift parameter")->capture_default_str();
  cmd->add_option("--k", k, "dlp: states at rate lambda (-1 for all)")->capture_default_str();
}

std::vector<ChainFamilySpec> ChainOptions::resolve() const {
  if (!spec_path.empty() && !family.empty()) {
    throw InvalidSpec("give either --spec or --family, not both");
  }
  if (!spec_path.empty()) {
    if (!sizes.empty()) throw InvalidSpec("--sizes applies to --family only");
    return {load_chain_spec(spec_path)};
  }
  if (family.empty()) throw InvalidSpec("no chain given: use --spec or --family");
  if (sizes.empty()) throw InvalidSpec("--family needs --sizes");
  const Family f = parse_family(family);
  std::vector<ChainFamilySpec> out;
  for (int s : sizes) {
    switch (f) {
      case Family::Cycle: out.push_back(ChainFamilySpec::cycle(s)); break;
      case Family::Complete: out.push_back(ChainFamilySpec::complete(s)); break;
      case Family::Torus: out.push_back(ChainFamilySpec::torus(d, s)); break;
      case Family::Hypercube: out.push_back(ChainFamilySpec::hypercube(s)); break;
      case Family::DlpBirthDeath:
        out.push_back(ChainFamilySpec::dlp(s, lambda, dlp_eps, k < 0 ? s : k));
        break;
      case Family::Custom: throw InvalidSpec("custom chains are read with --spec");
    }
    out.back().check();
  }
  return out;
}

}  // namespace mixbound::cli
