#include "manifest.hpp"

#include "mixbound/chain_io.hpp"
#include "mixbound/version.hpp"

#include <chrono>
#include <ctime>
#include <ostream>

namespace mixbound::cli {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

RunManifest RunManifest::make(const std::vector<std::string>& argv,
                              const std::vector<ChainFamilySpec>& specs,
                              std::optional<std::uint64_t> seed) {
  RunManifest m;
  for (std::size_t i = 0; i < argv.size(); ++i) {
    if (i) m.command += ' ';
    m.command += argv[i];
  }
  std::string canon;
  for (const auto& s : specs) canon += canonical_text(s) + "---\n";
  m.spec_digest = digest_hex(canon);
  m.master_seed = seed;
  m.timestamp = utc_timestamp();
  return m;
}

void write_manifest(std::ostream& os, const RunManifest& m) {
  os << "# mixbound " << version() << '\n'
     << "# command: " << m.command << '\n'
     << "# spec_digest: " << m.spec_digest << '\n'
     << "# master_seed: " << (m.master_seed ? std::to_string(*m.master_seed) : "none") << '\n'
     << "# timestamp: " << m.timestamp << '\n';
}

}  // namespace mixbound::cli
