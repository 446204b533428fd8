#include "mixbound/version.hpp"

namespace mixbound {

const char* version() { return MIXBOUND_VERSION; }

}  // namespace mixbound
