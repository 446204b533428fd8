#pragma once

namespace mixbound {

/// Library version, e.g. "0.3.0".
const char* version();

}  // namespace mixbound
