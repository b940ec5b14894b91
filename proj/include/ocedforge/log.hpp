#pragma once

#include <memory>

#include <spdlog/logger.h>

namespace ocedforge {

/// Process-wide diagnostics logger writing to standard error. The initial
/// level comes from OCED_FORGE_LOG (trace, debug, info, warn, error, off).
std::shared_ptr<spdlog::logger> logger();

} // namespace ocedforge
