#pragma once

#include <spdlog/spdlog.h>

namespace blocklim
{
/// Library logger; level from BLOCKLIM_LOG (trace|debug|info|warn|error|off), default warn.
spdlog::logger & logger();
}  // namespace blocklim
