#include "log.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>

#include <cstdlib>

namespace blocklim
{
spdlog::logger & logger()
{
	static std::shared_ptr<spdlog::logger> const instance = [] {
		auto log = spdlog::stderr_color_st("blocklim");
		log->set_pattern("[%l] %v");
		char const * level = std::getenv("BLOCKLIM_LOG");
		log->set_level(level ? spdlog::level::from_str(level) : spdlog::level::warn);
		return log;
	}();
	return *instance;
}
}  // namespace blocklim
