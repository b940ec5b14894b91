#include "ocedforge/log.hpp"

#include <cstdlib>
#include <string_view>

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

namespace ocedforge {

std::shared_ptr<spdlog::logger> logger() {
    static const std::shared_ptr<spdlog::logger> instance = [] {
        auto sink = std::make_shared<spdlog::sinks::stderr_sink_mt>();
        auto log = std::make_shared<spdlog::logger>("oced-forge", std::move(sink));
        log->set_pattern("oced-forge: %l: %v");
        log->set_level(spdlog::level::info);
        if (const char* name = std::getenv("OCED_FORGE_LOG")) {
            // from_str maps unknown names to off; keep the default for those
            const auto level = spdlog::level::from_str(name);
            if (level != spdlog::level::off || std::string_view(name) == "off") log->set_level(level);
        }
        return log;
    }();
    return instance;
}

} // namespace ocedforge
