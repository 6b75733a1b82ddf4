#include "vptz/log.hpp"

#include <cstdlib>
#include <cstring>
#include <mutex>

namespace vptz::log {

Level threshold() {
    static const Level level = [] {
        const char* env = std::getenv("VPTZ_LOG");
        if (!env)
            return Level::warn;
        if (std::strcmp(env, "error") == 0) return Level::error;
        if (std::strcmp(env, "info") == 0) return Level::info;
        if (std::strcmp(env, "debug") == 0) return Level::debug;
        return Level::warn;
    }();
    return level;
}

void write(Level level, const std::string& msg) {
    if (level > threshold())
        return;
    static std::mutex mutex;
    static const char* names[] = {"error", "warn", "info", "debug"};
    std::lock_guard<std::mutex> lock(mutex);
    std::fprintf(stderr, "vptz [%s] %s\n", names[int(level)], msg.c_str());
}

} // namespace vptz::log
