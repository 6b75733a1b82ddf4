#pragma once

#include <cstdio>
#include <string>

namespace vptz::log {

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

/// Verbosity from the VPTZ_LOG environment variable
/// (error|warn|info|debug), read once; defaults to warn.
Level threshold();

void write(Level level, const std::string& msg);

inline void error(const std::string& msg) { write(Level::error, msg); }
inline void warn(const std::string& msg) { write(Level::warn, msg); }
inline void info(const std::string& msg) { write(Level::info, msg); }
inline void debug(const std::string& msg) { write(Level::debug, msg); }

} // namespace vptz::log
