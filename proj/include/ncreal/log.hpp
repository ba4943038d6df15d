#pragma once

#include <string>

namespace ncreal::log {

enum class Level { debug = 0, info = 1, warn = 2, error = 3, off = 4 };

// Read from NCREAL_LOG on first use (debug|info|warn|error|off), default warn.
Level level();
void set_level(Level l);
void write(Level l, const std::string& msg);

inline void debug(const std::string& m) { write(Level::debug, m); }
inline void info(const std::string& m) { write(Level::info, m); }
inline void warn(const std::string& m) { write(Level::warn, m); }
inline void error(const std::string& m) { write(Level::error, m); }

}  // namespace ncreal::log
