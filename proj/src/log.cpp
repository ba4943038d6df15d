#include "ncreal/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>

namespace ncreal::log {
namespace {

Level parse_env() {
    const char* env = std::getenv("NCREAL_LOG");
    if (!env) return Level::warn;
    const std::string s(env);
    if (s == "debug") return Level::debug;
    if (s == "info") return Level::info;
    if (s == "error") return Level::error;
    if (s == "off") return Level::off;
    return Level::warn;
}

std::atomic<int>& current() {
    static std::atomic<int> lvl{static_cast<int>(parse_env())};
    return lvl;
}

const char* tag(Level l) {
    switch (l) {
        case Level::debug: return "debug";
        case Level::info: return "info";
        case Level::warn: return "warn";
        case Level::error: return "error";
        default: return "";
    }
}

}  // namespace

Level level() { return static_cast<Level>(current().load()); }
void set_level(Level l) { current().store(static_cast<int>(l)); }

void write(Level l, const std::string& msg) {
    if (static_cast<int>(l) < current().load()) return;
    std::cerr << "[ncreal " << tag(l) << "] " << msg << '\n';
}

}  // namespace ncreal::log
