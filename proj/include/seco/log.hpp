#pragma once

#include <string>

namespace seco::log {

// level names as in SECO_LOG: trace, debug, info, warn, error, off
void set_level(const std::string& level);
void init_from_env();

void debug(const std::string& msg);
void info(const std::string& msg);
void warn(const std::string& msg);
void error(const std::string& msg);

}  // namespace seco::log
