#include "seco/log.hpp"

#include "seco/error.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <mutex>

namespace seco::log {

namespace {

spdlog::logger& logger() {
  static std::shared_ptr<spdlog::logger> lg = [] {
    auto l = spdlog::stderr_color_mt("seco");
    l->set_pattern("[%H:%M:%S.%e] [%^%l%$] %v");
    l->set_level(spdlog::level::warn);
    return l;
  }();
  return *lg;
}

}  // namespace

void set_level(const std::string& level) {
  const auto lv = spdlog::level::from_str(level);
  if (lv == spdlog::level::off && level != "off")
    throw Error(ErrorCode::invalid_input, "unknown log level '" + level + "'");
  logger().set_level(lv);
}

void init_from_env() {
  static std::once_flag once;
  std::call_once(once, [] {
    if (const char* env = std::getenv("SECO_LOG")) {
      try {
        set_level(env);
      } catch (const Error& e) {
        logger().warn(e.what());
      }
    }
  });
}

void debug(const std::string& msg) { logger().debug(msg); }
void info(const std::string& msg) { logger().info(msg); }
void warn(const std::string& msg) { logger().warn(msg); }
void error(const std::string& msg) { logger().error(msg); }

}  // namespace seco::log
