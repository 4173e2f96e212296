#include "npr/log.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <atomic>
#include <mutex>

namespace npr::log {
namespace {

std::shared_ptr<spdlog::logger> logger() {
  static auto instance = [] {
    auto l = spdlog::stderr_color_mt("nprkit");
    l->set_pattern("[%l] %v");
    l->set_level(spdlog::level::warn);
    return l;
  }();
  return instance;
}

std::mutex capture_mutex;
int capture_depth = 0;
std::vector<std::string> captured;
std::atomic<bool> verbose_flag{false};

}  // namespace

void set_verbose(bool v) {
  verbose_flag = v;
  logger()->set_level(v ? spdlog::level::info : spdlog::level::warn);
}

bool verbose() { return verbose_flag; }

void info(std::string_view message) { logger()->info("{}", message); }

void warn(std::string_view message) {
  {
    std::lock_guard lock(capture_mutex);
    if (capture_depth > 0) {
      captured.emplace_back(message);
      return;
    }
  }
  logger()->warn("{}", message);
}

WarningCapture::WarningCapture() {
  std::lock_guard lock(capture_mutex);
  if (capture_depth++ == 0) captured.clear();
}

WarningCapture::~WarningCapture() {
  std::lock_guard lock(capture_mutex);
  --capture_depth;
}

std::vector<std::string> WarningCapture::messages() const {
  std::lock_guard lock(capture_mutex);
  return captured;
}

bool WarningCapture::contains(std::string_view needle) const {
  std::lock_guard lock(capture_mutex);
  for (const auto& m : captured)
    if (m.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace npr::log
