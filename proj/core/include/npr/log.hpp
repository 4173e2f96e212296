#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace npr::log {

void set_verbose(bool verbose);
bool verbose();

void info(std::string_view message);
void warn(std::string_view message);

/// Collects warnings emitted on any thread while alive (tests use this).
class WarningCapture {
 public:
  WarningCapture();
  ~WarningCapture();
  WarningCapture(const WarningCapture&) = delete;
  WarningCapture& operator=(const WarningCapture&) = delete;

  std::vector<std::string> messages() const;
  bool contains(std::string_view needle) const;
};

}  // namespace npr::log
