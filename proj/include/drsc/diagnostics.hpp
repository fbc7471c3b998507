#pragma once

#include <functional>
#include <string>

namespace drsc {

// Non-fatal conditions (disconnected input, violated bound assumptions, ...)
// are reported through a process-wide sink. The default sink prints to stderr.
using WarningSink = std::function<void(const std::string&)>;

void set_warning_sink(WarningSink sink);
void warn(const std::string& message);

// Installs a sink for the lifetime of the object and restores the previous
// one afterwards.
class ScopedWarningSink {
 public:
  explicit ScopedWarningSink(WarningSink sink);
  ~ScopedWarningSink();
  ScopedWarningSink(const ScopedWarningSink&) = delete;
  ScopedWarningSink& operator=(const ScopedWarningSink&) = delete;

 private:
  WarningSink previous_;
};

}  // namespace drsc
