#pragma once

#include <cstdio>
#include <utility>

namespace sode {

// Diagnostics go to stderr, gated by the SODE_LOG environment variable:
//   unset or 0 -> errors only, 1 -> info, 2 -> debug.
int log_level();

namespace detail {
void log_line(const char* tag, const char* fmt, ...);
}

}  // namespace sode

#define SODE_INFO(...)                                  \
  do {                                                  \
    if (::sode::log_level() >= 1)                       \
      ::sode::detail::log_line("info", __VA_ARGS__);    \
  } while (0)

#define SODE_DEBUG(...)                                 \
  do {                                                  \
    if (::sode::log_level() >= 2)                       \
      ::sode::detail::log_line("debug", __VA_ARGS__);   \
  } while (0)
