#include "sode/log.hpp"

#include <cstdarg>
#include <cstdlib>
#include <cstring>

namespace sode {

int log_level() {
  static const int level = [] {
    const char* v = std::getenv("SODE_LOG");
    if (v == nullptr || *v == '\0') return 0;
    if (std::strcmp(v, "debug") == 0) return 2;
    if (std::strcmp(v, "info") == 0) return 1;
    return std::atoi(v);
  }();
  return level;
}

namespace detail {

void log_line(const char* tag, const char* fmt, ...) {
  std::fprintf(stderr, "sode [%s] ", tag);
  va_list args;
  va_start(args, fmt);
  std::vfprintf(stderr, fmt, args);
  va_end(args);
  std::fputc('\n', stderr);
}

}  // namespace detail
}  // namespace sode
