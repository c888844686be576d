#pragma once

#define PQTRACE_VERSION "1.0.0"

namespace pqtrace {
inline constexpr const char* version_string = PQTRACE_VERSION;
}
