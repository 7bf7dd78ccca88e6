#pragma once

#include <charconv>
#include <string>

namespace gsgp::detail {

/// Shortest round-trip decimal form; keeps CSV and model files bit-stable.
inline std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

} // namespace gsgp::detail
