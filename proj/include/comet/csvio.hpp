#ifndef COMET_CSVIO_HPP
#define COMET_CSVIO_HPP

#include <charconv>
#include <cstdio>
#include <string>
#include <vector>

namespace comet::csv {

// Shortest representation that round-trips to the same double; machine
// files use this so re-parsing is bit-exact.
inline std::string num(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Fixed one-decimal display formatting for the human-readable tables.
inline std::string fixed1(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return std::string(buf);
}

inline std::string join(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += fields[i];
    }
    return out;
}

// Minimal reader: splits a CSV document into rows of string fields.
// Values never contain commas or quotes in this project's outputs.
std::vector<std::vector<std::string>> read_file(const std::string& path);

} // namespace comet::csv

#endif
