#pragma once

#include <charconv>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cnf/gauss_int.hpp"

namespace cnf::parse {

// Shortest representation that round-trips through a double.
inline std::string format_double(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("double formatting failed");
    return std::string(buf, end);
}

// "a", "bj" or "a+bj"/"a-bj" with real literals.
std::complex<double> parse_complex(std::string_view s);

// Same grammar restricted to integer parts.
GaussInt parse_gauss_int(std::string_view s);

// Comma-separated lists.
std::vector<std::complex<double>> parse_complex_list(std::string_view s);
CoeffVector parse_gauss_int_list(std::string_view s);

std::string format_complex(std::complex<double> v);

} // namespace cnf::parse
