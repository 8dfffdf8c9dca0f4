#include "cnf/parse.hpp"

#include <cctype>
#include <cstdlib>

namespace cnf::parse {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(std::string_view s) {
    throw std::invalid_argument("cannot parse complex literal '" + std::string(s) + "'");
}

// Split "a+bj" style literals into (real text, imag text); either may be
// empty. The split point is a +/- that is not a leading sign and does not
// follow an exponent marker.
struct Parts {
    std::string re, im;
    bool has_im = false;
};

Parts split(std::string_view s0) {
    std::string_view s = trim(s0);
    if (s.empty()) fail(s0);
    Parts out;
    std::size_t split_pos = std::string_view::npos;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E')
            split_pos = i; // keep the last candidate: "-1-2j" splits before "-2j"
    }
    bool ends_j = s.back() == 'j' || s.back() == 'J';
    if (!ends_j) {
        if (split_pos != std::string_view::npos) fail(s0);
        out.re = std::string(s);
        return out;
    }
    std::string_view imag = s.substr(0, s.size() - 1);
    if (split_pos == std::string_view::npos) {
        out.im = imag.empty() ? "1" : std::string(imag);
        if (out.im == "+" || out.im == "-") out.im += "1";
        out.has_im = true;
        return out;
    }
    out.re = std::string(s.substr(0, split_pos));
    std::string_view itext = imag.substr(split_pos);
    out.im = std::string(itext);
    if (out.im == "+" || out.im == "-") out.im += "1";
    out.has_im = true;
    return out;
}

double to_double(const std::string& t, std::string_view whole) {
    if (t.empty()) return 0.0;
    const char* begin = t.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end != begin + t.size()) fail(whole);
    return v;
}

std::int64_t to_int(const std::string& t, std::string_view whole) {
    if (t.empty()) return 0;
    std::int64_t v = 0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    if (!t.empty() && t.front() == '+') ++first; // from_chars rejects leading '+'
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || p != last) fail(whole);
    return v;
}

template <typename F>
auto parse_list(std::string_view s, F&& one) {
    std::vector<decltype(one(s))> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t comma = s.find(',', start);
        std::string_view item =
            comma == std::string_view::npos ? s.substr(start) : s.substr(start, comma - start);
        out.push_back(one(item));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

} // namespace

std::complex<double> parse_complex(std::string_view s) {
    Parts p = split(s);
    return {to_double(p.re, s), p.has_im ? to_double(p.im, s) : 0.0};
}

GaussInt parse_gauss_int(std::string_view s) {
    Parts p = split(s);
    return {to_int(p.re, s), p.has_im ? to_int(p.im, s) : 0};
}

std::vector<std::complex<double>> parse_complex_list(std::string_view s) {
    return parse_list(s, [](std::string_view item) { return parse_complex(item); });
}

CoeffVector parse_gauss_int_list(std::string_view s) {
    return parse_list(s, [](std::string_view item) { return parse_gauss_int(item); });
}

std::string format_complex(std::complex<double> v) {
    std::string s = format_double(v.real());
    if (v.imag() != 0.0) {
        if (v.imag() > 0.0) s += "+";
        s += format_double(v.imag()) + "j";
    }
    return s;
}

} // namespace cnf::parse
