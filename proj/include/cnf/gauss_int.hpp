#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace cnf {

// Gaussian integer a = re + j*im with exact integer arithmetic.
struct GaussInt {
    std::int64_t re = 0;
    std::int64_t im = 0;

    constexpr GaussInt() = default;
    constexpr GaussInt(std::int64_t r, std::int64_t i = 0) : re(r), im(i) {}

    constexpr bool is_zero() const { return re == 0 && im == 0; }
    constexpr std::int64_t norm2() const { return re * re + im * im; }
    constexpr GaussInt conj() const { return {re, -im}; }
    // Multiplication by j: j*(re + j*im) = -im + j*re.
    constexpr GaussInt times_j() const { return {-im, re}; }

    constexpr GaussInt operator-() const { return {-re, -im}; }
    constexpr GaussInt operator+(const GaussInt& o) const { return {re + o.re, im + o.im}; }
    constexpr GaussInt operator-(const GaussInt& o) const { return {re - o.re, im - o.im}; }
    constexpr GaussInt operator*(const GaussInt& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    constexpr bool operator==(const GaussInt& o) const = default;

    std::complex<double> to_complex() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }
};

using CoeffVector = std::vector<GaussInt>;

inline std::int64_t norm2(const CoeffVector& a) {
    std::int64_t s = 0;
    for (const auto& x : a) s += x.norm2();
    return s;
}

inline bool is_zero(const CoeffVector& a) {
    for (const auto& x : a)
        if (!x.is_zero()) return false;
    return true;
}

// Componentwise (re, im) tuple order.
inline bool lex_less(const CoeffVector& a, const CoeffVector& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i].re != b[i].re) return a[i].re < b[i].re;
        if (a[i].im != b[i].im) return a[i].im < b[i].im;
    }
    return a.size() < b.size();
}

// Representative of the rotation class {a, -a, ja, -ja}: the tuple that is
// lexicographically greatest under (Re a1, Im a1, Re a2, ...). This pins
// [1], [1+j] and [1,-1] as the representatives of their classes.
inline CoeffVector canonical(const CoeffVector& a) {
    CoeffVector best = a;
    CoeffVector rot = a;
    for (int k = 0; k < 3; ++k) {
        for (auto& x : rot) x = x.times_j();
        if (lex_less(best, rot)) best = rot;
    }
    return best;
}

inline std::string to_string(const GaussInt& g) {
    std::string s = std::to_string(g.re);
    if (g.im != 0) {
        s += (g.im >= 0 ? "+" : "-") + std::to_string(g.im >= 0 ? g.im : -g.im) + "j";
    }
    return s;
}

} // namespace cnf
