#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace cnf {

using Complex = std::complex<double>;

// Linear power ratio. Constructed from a linear value or from decibels.
struct Snr {
    double linear = 0.0;

    static Snr from_linear(double v) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("SNR must be finite and nonnegative");
        return Snr{v};
    }
    static Snr from_db(double db) { return from_linear(std::pow(10.0, db / 10.0)); }
};

// Length-L vector of complex channel gains.
class ChannelVector {
public:
    explicit ChannelVector(std::vector<Complex> entries) : e_(std::move(entries)) {
        if (e_.empty()) throw std::invalid_argument("channel vector must be nonempty");
        for (const auto& h : e_)
            if (!std::isfinite(h.real()) || !std::isfinite(h.imag()))
                throw std::invalid_argument("channel gains must be finite");
    }

    std::size_t size() const { return e_.size(); }
    const Complex& operator[](std::size_t i) const { return e_[i]; }
    const std::vector<Complex>& entries() const { return e_; }

    double norm2() const {
        double s = 0.0;
        for (const auto& h : e_) s += std::norm(h);
        return s;
    }

private:
    std::vector<Complex> e_;
};

} // namespace cnf
