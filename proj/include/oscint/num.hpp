#pragma once

#include <complex>
#include <cstdint>
#include <string>

namespace oscint {

using Complex = std::complex<double>;

// Neumaier compensated accumulator; merge order fixed by the caller.
struct Kahan {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

struct KahanC {
    Kahan re, im;
    void add(const Complex& v) {
        re.add(v.real());
        im.add(v.imag());
    }
    Complex value() const { return {re.value(), im.value()}; }
};

// "1.5", "-2i", "1+0.5i", "1-0.5i"; round-trips format_complex.
Complex parse_complex(const std::string& text);
std::string format_complex(const Complex& z);

// SplitMix64; used to derive independent per-batch seeds from one root seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace oscint
