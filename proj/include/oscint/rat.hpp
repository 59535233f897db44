#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <utility>

#include "oscint/errors.hpp"

namespace oscint {

// Exact rational on int64 with checked arithmetic. Denominator > 0 always,
// gcd-reduced after every operation. Intermediates use __int128; anything
// that would leave int64 range throws OverflowError instead of wrapping.
class Rat {
  public:
    Rat() : num_(0), den_(1) {}
    Rat(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    Rat(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    static Rat from_i128(__int128 n, __int128 d);

    Rat operator-() const { return Rat(-num_, den_); }
    Rat operator+(const Rat& o) const {
        return from_i128((__int128)num_ * o.den_ + (__int128)o.num_ * den_, (__int128)den_ * o.den_);
    }
    Rat operator-(const Rat& o) const { return *this + (-o); }
    Rat operator*(const Rat& o) const {
        return from_i128((__int128)num_ * o.num_, (__int128)den_ * o.den_);
    }
    Rat operator/(const Rat& o) const {
        if (o.num_ == 0) throw DomainError("rational division by zero");
        return from_i128((__int128)num_ * o.den_, (__int128)den_ * o.num_);
    }
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rat& o) const { return !(*this == o); }
    bool operator<(const Rat& o) const { return (__int128)num_ * o.den_ < (__int128)o.num_ * den_; }
    bool operator>(const Rat& o) const { return o < *this; }
    bool operator<=(const Rat& o) const { return !(o < *this); }
    bool operator>=(const Rat& o) const { return !(*this < o); }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    // "p/q", or just "p" when q == 1.
    std::string str() const;

    // Accepts "p", "p/q", and plain decimals ("0.5" -> 1/2). Exact.
    static Rat parse(const std::string& text);

    // fractional part in [0,1)
    Rat frac() const;
    std::int64_t floor() const;

  private:
    void normalize();
    std::int64_t num_, den_;
};

inline Rat abs(const Rat& r) { return r.num() < 0 ? -r : r; }

// Gaussian rational literal: anything Rat::parse accepts, optionally with an
// imaginary part ("1/2", "-i", "1+0.5i", "2/3-1/3i"). Returns (re, im).
std::pair<Rat, Rat> parse_gaussian(const std::string& text);

struct RatHash {
    std::size_t operator()(const Rat& r) const {
        return std::hash<std::int64_t>()(r.num()) * 1000003u ^ std::hash<std::int64_t>()(r.den());
    }
};

}  // namespace oscint
