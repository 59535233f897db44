#include "oscint/rat.hpp"

#include <cstdlib>
#include <limits>

namespace oscint {

namespace {

std::int64_t checked_narrow(__int128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw OverflowError("rational arithmetic overflow");
    return static_cast<std::int64_t>(v);
}

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

Rat Rat::from_i128(__int128 n, __int128 d) {
    if (d == 0) throw DomainError("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    __int128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    Rat r;
    r.num_ = checked_narrow(n);
    r.den_ = checked_narrow(d);
    return r;
}

void Rat::normalize() {
    *this = from_i128(num_, den_);
}

std::string Rat::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rat Rat::parse(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational", 0);
    auto slash = text.find('/');
    auto parse_int = [&](const std::string& part, std::size_t base) -> std::int64_t {
        std::size_t i = 0;
        bool neg = false;
        if (i < part.size() && (part[i] == '+' || part[i] == '-')) {
            neg = part[i] == '-';
            ++i;
        }
        if (i >= part.size()) throw ParseError("expected digits", base + i);
        __int128 v = 0;
        for (; i < part.size(); ++i) {
            if (part[i] < '0' || part[i] > '9') throw ParseError("expected digit", base + i);
            v = v * 10 + (part[i] - '0');
            if (v > std::numeric_limits<std::int64_t>::max()) throw OverflowError("integer literal overflow");
        }
        return static_cast<std::int64_t>(neg ? -v : v);
    };
    if (slash != std::string::npos) {
        std::int64_t n = parse_int(text.substr(0, slash), 0);
        std::int64_t d = parse_int(text.substr(slash + 1), slash + 1);
        return Rat(n, d);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rat(parse_int(text, 0));
    // decimal: digits after the dot become a power-of-ten denominator
    std::string head = text.substr(0, dot), tail = text.substr(dot + 1);
    if (tail.empty()) return Rat(parse_int(head, 0));
    bool neg = !head.empty() && head[0] == '-';
    std::int64_t ip = head == "-" || head.empty() ? 0 : parse_int(head, 0);
    __int128 den = 1, num = ip < 0 ? -ip : ip;
    for (std::size_t i = 0; i < tail.size(); ++i) {
        if (tail[i] < '0' || tail[i] > '9') throw ParseError("expected digit", dot + 1 + i);
        num = num * 10 + (tail[i] - '0');
        den *= 10;
        if (num > std::numeric_limits<std::int64_t>::max()) throw OverflowError("decimal literal overflow");
    }
    return from_i128(neg ? -num : num, den);
}

Rat Rat::frac() const {
    std::int64_t f = floor();
    return *this - Rat(f);
}

std::pair<Rat, Rat> parse_gaussian(const std::string& text) {
    if (text.empty()) throw ParseError("empty literal", 0);
    auto is_bare_i = [&](std::size_t p) {
        return p < text.size() && (text[p] == 'i' || text[p] == 'I') && p + 1 == text.size();
    };
    if (is_bare_i(0)) return {Rat(0), Rat(1)};
    if ((text[0] == '+' || text[0] == '-') && is_bare_i(1))
        return {Rat(0), Rat(text[0] == '-' ? -1 : 1)};
    // split at the first interior sign; Rat literals never contain exponents
    std::size_t split = std::string::npos;
    for (std::size_t p = 1; p < text.size(); ++p)
        if (text[p] == '+' || text[p] == '-') {
            split = p;
            break;
        }
    auto strip_i = [&](std::string part, std::size_t base, bool& had_i) {
        had_i = false;
        if (!part.empty() && (part.back() == 'i' || part.back() == 'I')) {
            had_i = true;
            part.pop_back();
            if (part.empty() || part == "+" || part == "-") part += "1";
        }
        (void)base;
        return part;
    };
    bool had_i = false;
    if (split == std::string::npos) {
        std::string p = strip_i(text, 0, had_i);
        Rat v = Rat::parse(p);
        return had_i ? std::pair<Rat, Rat>{Rat(0), v} : std::pair<Rat, Rat>{v, Rat(0)};
    }
    Rat re = Rat::parse(text.substr(0, split));
    std::string imag = strip_i(text.substr(split), split, had_i);
    if (!had_i) throw ParseError("expected trailing 'i' on the imaginary part", text.size() - 1);
    return {re, Rat::parse(imag)};
}

std::int64_t Rat::floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
}

}  // namespace oscint
