#include "oscint/num.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "oscint/errors.hpp"

namespace oscint {

Complex parse_complex(const std::string& text) {
    if (text.empty()) throw ParseError("empty complex literal", 0);
    const char* s = text.c_str();
    char* end = nullptr;
    auto read_num = [&](const char* p) -> double {
        double v = std::strtod(p, &end);
        if (end == p) throw ParseError("expected number", static_cast<std::size_t>(p - s));
        return v;
    };
    // pure imaginary "i", "-i", "+i"
    auto is_bare_i = [](const char* p) { return (*p == 'i' || *p == 'I') && p[1] == '\0'; };
    const char* p = s;
    if (is_bare_i(p)) return {0.0, 1.0};
    if ((*p == '+' || *p == '-') && is_bare_i(p + 1)) return {0.0, *p == '-' ? -1.0 : 1.0};

    double first = read_num(p);
    if (*end == 'i' || *end == 'I') {
        if (end[1] != '\0') throw ParseError("trailing characters", static_cast<std::size_t>(end + 1 - s));
        return {0.0, first};
    }
    if (*end == '\0') return {first, 0.0};
    if (*end != '+' && *end != '-')
        throw ParseError("expected '+', '-' or 'i'", static_cast<std::size_t>(end - s));
    const char* q = end;
    double second;
    if (is_bare_i(q + 1)) {
        second = *q == '-' ? -1.0 : 1.0;
        end = const_cast<char*>(q + 2);
    } else {
        second = read_num(q);
        if (*end != 'i' && *end != 'I') throw ParseError("expected 'i'", static_cast<std::size_t>(end - s));
        ++end;
    }
    if (*end != '\0') throw ParseError("trailing characters", static_cast<std::size_t>(end - s));
    return {first, second};
}

std::string format_complex(const Complex& z) {
    char buf[96];
    if (z.imag() == 0.0) {
        std::snprintf(buf, sizeof buf, "%.17g", z.real());
        return buf;
    }
    if (z.real() == 0.0) {
        std::snprintf(buf, sizeof buf, "%.17gi", z.imag());
        return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
    return buf;
}

}  // namespace oscint
