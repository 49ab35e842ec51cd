#include "kfd/dd.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace kfd {

dd dd_pi() {
    static const dd v = dd_from_string("3.14159265358979323846264338327950288419717");
    return v;
}
dd dd_two_pi() {
    static const dd v = dd_from_string("6.28318530717958647692528676655900576839434");
    return v;
}
dd dd_ln2() {
    static const dd v = dd_from_string("0.693147180559945309417232121458176568075500");
    return v;
}

dd exp_small(dd t) {
    // plain Taylor; caller guarantees |t| small enough that ~20 terms reach
    // 1e-35 relative
    dd sum = dd(1.0) + t;
    dd term = t;
    for (int n = 2; n < 40; ++n) {
        term = term * t / static_cast<double>(n);
        sum += term;
        if (std::fabs(term.hi) < 1e-36 * std::fabs(sum.hi)) break;
    }
    return sum;
}

dd exp(dd a) {
    if (a.hi > 709.0) throw std::overflow_error("dd exp overflow");
    if (a.hi < -709.0) return dd(0.0);
    // a = m ln2 + r, |r| <= ln2/2; exp(r) = exp(r/512)^512
    double m = std::round(a.hi / 0.6931471805599453);
    dd r = a - dd_ln2() * m;
    dd e = exp_small(ldexp(r, -9));
    for (int i = 0; i < 9; ++i) e = sqr(e);
    return ldexp(e, static_cast<int>(m));
}

dd log(dd a) {
    if (!(a.hi > 0.0)) throw std::domain_error("dd log of non-positive value");
    double x0 = std::log(a.hi);
    // one Newton step: x0 is accurate to ~1e-16, correction doubles that
    dd e = exp(dd(x0));
    return dd(x0) + (a - e) / e;
}

dd log1p_small(dd t) {
    // log(1+t) = t - t^2/2 + t^3/3 - ...
    dd sum = t;
    dd power = t;
    double sign = -1.0;
    for (int n = 2; n < 40; ++n) {
        power *= t;
        dd term = power * sign / static_cast<double>(n);
        sum += term;
        sign = -sign;
        if (std::fabs(term.hi) < 1e-36 * std::fabs(sum.hi) + 1e-320) break;
    }
    return sum;
}

dd pow(dd a, double r) {
    if (a.hi == 0.0 && a.lo == 0.0 && r > 0.0) return dd(0.0);
    return exp(log(a) * r);
}

dd dd_from_string(std::string_view s) {
    size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = s[i] == '-';
        ++i;
    }
    dd value(0.0);
    int frac_digits = 0;
    bool seen_point = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c == '.') {
            seen_point = true;
            continue;
        }
        if (c == 'e' || c == 'E') break;
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw std::invalid_argument("dd_from_string: bad literal");
        value = value * 10.0 + static_cast<double>(c - '0');
        if (seen_point) ++frac_digits;
    }
    int exp10 = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E'))
        exp10 = std::stoi(std::string(s.substr(i + 1)));
    int shift = exp10 - frac_digits;
    dd scale(1.0);
    for (int j = 0; j < std::abs(shift); ++j) scale *= 10.0;
    value = shift >= 0 ? value * scale : value / scale;
    return neg ? -value : value;
}

std::string to_string(dd a, int digits) {
    if (a.hi == 0.0 && a.lo == 0.0) return "0";
    std::string out;
    dd x = a;
    if (x.hi < 0.0 || (x.hi == 0.0 && x.lo < 0.0)) {
        out += '-';
        x = -x;
    }
    int e10 = static_cast<int>(std::floor(std::log10(x.hi)));
    // scale into [1, 10)
    dd scaled = x;
    if (e10 > 0)
        for (int j = 0; j < e10; ++j) scaled /= 10.0;
    else
        for (int j = 0; j < -e10; ++j) scaled *= 10.0;
    if (scaled.hi >= 10.0) { scaled /= 10.0; ++e10; }
    if (scaled.hi < 1.0)   { scaled *= 10.0; --e10; }

    std::vector<int> digs;
    digs.reserve(digits + 1);
    for (int j = 0; j <= digits; ++j) {
        int d = static_cast<int>(std::floor(scaled.hi));
        if (d < 0) d = 0;
        if (d > 9) d = 9;
        digs.push_back(d);
        scaled = (scaled - static_cast<double>(d)) * 10.0;
        if (scaled.hi < 0.0) scaled = dd(0.0);
    }
    // round using the guard digit
    if (digs.back() >= 5) {
        for (int j = digits - 1; j >= 0; --j) {
            if (++digs[j] <= 9) break;
            digs[j] = 0;
            if (j == 0) { digs.insert(digs.begin(), 1); ++e10; }
        }
    }
    out += static_cast<char>('0' + digs[0]);
    out += '.';
    for (int j = 1; j < digits; ++j) out += static_cast<char>('0' + digs[j]);
    char ebuf[16];
    std::snprintf(ebuf, sizeof(ebuf), "e%+03d", e10);
    out += ebuf;
    return out;
}

} // namespace kfd
