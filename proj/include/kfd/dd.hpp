#pragma once
// Double-double arithmetic: an unevaluated sum hi + lo of two doubles giving
// ~32 significant decimal digits.  Used wherever a main term of size ~1e9
// must be subtracted from an exact integer, or a zeta value needs more than
// double precision.  Classic error-free transformations (two_sum / two_prod
// via fma); the algorithms follow the well-known QD library recipes.

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

namespace kfd {

struct dd {
    double hi = 0.0;
    double lo = 0.0;

    constexpr dd() = default;
    constexpr dd(double h) : hi(h) {}
    constexpr dd(double h, double l) : hi(h), lo(l) {}

    double to_double() const { return hi + lo; }
    explicit operator double() const { return hi + lo; }
};

// ---- error-free building blocks ----------------------------------------

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

// requires |a| >= |b|
inline dd quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

// ---- arithmetic ---------------------------------------------------------

inline dd operator+(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    dd t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline dd operator+(dd a, double b) {
    dd s = two_sum(a.hi, b);
    s.lo += a.lo;
    return quick_two_sum(s.hi, s.lo);
}
inline dd operator+(double a, dd b) { return b + a; }

inline dd operator-(dd a) { return {-a.hi, -a.lo}; }
inline dd operator-(dd a, dd b) { return a + (-b); }
inline dd operator-(dd a, double b) { return a + (-b); }
inline dd operator-(double a, dd b) { return (-b) + a; }

inline dd operator*(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline dd operator*(dd a, double b) {
    dd p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}
inline dd operator*(double a, dd b) { return b * a; }

inline dd operator/(dd a, dd b) {
    double q1 = a.hi / b.hi;
    dd r = a - b * q1;
    double q2 = r.hi / b.hi;
    r = r - b * q2;
    double q3 = r.hi / b.hi;
    dd q = quick_two_sum(q1, q2);
    return q + q3;
}
inline dd operator/(dd a, double b) { return a / dd(b); }
inline dd operator/(double a, dd b) { return dd(a) / b; }

inline dd& operator+=(dd& a, dd b) { a = a + b; return a; }
inline dd& operator+=(dd& a, double b) { a = a + b; return a; }
inline dd& operator-=(dd& a, dd b) { a = a - b; return a; }
inline dd& operator*=(dd& a, dd b) { a = a * b; return a; }
inline dd& operator/=(dd& a, dd b) { a = a / b; return a; }

inline bool operator<(dd a, dd b)  { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(dd a, dd b)  { return b < a; }
inline bool operator<=(dd a, dd b) { return !(b < a); }
inline bool operator>=(dd a, dd b) { return !(a < b); }
inline bool operator==(dd a, dd b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator!=(dd a, dd b) { return !(a == b); }

inline dd fabs(dd a) { return (a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0)) ? -a : a; }

inline dd ldexp(dd a, int n) { return {std::ldexp(a.hi, n), std::ldexp(a.lo, n)}; }

inline dd sqr(dd a) {
    dd p = two_prod(a.hi, a.hi);
    p.lo += 2.0 * a.hi * a.lo;
    return quick_two_sum(p.hi, p.lo);
}

inline dd floor(dd a) {
    double f = std::floor(a.hi);
    if (f == a.hi) {
        // hi is integral; lo decides the rest
        dd r = quick_two_sum(f, std::floor(a.lo));
        return r;
    }
    return {f, 0.0};
}

inline dd sqrt(dd a) {
    if (a.hi == 0.0 && a.lo == 0.0) return {0.0, 0.0};
    double s = std::sqrt(a.hi);
    dd e = (a - sqr(dd(s))) / (2.0 * s);
    return quick_two_sum(s, e.hi + e.lo);
}

// integer power by squaring
inline dd npow(dd a, int n) {
    if (n == 0) return dd(1.0);
    bool inv = n < 0;
    unsigned m = inv ? -static_cast<unsigned>(n) : static_cast<unsigned>(n);
    dd acc(1.0), base = a;
    while (m) {
        if (m & 1u) acc *= base;
        base = sqr(base);
        m >>= 1;
    }
    return inv ? dd(1.0) / acc : acc;
}

// ---- transcendentals (dd.cpp) -------------------------------------------

dd exp(dd a);
dd log(dd a);
dd log1p_small(dd t);   // |t| < 0.01, Taylor series
dd exp_small(dd t);     // |t| < 0.01, Taylor series
dd pow(dd a, double r); // a > 0

dd dd_from_string(std::string_view s);
std::string to_string(dd a, int digits = 30);

dd dd_pi();
dd dd_two_pi();
dd dd_ln2();

} // namespace kfd
