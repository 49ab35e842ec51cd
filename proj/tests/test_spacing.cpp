#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "kfd/dd.hpp"
#include "kfd/errors.hpp"
#include "kfd/spacing.hpp"
#include "oracles.hpp"

using namespace kfd;

namespace {

// independent quadratic-time counter with its own exact comparator
bool brute_within(uint64_t n1, uint64_t d1, uint64_t n2, uint64_t d2, int k,
                  double delta) {
    __uint128_t a = n1, b = n2;
    for (int i = 0; i < k; ++i) {
        a *= d2;
        b *= d1;
    }
    if (a == b) return true;
    dd v1 = sqrt(dd(double(n1))) / sqrt(npow(dd(double(d1)), k));
    dd v2 = sqrt(dd(double(n2))) / sqrt(npow(dd(double(d2)), k));
    return fabs(v1 - v2) <= dd(delta);
}

uint64_t brute_count(const DyadicBox& box, uint64_t n2lo, uint64_t n2hi) {
    uint64_t c = 0;
    for (uint64_t d1 = box.D1 + 1; d1 <= 2 * box.D1; ++d1)
        for (uint64_t n1 = box.N1 + 1; n1 <= 2 * box.N1; ++n1)
            for (uint64_t d2 = box.D2 + 1; d2 <= 2 * box.D2; ++d2)
                for (uint64_t n2 = n2lo; n2 <= n2hi; ++n2)
                    if (brute_within(n1, d1, n2, d2, box.k, box.delta)) ++c;
    return c;
}

uint64_t brute_count(const DyadicBox& box) {
    return brute_count(box, box.N2 + 1, 2 * box.N2);
}

} // namespace

TEST_CASE("window count equals brute force on the reference box") {
    DyadicBox box{8, 8, 64, 64, 2, 1e-3};
    CHECK(count_near_resonances(box) == brute_count(box));
}

TEST_CASE("window count equals brute force on random boxes") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 25; ++i) {
        DyadicBox box;
        box.D1 = 1 + rng() % 8;
        box.D2 = 1 + rng() % 8;
        box.N1 = 1 + rng() % 24;
        box.N2 = 1 + rng() % 24;
        box.k = 2 + int(rng() % 4);
        double mag = std::pow(10.0, -1.0 - double(rng() % 5));
        box.delta = mag * std::uniform_real_distribution<>(0.1, 10.0)(rng);
        CHECK(count_near_resonances(box) == brute_count(box));
    }
}

TEST_CASE("degenerate deltas") {
    // delta = 0 with equal blocks: diagonal pairs always count
    DyadicBox diag{4, 4, 32, 32, 2, 0.0};
    uint64_t c = count_near_resonances(diag);
    CHECK(c >= 4 * 32);
    CHECK(c == brute_count(diag));

    // huge delta: every quadruple satisfies the inequality
    DyadicBox all{3, 5, 16, 8, 3, 1e9};
    CHECK(count_near_resonances(all) == uint64_t(3 * 16) * uint64_t(5 * 8));
}

TEST_CASE("count is monotone in delta and symmetric") {
    DyadicBox box{4, 6, 20, 12, 2, 0.0};
    uint64_t prev = 0;
    for (double delta : {0.0, 1e-6, 1e-4, 1e-2, 0.5, 10.0}) {
        box.delta = delta;
        uint64_t c = count_near_resonances(box);
        CHECK(c >= prev);
        prev = c;
        DyadicBox sw{box.D2, box.D1, box.N2, box.N1, box.k, box.delta};
        CHECK(count_near_resonances(sw) == c);
    }
}

TEST_CASE("sub-box additivity over side-2's n-range") {
    DyadicBox box{4, 4, 16, 16, 2, 3e-3};
    uint64_t whole = count_near_resonances(box);
    uint64_t left = brute_count(box, 17, 24);
    uint64_t right = brute_count(box, 25, 32);
    CHECK(whole == left + right);
}

TEST_CASE("budget guard") {
    DyadicBox big{100000, 100000, 100000, 100000, 2, 1.0};
    CHECK_THROWS_AS((void)count_near_resonances(big), resource_error);
}

TEST_CASE("envelope shape") {
    DyadicBox box{8, 8, 64, 64, 2, 0.0};
    double log_term = std::sqrt(64.0 * 4096.0) *
                      std::log(2.0 * 64.0 * 4096.0);
    CHECK(count_envelope(box) == doctest::Approx(log_term));
    // doubling delta doubles the first summand exactly
    box.delta = 0.25;
    double e1 = count_envelope(box) - log_term;
    box.delta = 0.5;
    double e2 = count_envelope(box) - log_term;
    CHECK(e2 == doctest::Approx(2.0 * e1).epsilon(1e-14));
}

TEST_CASE("resonance sum against an independent quadruple loop") {
    double y = 6, z = 60, T = 1e6;
    int k = 4;
    double fast = resonance_sum(y, z, k, T);
    long double acc = 0.0L;
    for (uint64_t d1 = 1; d1 <= 6; ++d1)
        for (uint64_t n1 = 1; n1 <= 60; ++n1)
            for (uint64_t d2 = 1; d2 <= 6; ++d2)
                for (uint64_t n2 = 1; n2 <= 60; ++n2) {
                    __uint128_t a = n1, b = n2;
                    for (int i = 0; i < k; ++i) { a *= d2; b *= d1; }
                    if (a == b) continue;
                    long double v1 = sqrtl((long double)n1 / powl((long double)d1, k));
                    long double v2 = sqrtl((long double)n2 / powl((long double)d2, k));
                    long double w = std::min((long double)std::sqrt(T),
                                             1.0L / fabsl(v1 - v2));
                    acc += (long double)(oracle::d_enum(n1) * oracle::d_enum(n2)) /
                           (powl((long double)(d1 * d2), k / 4.0L) *
                            powl((long double)(n1 * n2), 0.75L)) *
                           w;
                }
    CHECK(fast == doctest::Approx(double(acc)).epsilon(1e-9));
}

TEST_CASE("resonance sum: degenerate y and monotonicity in T") {
    // y < 2: only d1 = d2 = 1, pairs n1 != n2
    double v = resonance_sum(1.0, 40.0, 2, 1e4);
    long double acc = 0.0L;
    for (uint64_t n1 = 1; n1 <= 40; ++n1)
        for (uint64_t n2 = 1; n2 <= 40; ++n2) {
            if (n1 == n2) continue;
            long double gap = fabsl(sqrtl((long double)n1) - sqrtl((long double)n2));
            acc += (long double)(oracle::d_enum(n1) * oracle::d_enum(n2)) /
                   powl((long double)(n1 * n2), 0.75L) *
                   std::min((long double)1e2, 1.0L / gap);
        }
    CHECK(v == doctest::Approx(double(acc)).epsilon(1e-10));

    double prev = 0.0;
    for (double T : {10.0, 1e3, 1e5, 1e7}) {
        double s = resonance_sum(4.0, 50.0, 2, T);
        CHECK(s >= prev);
        prev = s;
    }
    CHECK_THROWS_AS((void)resonance_sum(3000.0, 3000.0, 2, 1e6), resource_error);
}
