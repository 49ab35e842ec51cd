#include "kfd/spacing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "kfd/dd.hpp"
#include "kfd/errors.hpp"
#include "kfd/sieve.hpp"

namespace kfd {

namespace {

struct Val {
    double v;    // sqrt(n / d^k), double approximation
    uint32_t n;
    uint32_t d;
};

__uint128_t pow_u128(uint64_t b, int k) {
    __uint128_t acc = 1;
    for (int i = 0; i < k; ++i) acc *= b;
    return acc;
}

dd value_dd(uint32_t n, uint32_t d, int k) {
    return sqrt(dd(double(n)) / dd(double(pow_u128(d, k))));
}

// exact-side comparator: |sqrt(n1/d1^k) - sqrt(n2/d2^k)| <= delta.
// cross-multiplied equality n1 d2^k == n2 d1^k decides ties at delta = 0;
// everything else is settled in double-double (~1e-30), far below the
// resolution of any double input delta.
bool within_delta(uint32_t n1, uint32_t d1, uint32_t n2, uint32_t d2, int k,
                  double delta) {
    __uint128_t a = __uint128_t(n1) * pow_u128(d2, k);
    __uint128_t b = __uint128_t(n2) * pow_u128(d1, k);
    if (a == b) return true; // zero spacing
    dd diff = fabs(value_dd(n1, d1, k) - value_dd(n2, d2, k));
    return diff <= dd(delta);
}

std::vector<Val> build_side(uint64_t D, uint64_t N, int k) {
    std::vector<Val> vals;
    vals.reserve(D * N);
    for (uint64_t d = D + 1; d <= 2 * D; ++d) {
        double dk = double(pow_u128(d, k));
        for (uint64_t n = N + 1; n <= 2 * N; ++n)
            vals.push_back({std::sqrt(double(n) / dk), uint32_t(n), uint32_t(d)});
    }
    std::sort(vals.begin(), vals.end(),
              [](const Val& a, const Val& b) { return a.v < b.v; });
    return vals;
}

} // namespace

uint64_t count_near_resonances(const DyadicBox& box, uint64_t budget) {
    if (box.k < 2) throw std::domain_error("count_near_resonances: k >= 2");
    if (box.delta < 0.0) throw std::domain_error("count_near_resonances: delta >= 0");
    if (box.D1 < 1 || box.D2 < 1 || box.N1 < 1 || box.N2 < 1)
        throw std::domain_error("count_near_resonances: block starts >= 1");
    __uint128_t pairs = __uint128_t(box.D1) * box.N1 * box.D2 * box.N2;
    if (pairs > budget)
        throw resource_error("count_near_resonances: box exceeds budget; "
                             "use a smaller box");
    // (2D)^k * 2N must stay within the exact 128-bit comparison
    double amax = std::pow(2.0 * double(std::max(box.D1, box.D2)), box.k) * 2.0 *
                  double(std::max(box.N1, box.N2));
    if (amax > 1e36)
        throw resource_error("count_near_resonances: values exceed exact range");

    auto side1 = build_side(box.D1, box.N1, box.k);
    auto side2 = build_side(box.D2, box.N2, box.k);

    // guard band around the window edges; anything inside it is re-tested
    uint64_t count = 0;
    for (const Val& w : side2) {
        double eps = 4.0 * std::max(1.0, std::fabs(w.v) + box.delta) * 2.3e-16 + 1e-300;
        double lo_sure = w.v - box.delta + eps;
        double hi_sure = w.v + box.delta - eps;
        double lo_cand = w.v - box.delta - eps;
        double hi_cand = w.v + box.delta + eps;

        auto cand_begin = std::lower_bound(
            side1.begin(), side1.end(), lo_cand,
            [](const Val& a, double t) { return a.v < t; });
        auto cand_end = std::upper_bound(
            side1.begin(), side1.end(), hi_cand,
            [](double t, const Val& a) { return t < a.v; });
        for (auto it = cand_begin; it != cand_end; ++it) {
            if (it->v >= lo_sure && it->v <= hi_sure && lo_sure <= hi_sure) {
                ++count;
            } else if (within_delta(it->n, it->d, w.n, w.d, box.k, box.delta)) {
                ++count;
            }
        }
    }
    return count;
}

double count_envelope(const DyadicBox& box) {
    double dd12 = double(box.D1) * double(box.D2);
    double nn12 = double(box.N1) * double(box.N2);
    return box.delta * std::pow(dd12, 1.0 + 0.25 * box.k) * std::pow(nn12, 0.75) +
           std::sqrt(dd12 * nn12) * std::log(2.0 * dd12 * nn12);
}

double resonance_sum(double y, double z, int k, double T, uint64_t budget) {
    if (k < 2) throw std::domain_error("resonance_sum: k >= 2 required");
    if (y < 1.0 || z < 1.0) throw std::domain_error("resonance_sum: y, z >= 1");
    if (T < 1.0) throw std::domain_error("resonance_sum: T >= 1");
    uint64_t ymax = uint64_t(y), zmax = uint64_t(z);
    __uint128_t M = __uint128_t(ymax) * zmax;
    if (M * M > budget)
        throw resource_error("resonance_sum: y*z too large for the pair budget");

    uint32_t pb = static_cast<uint32_t>(std::sqrt(double(zmax + 1))) + 2;
    auto primes = primes_upto(pb);
    std::vector<int32_t> dtab;
    std::vector<int8_t> mtab;
    sieve_d_mu(1, zmax + 1, primes, dtab, mtab);

    struct WVal {
        double v;
        double weight; // d(n) d^{-k/4} n^{-3/4}
        uint32_t n, d;
    };
    std::vector<WVal> vals;
    vals.reserve(ymax * zmax);
    for (uint64_t d = 1; d <= ymax; ++d) {
        double dk = double(pow_u128(d, k));
        double dw = std::pow(double(d), -0.25 * k);
        for (uint64_t n = 1; n <= zmax; ++n) {
            double w = double(dtab[n - 1]) * dw * std::pow(double(n), -0.75);
            vals.push_back({std::sqrt(double(n) / dk), w, uint32_t(n), uint32_t(d)});
        }
    }
    std::sort(vals.begin(), vals.end(),
              [](const WVal& a, const WVal& b) { return a.v < b.v; });

    const double sqrtT = std::sqrt(T);
    const double flip = 1.0 / sqrtT; // min(...) switches branch here
    double sum = 0.0, comp = 0.0;
    auto add = [&](double term) {
        double t = sum + term;
        if (std::fabs(sum) >= std::fabs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
    };
    const size_t n = vals.size();
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            double gap = vals[j].v - vals[i].v;
            double weight;
            if (gap <= flip) {
                // equal values are excluded by the summation condition
                __uint128_t a = __uint128_t(vals[i].n) * pow_u128(vals[j].d, k);
                __uint128_t b = __uint128_t(vals[j].n) * pow_u128(vals[i].d, k);
                if (a == b) continue;
                if (gap < 1e-14) {
                    dd g = value_dd(vals[j].n, vals[j].d, k) -
                           value_dd(vals[i].n, vals[i].d, k);
                    gap = std::fabs(g.to_double());
                }
                weight = std::min(sqrtT, gap > 0.0 ? 1.0 / gap : sqrtT);
            } else {
                weight = 1.0 / gap;
            }
            add(2.0 * vals[i].weight * vals[j].weight * weight); // ordered pairs
        }
    }
    return sum + comp;
}

} // namespace kfd
