#pragma once
// Brute-force counting of near-resonances
//   |sqrt(n1/d1^k) - sqrt(n2/d2^k)| <= delta
// over dyadic boxes d_j in (D_j, 2 D_j], n_j in (N_j, 2 N_j], and the
// weighted pair sum over d <= y, n <= z with min(sqrt T, 1/|spacing|)
// weights.  Counts are exact: pairs near the threshold are re-tested in
// double-double, and exact equality (n1 d2^k = n2 d1^k) in integers.

#include <cstdint>

namespace kfd {

struct DyadicBox {
    uint64_t D1 = 1, D2 = 1, N1 = 1, N2 = 1; // block starts, d in (D, 2D]
    int k = 2;
    double delta = 0.0;
};

// sorted-value window scan, O(M log M); equal-value (diagonal) pairs count
uint64_t count_near_resonances(const DyadicBox& box,
                               uint64_t budget = 10'000'000'000ull);

// delta (D1 D2)^{1+k/4} (N1 N2)^{3/4}
//   + (D1 D2 N1 N2)^{1/2} log(2 D1 D2 N1 N2), implied constant 1
double count_envelope(const DyadicBox& box);

// sum over d1,d2 <= y, n1,n2 <= z, n1 d2^k != n2 d1^k of
//   d(n1) d(n2) (d1 d2)^{-k/4} (n1 n2)^{-3/4} min(T^{1/2}, 1/|spacing|)
double resonance_sum(double y, double z, int k, double T,
                     uint64_t budget = 4'000'000'000ull);

} // namespace kfd
