#pragma once
// Summatory functions and error terms for the three divisor problems:
//   D(x)        = sum_{n<=x} d(n)
//   D^(k)(x)    = sum_{n<=x} d^(k)(n)        (k-free divisors)
//   D(1,1,k;x)  = sum_{n<=x} d(1,1,k;n) = sum_{t^k <= x} D(x/t^k)
// with their analytic main terms evaluated in double-double, plus the exact
// hyperbola decomposition and the direct psi-sum.

#include <cstdint>
#include <utility>
#include <vector>

#include "kfd/dd.hpp"

namespace kfd {

enum class Problem { Dirichlet, KFree, ThreeDim };

uint64_t isqrt_u64(uint64_t x);
uint64_t ikroot(uint64_t x, int k); // largest r with r^k <= x

// D(x) by the hyperbola method: 2 sum_{n<=sqrt(x)} floor(x/n) - floor(sqrt x)^2
int64_t big_d(uint64_t x);
int64_t big_d(double x);

// D^(k)(x) = sum_{t <= x^{1/k}} mu(t) D(x / t^k)   (exact)
int64_t big_dk(uint64_t x, int k);
// D(1,1,k;x) = sum_{t <= x^{1/k}} D(x / t^k)       (exact)
int64_t big_d11k(uint64_t x, int k);

// main-term coefficients of D^(k): C1 = 1/zeta(k),
// C2 = (2 gamma - 1)/zeta(k) - k zeta'(k)/zeta(k)^2
struct KfreeCoefficients {
    dd c1, c2;
};
KfreeCoefficients kfree_coefficients(int k);

struct MainTermModel {
    enum class Basis { XLogX, X, XPowInvK };
    Problem problem = Problem::Dirichlet;
    int k = 0;
    std::vector<std::pair<Basis, dd>> coefficients;
    struct ConstantsUsed {
        dd gamma, zeta_k, zeta_prime_k, zeta_inv_k;
    } constants_used;

    static MainTermModel make(Problem problem, int k = 0);
    dd eval(dd x) const;
    double eval_double(double x) const;
};

struct ErrorTermSample {
    double x = 0.0;
    double value = 0.0;    // summatory - main, rounded to double at the end
    int64_t summatory = 0; // exact integer value at floor(x)
    dd main;
};

ErrorTermSample delta_dirichlet(double x);
ErrorTermSample delta_kfree(double x, int k);
ErrorTermSample delta_threedim(double x, int k);
// amortised variants
ErrorTermSample delta_sample(double x, const MainTermModel& model);

// Exact decomposition D^(k)(x) = S1 + S2 - S3 with
//   S1 = sum_{t<=y} mu(t) D(x/t^k)
//   S2 = sum_{n<=x/y^k} d(n) M((x/n)^{1/k})
//   S3 = D(x/y^k) M(y)
// Returns (D^(k)(x), S1+S2-S3); the contract is that they are equal.
std::pair<int64_t, int64_t>
hyperbola_identity_check(uint64_t x, double y, int k);

// S(x) = sum_{n <= x/y^k} d(n) psi((x/n)^{1/k}), psi(u) = {u} - 1/2,
// evaluated term by term (no trigonometric approximation)
double psi_sum(double x, int k, double y);

// Delta(1,1,k;x) ~ sum_{t<=y} Delta(x/t^k) - S(x); the residual collects the
// lower-order remainder, expected within A (x y^{-k-1} log x + y)
struct ThreedimSplit {
    double sum_delta = 0.0;
    double psi_part = 0.0;
    double residual = 0.0;
};
ThreedimSplit threedim_split(double x, int k, double y);

} // namespace kfd
