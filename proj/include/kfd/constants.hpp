#pragma once
// High-precision special constants and the mean-square series constants
//   Bk = sum g_k^2(m) m^{-3/2},   g_k(m) = sum_{m=n t^k} mu(t) d(n) t^{k/2}
//   Ck = sum f_k^2(m) m^{-3/2},   f_k(m) = sum_{m=n t^k}       d(n) t^{k/2}
// evaluated by two independent routes: an exact sieved partial sum with a
// fitted tail, and a prime-by-prime local-factor product with an
// analytically extrapolated deficit tail.

#include <cstdint>
#include <string>
#include <vector>

#include "kfd/dd.hpp"

namespace kfd {

// Riemann zeta by Euler-Maclaurin with Bernoulli corrections through B20.
// Valid for s > 0, s != 1 (the 0 < s < 1 continuation included).
dd zeta_dd(double s);
dd zeta_prime_dd(double s); // s > 1
dd euler_gamma_dd();
dd prime_zeta_dd(double s); // sum over primes p^{-s}, s > 1

// point evaluations (real-valued: t^{k/2} is irrational for odd k)
double gk_point(uint64_t m, int k);
double fk_point(uint64_t m, int k);

enum class ConstantKind { Bk, Ck, DSquared }; // DSquared: sum d^2(m) m^{-3/2}

struct DirectSumParams {
    uint64_t M = 100'000'000;
    uint64_t segment = uint64_t(1) << 21;
};

struct EulerProductParams {
    uint32_t P = 100'000;
    int alpha_max = 512;
};

struct ConstantEstimate {
    ConstantKind kind = ConstantKind::Bk;
    int k = 0;
    dd value;
    double tail_bound = 0.0;
    bool converged = false;
    bool divergent = false; // series provably has no finite value
    std::string method;
    uint64_t M = 0;      // DirectSum parameter
    uint32_t P = 0;      // EulerProduct parameters
    int alpha_max = 0;
};

// true when the defining series diverges (e.g. Bk at k = 2, where the
// local term g_k^2(p^k) p^{-3k/2} ~ 1/p makes the sum over primes unbounded)
bool series_diverges(ConstantKind kind, int k);

ConstantEstimate series_constant_direct(ConstantKind kind, int k,
                                        const DirectSumParams& params = {});
ConstantEstimate series_constant_euler(ConstantKind kind, int k,
                                       const EulerProductParams& params = {});

// one sieve pass shared across several constants
struct ConstantRequest {
    ConstantKind kind;
    int k;
};
std::vector<ConstantEstimate>
series_constants_direct(const std::vector<ConstantRequest>& reqs,
                        const DirectSumParams& params = {});

// zeta(3/2)^4 / zeta(3) -- the full d^2 series in closed form
dd dsquared_series_closed();

// zeta(3/2)^4 / (6 pi^2 zeta(3))
ConstantEstimate tong_constant();

} // namespace kfd
