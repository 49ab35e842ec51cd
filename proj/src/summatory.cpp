#include "kfd/summatory.hpp"

#include <cmath>
#include <stdexcept>

#include "kfd/constants.hpp"
#include "kfd/errors.hpp"
#include "kfd/sieve.hpp"

namespace kfd {

uint64_t isqrt_u64(uint64_t x) {
    uint64_t r = static_cast<uint64_t>(std::sqrt(double(x)));
    while (r > 0 && r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r;
}

uint64_t ikroot(uint64_t x, int k) {
    if (k < 1) throw std::domain_error("ikroot: k >= 1");
    if (k == 1) return x;
    if (k == 2) return isqrt_u64(x);
    if (x == 0) return 0;
    uint64_t r = static_cast<uint64_t>(std::pow(double(x), 1.0 / k));
    auto pw = [&](uint64_t b) -> __uint128_t {
        __uint128_t acc = 1;
        for (int i = 0; i < k; ++i) acc *= b;
        return acc;
    };
    while (r > 0 && pw(r) > x) --r;
    while (pw(r + 1) <= x) ++r;
    return r;
}

int64_t big_d(uint64_t x) {
    if (x == 0) return 0;
    // D(x) log-linear in x; past ~2e17 the result would overflow int64
    if (x > (uint64_t(2) << 56))
        throw resource_error("big_d: x too large for 64-bit result");
    uint64_t s = isqrt_u64(x);
    uint64_t acc = 0;
    for (uint64_t n = 1; n <= s; ++n) acc += x / n;
    return int64_t(2 * acc - s * s);
}

int64_t big_d(double x) {
    if (x < 1.0) throw std::domain_error("big_d: x >= 1 required");
    if (x >= 1.8e17) throw resource_error("big_d: x too large");
    return big_d(static_cast<uint64_t>(x));
}

namespace {

uint64_t pow_k(uint64_t b, int k) {
    __uint128_t acc = 1;
    for (int i = 0; i < k; ++i) acc *= b;
    return uint64_t(acc);
}

} // namespace

int64_t big_dk(uint64_t x, int k) {
    if (k < 2) throw std::domain_error("big_dk: k >= 2 required");
    if (x == 0) return 0;
    uint64_t r = ikroot(x, k);
    auto mu = mobius_upto(r);
    int64_t acc = 0;
    for (uint64_t t = 1; t <= r; ++t) {
        if (mu[t] == 0) continue;
        acc += mu[t] * big_d(x / pow_k(t, k));
    }
    return acc;
}

int64_t big_d11k(uint64_t x, int k) {
    if (k < 2) throw std::domain_error("big_d11k: k >= 2 required");
    if (x == 0) return 0;
    uint64_t r = ikroot(x, k);
    int64_t acc = 0;
    for (uint64_t t = 1; t <= r; ++t) acc += big_d(x / pow_k(t, k));
    return acc;
}

KfreeCoefficients kfree_coefficients(int k) {
    if (k < 2) throw std::domain_error("kfree_coefficients: k >= 2 required");
    dd zk = zeta_dd(double(k));
    dd zpk = zeta_prime_dd(double(k));
    dd gamma = euler_gamma_dd();
    KfreeCoefficients c;
    c.c1 = dd(1.0) / zk;
    // sum_t mu(t) log t / t^k = zeta'(k)/zeta(k)^2
    c.c2 = (gamma * 2.0 - 1.0) / zk - double(k) * zpk / sqr(zk);
    return c;
}

MainTermModel MainTermModel::make(Problem problem, int k) {
    MainTermModel m;
    m.problem = problem;
    m.k = k;
    m.constants_used.gamma = euler_gamma_dd();
    switch (problem) {
        case Problem::Dirichlet:
            m.coefficients = {{Basis::XLogX, dd(1.0)},
                              {Basis::X, m.constants_used.gamma * 2.0 - 1.0}};
            break;
        case Problem::KFree: {
            if (k < 2) throw std::domain_error("MainTermModel: k >= 2 required");
            auto c = kfree_coefficients(k);
            m.constants_used.zeta_k = zeta_dd(double(k));
            m.constants_used.zeta_prime_k = zeta_prime_dd(double(k));
            m.coefficients = {{Basis::XLogX, c.c1}, {Basis::X, c.c2}};
            break;
        }
        case Problem::ThreeDim: {
            if (k < 2) throw std::domain_error("MainTermModel: k >= 2 required");
            dd zk = zeta_dd(double(k));
            dd zpk = zeta_prime_dd(double(k));
            dd zik = zeta_dd(1.0 / double(k)); // negative for k >= 2
            m.constants_used.zeta_k = zk;
            m.constants_used.zeta_prime_k = zpk;
            m.constants_used.zeta_inv_k = zik;
            m.coefficients = {
                {Basis::XLogX, zk},
                {Basis::X, zpk * double(k) + (m.constants_used.gamma * 2.0 - 1.0) * zk},
                {Basis::XPowInvK, sqr(zik)},
            };
            break;
        }
    }
    return m;
}

dd MainTermModel::eval(dd x) const {
    dd lx = log(x);
    dd acc(0.0);
    for (const auto& [basis, coef] : coefficients) {
        switch (basis) {
            case Basis::XLogX: acc += coef * x * lx; break;
            case Basis::X: acc += coef * x; break;
            case Basis::XPowInvK: acc += coef * exp(lx * (1.0 / double(k))); break;
        }
    }
    return acc;
}

double MainTermModel::eval_double(double x) const {
    double lx = std::log(x);
    double acc = 0.0;
    for (const auto& [basis, coef] : coefficients) {
        switch (basis) {
            case Basis::XLogX: acc += coef.to_double() * x * lx; break;
            case Basis::X: acc += coef.to_double() * x; break;
            case Basis::XPowInvK:
                acc += coef.to_double() * std::pow(x, 1.0 / double(k));
                break;
        }
    }
    return acc;
}

ErrorTermSample delta_sample(double x, const MainTermModel& model) {
    if (x < 1.0) throw std::domain_error("delta: x >= 1 required");
    uint64_t xi = static_cast<uint64_t>(x);
    int64_t summ = 0;
    switch (model.problem) {
        case Problem::Dirichlet: summ = big_d(xi); break;
        case Problem::KFree: summ = big_dk(xi, model.k); break;
        case Problem::ThreeDim: summ = big_d11k(xi, model.k); break;
    }
    ErrorTermSample s;
    s.x = x;
    s.summatory = summ;
    s.main = model.eval(dd(x));
    s.value = (dd(double(summ)) - s.main).to_double();
    return s;
}

ErrorTermSample delta_dirichlet(double x) {
    static const MainTermModel model = MainTermModel::make(Problem::Dirichlet);
    return delta_sample(x, model);
}

ErrorTermSample delta_kfree(double x, int k) {
    return delta_sample(x, MainTermModel::make(Problem::KFree, k));
}

ErrorTermSample delta_threedim(double x, int k) {
    return delta_sample(x, MainTermModel::make(Problem::ThreeDim, k));
}

std::pair<int64_t, int64_t>
hyperbola_identity_check(uint64_t x, double y, int k) {
    if (k < 2) throw std::domain_error("hyperbola_identity_check: k >= 2");
    if (x < 100) throw std::domain_error("hyperbola_identity_check: x >= 100");
    double xroot = std::pow(double(x), 1.0 / k);
    if (y < 10.0 || y > xroot + 1e-9)
        throw std::domain_error("hyperbola_identity_check: need 10 <= y <= x^{1/k}");

    int64_t lhs = big_dk(x, k);

    uint64_t ylo = static_cast<uint64_t>(y);
    uint64_t ykpow = pow_k(ylo, k);
    // n-range extended from floor(x/y^k) to floor(x/floor(y)^k); the extra
    // terms have M(r_n) = M(floor(y)) and cancel against S3 exactly
    uint64_t nmax = x / ykpow;

    auto mu = mobius_upto(ylo);
    int64_t s1 = 0;
    for (uint64_t t = 1; t <= ylo; ++t) {
        if (mu[t] == 0) continue;
        s1 += mu[t] * big_d(x / pow_k(t, k));
    }

    uint64_t rmax = ikroot(x, k);
    auto M = mertens_table(rmax);

    // d(n) for n <= nmax via one sieve
    int64_t s2 = 0;
    if (nmax >= 1) {
        uint32_t pb = static_cast<uint32_t>(std::sqrt(double(nmax + 1))) + 2;
        auto primes = primes_upto(pb);
        std::vector<int32_t> dtab;
        std::vector<int8_t> mtab;
        sieve_d_mu(1, nmax + 1, primes, dtab, mtab);
        for (uint64_t n = 1; n <= nmax; ++n) {
            uint64_t rn = ikroot(x / n, k);
            s2 += int64_t(dtab[n - 1]) * M[rn];
        }
    }

    int64_t s3 = (nmax >= 1 ? big_d(nmax) : 0) * M[ylo];
    return {lhs, s1 + s2 - s3};
}

double psi_sum(double x, int k, double y) {
    if (k < 2) throw std::domain_error("psi_sum: k >= 2 required");
    if (y < 1.0) throw std::domain_error("psi_sum: y >= 1 required");
    long double yk = std::pow((long double)y, k);
    if ((long double)x < yk) return 0.0;

    long double nmaxl = std::floor((long double)x / yk);
    uint64_t nmax = static_cast<uint64_t>(nmaxl);
    while ((long double)(nmax + 1) * yk <= (long double)x) ++nmax;
    while (nmax > 0 && (long double)nmax * yk > (long double)x) --nmax;
    if (nmax == 0) return 0.0;

    bool x_integral = x == std::floor(x) && x < 1.8e17;
    uint64_t xi = x_integral ? static_cast<uint64_t>(x) : 0;

    uint32_t pb = static_cast<uint32_t>(std::sqrt(double(nmax + 1))) + 2;
    auto primes = primes_upto(pb);
    std::vector<int32_t> dtab;
    std::vector<int8_t> mtab;
    sieve_d_mu(1, nmax + 1, primes, dtab, mtab);

    // Neumaier-compensated sum, ascending n
    double sum = 0.0, comp = 0.0;
    for (uint64_t n = 1; n <= nmax; ++n) {
        double psi;
        if (x_integral) {
            uint64_t q = xi / n;
            uint64_t r = ikroot(q, k);
            // exact integer part; fractional part from the long double root
            if (pow_k(r, k) * n == xi) {
                psi = -0.5; // (x/n)^{1/k} is a whole number
            } else {
                long double u = std::pow((long double)xi / n, 1.0L / k);
                long double frac = u - (long double)r;
                if (frac < 0.0L) frac = 0.0L;
                if (frac >= 1.0L) frac = std::nextafter(1.0L, 0.0L);
                psi = double(frac) - 0.5;
            }
        } else {
            long double u = std::pow((long double)x / n, 1.0L / k);
            psi = double(u - std::floor(u)) - 0.5;
        }
        double term = double(dtab[n - 1]) * psi;
        double t = sum + term;
        if (std::fabs(sum) >= std::fabs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
    }
    return sum + comp;
}

ThreedimSplit threedim_split(double x, int k, double y) {
    if (k < 2) throw std::domain_error("threedim_split: k >= 2 required");
    double xroot = std::pow(x, 1.0 / k);
    if (y < 2.0 || y > xroot + 1e-9)
        throw std::domain_error("threedim_split: need 2 <= y <= x^{1/k}");

    MainTermModel dir = MainTermModel::make(Problem::Dirichlet);
    dd sum_delta(0.0);
    uint64_t ylo = static_cast<uint64_t>(y);
    for (uint64_t t = 1; t <= ylo; ++t) {
        double xt = x / double(pow_k(t, k));
        if (xt < 1.0) break;
        dd main = dir.eval(dd(xt));
        sum_delta += dd(double(big_d(xt))) - main;
    }
    double psi_part = psi_sum(x, k, y);

    ErrorTermSample full = delta_threedim(x, k);
    ThreedimSplit out;
    out.sum_delta = sum_delta.to_double();
    out.psi_part = psi_part;
    out.residual = (dd(full.value) - (sum_delta - dd(psi_part))).to_double();
    return out;
}

} // namespace kfd
