#include "kfd/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kfd/errors.hpp"
#include "kfd/sieve.hpp"

namespace kfd {

namespace {

// B_2 .. B_22 as exact rationals
struct Rat { double num, den; };
constexpr Rat kBernoulli[] = {
    {1, 6},        {-1, 30},     {1, 42},      {-1, 30},     {5, 66},
    {-691, 2730},  {7, 6},       {-3617, 510}, {43867, 798}, {-174611, 330},
    {-854513, 138},
};
constexpr int kEmTerms = 10; // corrections through B20; B22 drives the error bound

dd bernoulli_dd(int j) { // B_{2j}, j >= 1
    const Rat& r = kBernoulli[j - 1];
    return dd(r.num) / dd(r.den);
}

dd pow_int_neg_s(uint64_t n, double s) { // n^{-s}
    if (n == 1) return dd(1.0);
    return exp(log(dd(double(n))) * (-s));
}

} // namespace

dd zeta_dd(double s) {
    if (s == 1.0) throw std::domain_error("zeta: pole at s = 1");
    if (s <= 0.0) throw std::domain_error("zeta: require s > 0");

    if (s >= 40.0) { // direct sum; terms decay at least like 2^{-40}
        dd sum(1.0);
        for (uint64_t n = 2; n < 64; ++n) {
            dd t = pow_int_neg_s(n, s);
            sum += t;
            if (t.hi < 1e-40) break;
        }
        return sum;
    }

    const int N = 128;
    dd sum(0.0);
    for (int n = 1; n < N; ++n) sum += pow_int_neg_s(n, s);
    dd lnN = log(dd(double(N)));
    dd Ns = exp(lnN * (-s)); // N^{-s}
    dd sm1 = dd(s) - 1.0;
    sum += Ns * dd(double(N)) / sm1; // N^{1-s}/(s-1)
    sum += Ns * 0.5;

    // sum_j  B_{2j}/(2j)! * s(s+1)...(s+2j-2) * N^{-s-2j+1}
    dd pw = Ns * dd(double(N)); // N^{1-s}
    dd invN2 = dd(1.0) / dd(double(N) * double(N));
    dd prod(1.0);
    double fact = 1.0;
    for (int j = 1; j <= kEmTerms; ++j) {
        if (j == 1) {
            prod = dd(s);
            fact = 2.0;
        } else {
            prod *= dd(s + (2 * j - 3)) * dd(s + (2 * j - 2));
            fact *= (2.0 * j - 1.0) * (2.0 * j);
        }
        pw *= invN2; // N^{-s-2j+1}
        sum += bernoulli_dd(j) / fact * prod * pw;
    }
    return sum;
}

dd zeta_prime_dd(double s) {
    if (s <= 1.0) throw std::domain_error("zeta_prime: require s > 1");
    if (s >= 40.0) {
        dd sum(0.0);
        for (uint64_t n = 2; n < 64; ++n) {
            dd t = pow_int_neg_s(n, s) * log(dd(double(n)));
            sum -= t;
            if (t.hi < 1e-40) break;
        }
        return sum;
    }

    const int N = 128;
    dd sum(0.0);
    for (int n = 2; n < N; ++n) sum -= pow_int_neg_s(n, s) * log(dd(double(n)));
    dd lnN = log(dd(double(N)));
    dd Ns = exp(lnN * (-s));
    dd sm1 = dd(s) - 1.0;
    dd N1s = Ns * dd(double(N)); // N^{1-s}
    sum += -(N1s * lnN) / sm1 - N1s / sqr(sm1);
    sum += -(lnN * Ns) * 0.5;

    dd pw = N1s;
    dd invN2 = dd(1.0) / dd(double(N) * double(N));
    dd prod(1.0), dsum(0.0); // prod = P_j(s) = s(s+1)...(s+2j-2), dsum = P_j'/P_j
    double fact = 1.0;
    for (int j = 1; j <= kEmTerms; ++j) {
        if (j == 1) {
            prod = dd(s);
            dsum = dd(1.0) / dd(s);
            fact = 2.0;
        } else {
            prod *= dd(s + (2 * j - 3)) * dd(s + (2 * j - 2));
            dsum += dd(1.0) / dd(s + (2 * j - 3)) + dd(1.0) / dd(s + (2 * j - 2));
            fact *= (2.0 * j - 1.0) * (2.0 * j);
        }
        pw *= invN2;
        sum += bernoulli_dd(j) / fact * prod * (dsum - lnN) * pw;
    }
    return sum;
}

dd euler_gamma_dd() {
    static const dd value = [] {
        const int N = 64;
        dd h(0.0);
        for (int n = 1; n <= N; ++n) h += dd(1.0) / dd(double(n));
        dd g = h - log(dd(double(N))) - dd(1.0) / dd(2.0 * N);
        dd invN2 = dd(1.0) / dd(double(N) * double(N));
        dd pw(1.0);
        for (int j = 1; j <= kEmTerms; ++j) {
            pw *= invN2;
            g += bernoulli_dd(j) / dd(2.0 * j) * pw;
        }
        return g;
    }();
    return value;
}

dd prime_zeta_dd(double s) {
    if (s <= 1.0) throw std::domain_error("prime_zeta: require s > 1");
    // P(s) = sum_{r>=1} mu(r)/r log zeta(r s)
    static const auto mu = mobius_upto(200);
    dd sum(0.0);
    for (int r = 1; r * s <= 140.0 && r < 200; ++r) {
        if (mu[r] == 0) continue;
        double rs = r * s;
        dd lz;
        if (rs >= 40.0) {
            dd zm1(0.0); // zeta(rs) - 1
            for (uint64_t n = 2; n < 64; ++n) {
                dd t = pow_int_neg_s(n, rs);
                zm1 += t;
                if (t.hi < 1e-42) break;
            }
            lz = log1p_small(zm1);
        } else {
            lz = log(zeta_dd(rs));
        }
        sum += lz * double(mu[r]) / double(r);
    }
    return sum;
}

// ---- point evaluations ------------------------------------------------------

namespace {

int64_t divisor_count(uint64_t n) {
    int64_t d = 1;
    for (uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        d *= e + 1;
    }
    if (n > 1) d *= 2;
    return d;
}

int mobius_point(uint64_t n) {
    int m = 1;
    for (uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        m = -m;
    }
    if (n > 1) m = -m;
    return m;
}

double half_power(uint64_t t, int k) { // t^{k/2}
    if (k % 2 == 0) return std::pow(double(t), k / 2);
    return std::pow(double(t), 0.5 * k);
}

} // namespace

double gk_point(uint64_t m, int k) {
    if (m < 1 || k < 2) throw std::domain_error("gk_point: m >= 1, k >= 2");
    double sum = 0.0;
    for (uint64_t t = 1;; ++t) {
        __uint128_t tk = 1;
        for (int i = 0; i < k; ++i) tk *= t;
        if (tk > m) break;
        uint64_t tku = uint64_t(tk);
        if (m % tku) continue;
        int mv = mobius_point(t);
        if (mv == 0) continue;
        sum += mv * double(divisor_count(m / tku)) * half_power(t, k);
    }
    return sum;
}

double fk_point(uint64_t m, int k) {
    if (m < 1 || k < 2) throw std::domain_error("fk_point: m >= 1, k >= 2");
    double sum = 0.0;
    for (uint64_t t = 1;; ++t) {
        __uint128_t tk = 1;
        for (int i = 0; i < k; ++i) tk *= t;
        if (tk > m) break;
        uint64_t tku = uint64_t(tk);
        if (m % tku) continue;
        sum += double(divisor_count(m / tku)) * half_power(t, k);
    }
    return sum;
}

// ---- local-factor power series ----------------------------------------------
// The local factor L_p = sum_a w^2(p^a) p^{-3a/2} is a power series in
// q = p^{-1/2} with integer coefficients, since
//   g_k(p^a) = (a+1) - p^{k/2}(a-k+1) [a >= k],
//   f_k(p^a) = sum_{j <= a/k} (a-jk+1) p^{jk/2}.
// log L_p expanded in q gives the exact per-prime deficits used to
// extrapolate the product over p > P via the prime zeta function.

namespace {

constexpr int kQOrder = 40;
using QSeries = std::vector<double>; // index j = power of q

QSeries local_factor_series(ConstantKind kind, int k) {
    QSeries u(kQOrder + 1, 0.0);
    if (kind == ConstantKind::Bk) {
        for (int a = 1; 3 * a - 2 * k <= kQOrder; ++a) {
            if (3 * a <= kQOrder) u[3 * a] += double(a + 1) * (a + 1);
            if (a >= k) {
                if (3 * a - k <= kQOrder)
                    u[3 * a - k] -= 2.0 * (a + 1) * (a - k + 1);
                u[3 * a - 2 * k] += double(a - k + 1) * (a - k + 1);
            }
        }
    } else if (kind == ConstantKind::Ck) {
        for (int a = 1; a <= kQOrder; ++a) {
            int e = a / k;
            for (int i = 0; i <= e; ++i)
                for (int j = 0; j <= e; ++j) {
                    int expo = 3 * a - (i + j) * k;
                    if (expo <= kQOrder)
                        u[expo] += double(a - i * k + 1) * (a - j * k + 1);
                }
        }
    } else { // DSquared
        for (int a = 1; 3 * a <= kQOrder; ++a)
            u[3 * a] += double(a + 1) * (a + 1);
    }
    return u;
}

QSeries series_mul(const QSeries& a, const QSeries& b) {
    QSeries c(kQOrder + 1, 0.0);
    for (int i = 0; i <= kQOrder; ++i) {
        if (a[i] == 0.0) continue;
        for (int j = 0; i + j <= kQOrder; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

QSeries series_log1p(const QSeries& u) {
    // log(1+u) = u - u^2/2 + u^3/3 - ...; u has valuation >= 2
    QSeries acc(kQOrder + 1, 0.0);
    QSeries power = u;
    double sign = 1.0;
    for (int n = 1; 2 * n <= kQOrder; ++n) {
        for (int j = 0; j <= kQOrder; ++j) acc[j] += sign * power[j] / n;
        power = series_mul(power, u);
        sign = -sign;
    }
    return acc;
}

dd local_factor_dd(ConstantKind kind, int k, uint64_t p, int alpha_max) {
    dd sqp = sqrt(dd(double(p)));
    dd t = dd(1.0) / npow(sqp, 3); // p^{-3/2}
    dd pk2 = npow(sqp, k);         // p^{k/2}
    dd L(1.0);
    dd ta(1.0);
    int settle = std::max(3 * k, 12);
    for (int a = 1; a <= alpha_max; ++a) {
        ta *= t;
        dd w;
        if (kind == ConstantKind::Bk) {
            w = dd(double(a + 1));
            if (a >= k) w -= pk2 * double(a - k + 1);
        } else if (kind == ConstantKind::Ck) {
            w = dd(0.0);
            dd pj(1.0); // p^{jk/2}
            for (int j = 0; j * k <= a; ++j) {
                w += pj * double(a - j * k + 1);
                pj *= pk2;
            }
        } else {
            w = dd(double(a + 1));
        }
        dd term = sqr(w) * ta;
        L += term;
        if (a > settle && term.hi < 1e-37 * L.hi) break;
    }
    return L;
}

} // namespace

bool series_diverges(ConstantKind kind, int k) {
    if (kind == ConstantKind::DSquared) return false;
    QSeries ell = series_log1p(local_factor_series(kind, k));
    for (int j = 0; j <= 2; ++j)
        if (ell[j] != 0.0) return true;
    return false;
}

ConstantEstimate series_constant_euler(ConstantKind kind, int k,
                                       const EulerProductParams& params) {
    if (kind != ConstantKind::DSquared && k < 2)
        throw std::domain_error("series_constant: k >= 2 required");

    ConstantEstimate est;
    est.kind = kind;
    est.k = kind == ConstantKind::DSquared ? 0 : k;
    est.method = "EulerProduct";
    est.P = params.P;
    est.alpha_max = params.alpha_max;
    est.divergent = series_diverges(kind, k);

    auto primes = primes_upto(params.P);
    dd log_prod(0.0);
    for (uint32_t p : primes)
        log_prod += log(local_factor_dd(kind, k, p, params.alpha_max));

    if (est.divergent) {
        est.value = exp(log_prod); // truncated product, informational only
        est.tail_bound = std::numeric_limits<double>::infinity();
        est.converged = false;
        return est;
    }

    QSeries ell = series_log1p(local_factor_series(kind, k));
    // prime power sums over p <= P for every needed half-integer exponent
    std::vector<dd> ppsum(kQOrder + 1, dd(0.0));
    for (uint32_t p : primes) {
        dd q = dd(1.0) / sqrt(dd(double(p)));
        dd qj(1.0);
        for (int j = 1; j <= kQOrder; ++j) {
            qj *= q;
            if (ell[j] != 0.0) ppsum[j] += qj;
        }
    }
    dd tail(0.0);
    for (int j = 3; j <= kQOrder; ++j) {
        if (ell[j] == 0.0) continue;
        tail += (prime_zeta_dd(0.5 * j) - ppsum[j]) * ell[j];
    }
    est.value = exp(log_prod + tail);

    // remaining error: series orders beyond kQOrder plus dd roundoff
    double coef_scale = 1.0;
    for (int j = kQOrder; j > 2; --j)
        if (ell[j] != 0.0) { coef_scale = std::fabs(ell[j]); break; }
    double lastq = std::pow(double(params.P), -0.5 * (kQOrder + 1));
    est.tail_bound = std::fabs(est.value.hi) *
                     (coef_scale * lastq * params.P / std::log(double(params.P)) + 1e-24);
    est.converged = est.tail_bound < 1e-6;
    return est;
}

// ---- direct sieved sum --------------------------------------------------------

namespace {

struct Snapshots {
    std::vector<uint64_t> at; // ascending checkpoints (last = M)
    std::vector<dd> value;    // partial sums at those checkpoints
};

// Least-squares tail fit for the difference series
//   diff(u) = sum_{m<=u} (w^2(m) - d^2(m)) m^{-3/2},
// which is supported on non-k-free m.  Its tail decays like
// u^{1/k - 1/2} with 1/log corrections (single prime-power layer p^k),
// with a u^{1/(k+1) - 1/2} layer underneath.
struct TailFit {
    double tail_at_M = 0.0;
    double uncertainty = 1e30;
    bool ok = false;
};

TailFit fit_tail(const Snapshots& diff, int k) {
    const size_t n = diff.at.size();
    if (n < 6) return {};
    const double s1 = 1.0 / k - 0.5;
    const double s2 = 1.0 / (k + 1) - 0.5;
    const uint64_t M = diff.at.back();
    const dd SM = diff.value.back();

    auto phi = [&](double u, int c) -> double {
        double lu = std::log(u);
        switch (c) {
            case 0: return std::pow(u, s1);
            case 1: return std::pow(u, s1) / lu;
            case 2: return std::pow(u, s1) / (lu * lu);
            default: return std::pow(u, s2);
        }
    };

    // fit beta over checkpoints [start, n-1): SM - S(u_j) = sum_c beta_c
    // (phi_c(u_j) - phi_c(M)); returns (tail at M, rms residual)
    auto run = [&](int ncols, size_t rows) -> std::pair<double, double> {
        long double A[4][4] = {};
        long double b[4] = {};
        size_t start = (n - 1 > rows) ? n - 1 - rows : 0;
        for (size_t j = start; j + 1 < n; ++j) {
            double u = double(diff.at[j]);
            double y = (SM - diff.value[j]).to_double();
            double x[4] = {};
            for (int c = 0; c < ncols; ++c) x[c] = phi(u, c) - phi(double(M), c);
            for (int r = 0; r < ncols; ++r) {
                for (int c = 0; c < ncols; ++c) A[r][c] += (long double)x[r] * x[c];
                b[r] += (long double)x[r] * y;
            }
        }
        int idx[4] = {0, 1, 2, 3};
        for (int col = 0; col < ncols; ++col) {
            int piv = col;
            for (int r = col + 1; r < ncols; ++r)
                if (std::fabs(double(A[idx[r]][col])) > std::fabs(double(A[idx[piv]][col])))
                    piv = r;
            std::swap(idx[col], idx[piv]);
            if (A[idx[col]][col] == 0.0L) return {0.0, 1e30};
            for (int r = col + 1; r < ncols; ++r) {
                long double f = A[idx[r]][col] / A[idx[col]][col];
                for (int c = col; c < ncols; ++c) A[idx[r]][c] -= f * A[idx[col]][c];
                b[idx[r]] -= f * b[idx[col]];
            }
        }
        long double beta[4] = {};
        for (int col = ncols - 1; col >= 0; --col) {
            long double acc2 = b[idx[col]];
            for (int c = col + 1; c < ncols; ++c) acc2 -= A[idx[col]][c] * beta[c];
            beta[col] = acc2 / A[idx[col]][col];
        }
        double rms = 0.0;
        int cnt = 0;
        for (size_t j = start; j + 1 < n; ++j) {
            double u = double(diff.at[j]);
            double y = (SM - diff.value[j]).to_double();
            double fitv = 0.0;
            for (int c = 0; c < ncols; ++c)
                fitv += double(beta[c]) * (phi(u, c) - phi(double(M), c));
            rms += (y - fitv) * (y - fitv);
            ++cnt;
        }
        rms = std::sqrt(rms / std::max(cnt, 1));
        double tail = 0.0;
        for (int c = 0; c < ncols; ++c) tail += double(beta[c]) * phi(double(M), c);
        return {tail, rms};
    };

    auto [t4, r4] = run(4, n - 1);
    auto [t3, r3] = run(3, n - 1);
    auto [t4s, r4s] = run(4, (n - 1) / 2 + 2);
    (void)r3;
    (void)r4s;
    TailFit f;
    f.tail_at_M = t4;
    f.uncertainty = 3.0 * r4 + std::fabs(t4 - t3) + std::fabs(t4 - t4s);
    f.ok = true;
    return f;
}

} // namespace

std::vector<ConstantEstimate>
series_constants_direct(const std::vector<ConstantRequest>& reqs,
                        const DirectSumParams& params) {
    const uint64_t M = params.M;
    if (M < (uint64_t(1) << 14))
        throw std::domain_error("series_constants_direct: M too small");

    std::vector<uint64_t> cps;
    for (int j = 23; j >= 0; --j) {
        uint64_t u = uint64_t(std::llround(double(M) * std::pow(2.0, -0.5 * j)));
        if (cps.empty() || u > cps.back()) cps.push_back(u);
    }
    cps.back() = M;

    struct Acc {
        dd sum;
        Snapshots snaps;
        size_t next_cp = 0;
    };
    std::vector<Acc> acc(reqs.size());
    Acc d2acc;
    for (auto& a : acc) {
        a.snaps.at = cps;
        a.snaps.value.resize(cps.size());
    }
    d2acc.snaps.at = cps;
    d2acc.snaps.value.resize(cps.size());

    std::vector<int> klist;
    for (auto& r : reqs) {
        if (r.kind != ConstantKind::DSquared && r.k < 2)
            throw std::domain_error("series_constant: k >= 2 required");
        if (r.kind != ConstantKind::DSquared &&
            std::find(klist.begin(), klist.end(), r.k) == klist.end())
            klist.push_back(r.k);
    }

    uint32_t pbound = static_cast<uint32_t>(std::sqrt(double(M + 1))) + 2;
    auto primes = primes_upto(pbound);
    uint64_t root_max = static_cast<uint64_t>(std::sqrt(double(M))) + 2;
    auto mu_small = mobius_upto(root_max);

    std::vector<int32_t> d;
    std::vector<int8_t> mu;
    std::vector<int32_t> daux;
    std::vector<int8_t> muaux;
    std::vector<double> invp;
    struct KArrays {
        std::vector<double> g, f;
    };
    std::vector<KArrays> per_k(klist.size());

    for (uint64_t lo = 1; lo <= M; lo += params.segment) {
        uint64_t hi = std::min(M + 1, lo + params.segment);
        uint64_t len = hi - lo;
        sieve_d_mu(lo, hi, primes, d, mu);
        invp.resize(len);
        for (uint64_t i = 0; i < len; ++i) {
            double m = double(lo + i);
            invp[i] = 1.0 / (m * std::sqrt(m));
        }

        for (size_t ki = 0; ki < klist.size(); ++ki) {
            int k = klist[ki];
            auto& ka = per_k[ki];
            ka.g.resize(len);
            ka.f.resize(len);
            for (uint64_t i = 0; i < len; ++i) {
                ka.g[i] = double(d[i]);
                ka.f[i] = double(d[i]);
            }
            for (uint64_t w = 2;; ++w) {
                __uint128_t wk128 = 1;
                for (int i = 0; i < k; ++i) wk128 *= w;
                if (wk128 >= hi) break;
                uint64_t wk = uint64_t(wk128);
                uint64_t tlo = (lo + wk - 1) / wk;
                uint64_t thi = (hi + wk - 1) / wk;
                if (tlo < 1) tlo = 1;
                if (tlo >= thi) continue;
                sieve_d_mu(tlo, thi, primes, daux, muaux);
                double wgt = half_power(w, k);
                int mw = mu_small[w];
                for (uint64_t tt = tlo; tt < thi; ++tt) {
                    uint64_t idx = wk * tt - lo;
                    double dv = double(daux[tt - tlo]);
                    ka.f[idx] += wgt * dv;
                    if (mw != 0) ka.g[idx] += mw * wgt * dv;
                }
            }
        }

        auto accumulate = [&](Acc& a, auto&& term_at) {
            for (uint64_t i = 0; i < len; ++i) {
                a.sum += term_at(i);
                uint64_t m = lo + i;
                while (a.next_cp < cps.size() && m == cps[a.next_cp]) {
                    a.snaps.value[a.next_cp] = a.sum;
                    ++a.next_cp;
                }
            }
        };
        accumulate(d2acc,
                   [&](uint64_t i) { return double(d[i]) * double(d[i]) * invp[i]; });
        for (size_t ri = 0; ri < reqs.size(); ++ri) {
            if (reqs[ri].kind == ConstantKind::DSquared) continue;
            size_t ki = size_t(std::find(klist.begin(), klist.end(), reqs[ri].k) -
                               klist.begin());
            auto& ka = per_k[ki];
            if (reqs[ri].kind == ConstantKind::Bk)
                accumulate(acc[ri],
                           [&](uint64_t i) { return ka.g[i] * ka.g[i] * invp[i]; });
            else
                accumulate(acc[ri],
                           [&](uint64_t i) { return ka.f[i] * ka.f[i] * invp[i]; });
        }
    }

    // value = (closed-form full d^2 series) + (exact difference partial sum)
    //       + (fitted tail of the difference series)
    dd Z = dsquared_series_closed();
    std::vector<ConstantEstimate> out(reqs.size());
    for (size_t ri = 0; ri < reqs.size(); ++ri) {
        ConstantEstimate& est = out[ri];
        est.kind = reqs[ri].kind;
        est.k = reqs[ri].kind == ConstantKind::DSquared ? 0 : reqs[ri].k;
        est.method = "DirectSum";
        est.M = M;
        if (reqs[ri].kind == ConstantKind::DSquared) {
            est.value = d2acc.sum;
            double lm = std::log(double(M));
            est.tail_bound = 2.0 * lm * lm * lm / std::sqrt(double(M));
            est.converged = false; // raw partial sum
            est.divergent = false;
            continue;
        }
        est.divergent = series_diverges(reqs[ri].kind, reqs[ri].k);
        Snapshots diff;
        diff.at = cps;
        diff.value.resize(cps.size());
        for (size_t j = 0; j < cps.size(); ++j)
            diff.value[j] = acc[ri].snaps.value[j] - d2acc.snaps.value[j];
        TailFit fit = fit_tail(diff, reqs[ri].k);
        est.value = Z + diff.value.back() + dd(fit.tail_at_M);
        est.tail_bound = fit.ok ? fit.uncertainty : 1e30;
        if (est.divergent) {
            est.tail_bound = std::numeric_limits<double>::infinity();
            est.converged = false;
        } else {
            est.converged = est.tail_bound < 1e-6;
        }
    }
    return out;
}

ConstantEstimate series_constant_direct(ConstantKind kind, int k,
                                        const DirectSumParams& params) {
    return series_constants_direct({{kind, k}}, params)[0];
}

dd dsquared_series_closed() {
    dd z32 = zeta_dd(1.5);
    return npow(z32, 4) / zeta_dd(3.0);
}

ConstantEstimate tong_constant() {
    ConstantEstimate est;
    est.kind = ConstantKind::DSquared;
    est.method = "ClosedForm";
    est.value = dsquared_series_closed() / (6.0 * sqr(dd_pi()));
    est.tail_bound = 1e-25;
    est.converged = true;
    return est;
}

} // namespace kfd
