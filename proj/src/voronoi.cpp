#include "kfd/voronoi.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "kfd/errors.hpp"
#include "kfd/sieve.hpp"
#include "kfd/summatory.hpp"

namespace kfd {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;
constexpr double kInvPiSqrt2 = 0.2250790790392765488072787378820821; // 1/(pi sqrt 2)

// cos(4 pi sqrt(n u) - pi/4).  For n*u beyond 1e12 the phase 4 sqrt(nu) is
// reduced mod 2 in double-double first; a plain double sqrt loses the phase
// at that size (error ~ 4 pi sqrt(nu) ulp).
double cos_phase(double sqrt_nu_double, double nu, uint64_t n, double u) {
    if (nu <= 1e12) {
        return std::cos(4.0 * kPi * sqrt_nu_double - 0.25 * kPi);
    }
    dd s = sqrt(dd(double(n)) * dd(u));
    dd t = s * 4.0;
    dd r = t - floor(t * 0.5) * 2.0; // 4 sqrt(nu) mod 2, in [0,2)
    return std::cos(kPi * r.to_double() - 0.25 * kPi);
}

struct NeumaierSum {
    double sum = 0.0, comp = 0.0;
    void add(double term) {
        double t = sum + term;
        if (std::fabs(sum) >= std::fabs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

} // namespace

Delta1Table::Delta1Table(uint64_t z, uint64_t z_limit) : z_(z) {
    if (z < 1) throw std::domain_error("Delta1Table: z >= 1 required");
    if (z > z_limit)
        throw resource_error("Delta1Table: z exceeds limit " + std::to_string(z_limit));
    uint32_t pb = static_cast<uint32_t>(std::sqrt(double(z + 1))) + 2;
    auto primes = primes_upto(pb);
    std::vector<int32_t> d;
    std::vector<int8_t> mu;
    sieve_d_mu(1, z + 1, primes, d, mu);
    amp_.resize(z);
    sqrtn_.resize(z);
    for (uint64_t n = 1; n <= z; ++n) {
        amp_[n - 1] = double(d[n - 1]) * std::pow(double(n), -0.75);
        sqrtn_[n - 1] = std::sqrt(double(n));
    }
}

CosSumTerm Delta1Table::term(uint64_t n, uint64_t t, int k) const {
    CosSumTerm c;
    c.amplitude = amp_[n - 1];
    c.frequency = 4.0 * kPi * std::sqrt(double(n) / std::pow(double(t), k));
    c.phase = -0.25 * kPi;
    return c;
}

double Delta1Table::inner_sum(double u, uint64_t nmax) const {
    uint64_t top = (nmax == 0) ? z_ : std::min(nmax, z_);
    NeumaierSum acc;
    double su = std::sqrt(u);
    for (uint64_t n = 1; n <= top; ++n) {
        double nu = double(n) * u;
        acc.add(amp_[n - 1] * cos_phase(sqrtn_[n - 1] * su, nu, n, u));
    }
    return acc.value();
}

double Delta1Table::eval(double u) const {
    return std::pow(u, 0.25) * kInvPiSqrt2 * inner_sum(u);
}

void Delta1Table::eval_grid(std::span<const double> us, std::span<double> out,
                            int threads) const {
    auto work = [&](size_t begin, size_t end) {
        for (size_t i = begin; i < end; ++i) out[i] = eval(us[i]);
    };
    if (threads <= 1 || us.size() < 64) {
        work(0, us.size());
        return;
    }
    size_t nt = std::min<size_t>(threads, 64);
    std::vector<std::thread> pool;
    size_t per = (us.size() + nt - 1) / nt;
    for (size_t t = 0; t < nt; ++t) {
        size_t b = t * per, e = std::min(us.size(), b + per);
        if (b >= e) break;
        pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
}

double delta1(double u, uint64_t z) {
    if (u < 1.0) throw std::domain_error("delta1: u >= 1 required");
    Delta1Table table(z);
    return table.eval(u);
}

std::vector<double> delta2_samples(std::span<const double> grid, uint64_t z,
                                   int threads) {
    if (grid.empty()) throw std::domain_error("delta2_samples: empty grid");
    Delta1Table table(z);
    std::vector<double> d1(grid.size());
    table.eval_grid(grid, d1, threads);
    std::vector<double> out(grid.size());
    for (size_t i = 0; i < grid.size(); ++i)
        out[i] = delta_dirichlet(grid[i]).value - d1[i];
    return out;
}

double oscillation_sum(double x, const TruncationParams& params, OscWeights w,
                       const Delta1Table* table) {
    if (x < 1.0) throw std::domain_error("oscillation_sum: x >= 1 required");
    if (params.z < 1 || params.y < 1.0 || params.k < 2)
        throw std::domain_error("oscillation_sum: invalid truncation parameters");

    Delta1Table local(table ? 1 : params.z);
    const Delta1Table& tab = table ? *table : local;
    if (tab.cutoff() < params.z)
        throw std::domain_error("oscillation_sum: table cutoff below z");

    uint64_t ylo = static_cast<uint64_t>(params.y);
    auto mu = mobius_upto(ylo);
    NeumaierSum acc;
    for (uint64_t t = 1; t <= ylo; ++t) {
        double wt;
        if (w == OscWeights::MobiusSigned) {
            if (mu[t] == 0) continue;
            wt = double(mu[t]);
        } else {
            wt = 1.0;
        }
        wt *= std::pow(double(t), -0.25 * params.k);
        acc.add(wt * tab.inner_sum(x / std::pow(double(t), params.k), params.z));
    }
    return std::pow(x, 0.25) * kInvPiSqrt2 * acc.value();
}

} // namespace kfd
