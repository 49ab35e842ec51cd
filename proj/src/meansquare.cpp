#include "kfd/meansquare.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "kfd/constants.hpp"
#include "kfd/errors.hpp"
#include "kfd/sieve.hpp"

namespace kfd {

void SieveSummatorySource::prefix(uint64_t lo, uint64_t hi, int64_t* out) const {
    SieveTable t = sieve_range({lo, hi}, problem_ == Problem::Dirichlet ? 0 : k_,
                               hi - lo);
    int64_t base = 0;
    if (lo > 1) {
        switch (problem_) {
            case Problem::Dirichlet: base = big_d(lo - 1); break;
            case Problem::KFree: base = big_dk(lo - 1, k_); break;
            case Problem::ThreeDim: base = big_d11k(lo - 1, k_); break;
        }
    }
    for (uint64_t i = 0; i < hi - lo; ++i) {
        switch (problem_) {
            case Problem::Dirichlet: base += t.d[i]; break;
            case Problem::KFree: base += t.dk[i]; break;
            case Problem::ThreeDim: base += t.d11k[i]; break;
        }
        out[i] = base;
    }
}

namespace {

// antiderivative endpoint evaluation for P(x) = a x log x + b x + c x^{1/k}
struct PieceKernel {
    dd a, b, c;
    bool has_c = false;
    double invk = 0.0;
    dd inv_e1, inv_e2, inv_e3; // 1/(1+1/k), 1/(1+2/k), 1/(2+1/k)

    static PieceKernel make(const MainTermModel& model) {
        PieceKernel kn;
        for (const auto& [basis, coef] : model.coefficients) {
            switch (basis) {
                case MainTermModel::Basis::XLogX: kn.a = coef; break;
                case MainTermModel::Basis::X: kn.b = coef; break;
                case MainTermModel::Basis::XPowInvK:
                    kn.c = coef;
                    kn.has_c = coef.hi != 0.0 || coef.lo != 0.0;
                    break;
            }
        }
        if (kn.has_c) {
            kn.invk = 1.0 / model.k;
            dd ik = dd(1.0) / double(model.k);
            kn.inv_e1 = dd(1.0) / (dd(1.0) + ik);
            kn.inv_e2 = dd(1.0) / (dd(1.0) + ik * 2.0);
            kn.inv_e3 = dd(1.0) / (dd(2.0) + ik);
        }
        return kn;
    }

    struct Endpoint {
        dd F1, F2;
    };

    // xs = x^{1/k}, needed only when has_c
    Endpoint at(dd x, dd L, dd xs) const {
        dd x2 = sqr(x);
        dd x3 = x2 * x;
        dd F1 = a * (x2 * L * 0.5 - x2 * 0.25) + b * (x2 * 0.5);
        dd F2 = sqr(a) * x3 * (sqr(L) * (1.0 / 3.0) - L * (2.0 / 9.0) + 2.0 / 27.0) +
                (a * b * 2.0) * x3 * (L * (1.0 / 3.0) - 1.0 / 9.0) +
                sqr(b) * x3 * (1.0 / 3.0);
        if (has_c) {
            dd x_e1 = x * xs;        // x^{1+1/k}
            dd x_e2 = x * sqr(xs);   // x^{1+2/k}
            dd x_e3 = x2 * xs;       // x^{2+1/k}
            F1 += c * x_e1 * inv_e1;
            F2 += sqr(c) * x_e2 * inv_e2 +
                  (a * c * 2.0) * x_e3 * (L * inv_e3 - sqr(inv_e3)) +
                  (b * c * 2.0) * x_e3 * inv_e3;
        }
        return {F1, F2};
    }

    Endpoint at_fresh(double x) const {
        dd xd(x);
        dd L = log(xd);
        dd xs = has_c ? exp(L * invk) : dd(1.0);
        return at(xd, L, xs);
    }
};

dd piece_value(int64_t A, dd width, const PieceKernel::Endpoint& el,
               const PieceKernel::Endpoint& er) {
    dd Ad{double(A)};
    return sqr(Ad) * width - Ad * 2.0 * (er.F1 - el.F1) + (er.F2 - el.F2);
}

struct ChunkResult {
    dd total;
    std::vector<std::pair<size_t, dd>> cp_partials; // (checkpoint idx, partial)
};

dd pairwise_reduce(const std::vector<dd>& v, size_t lo, size_t hi) {
    if (hi - lo == 0) return dd(0.0);
    if (hi - lo == 1) return v[lo];
    size_t mid = lo + (hi - lo) / 2;
    return pairwise_reduce(v, lo, mid) + pairwise_reduce(v, mid, hi);
}

} // namespace

dd integrate_piecewise(const SummatorySource& source, const MainTermModel& model,
                       double T, const MeanSquareOptions& opts,
                       const std::vector<double>* checkpoints,
                       std::vector<dd>* checkpoint_values) {
    if (T < 2.0) throw std::domain_error("integrate_piecewise: T >= 2 required");
    if (T > 4.0e9) throw resource_error("integrate_piecewise: T beyond coverage");

    const PieceKernel kernel = PieceKernel::make(model);
    // pieces are [m, m+1) for m in [1, mmax], the last one clipped to T
    const uint64_t mmax =
        (T == std::floor(T)) ? uint64_t(T) - 1 : uint64_t(std::floor(T));

    std::vector<double> cps;
    if (checkpoints) cps = *checkpoints;
    for (double t : cps)
        if (t <= 1.0 || t > T)
            throw std::domain_error("integrate_piecewise: checkpoint outside (1, T]");
    // target piece of checkpoint t: the piece [m, m+1) whose closure contains
    // t as right end or interior
    auto cp_piece = [](double t) -> uint64_t {
        double f = std::floor(t);
        return (t == f) ? uint64_t(t) - 1 : uint64_t(f);
    };

    const uint64_t W = opts.chunk;
    const uint64_t nchunks = (mmax - 1) / W + 1;
    std::vector<ChunkResult> results(nchunks);

    auto run_chunk = [&](uint64_t ci) {
        uint64_t lo = 1 + ci * W;
        uint64_t hi = std::min(mmax + 1, lo + W);
        std::vector<int64_t> A(hi - lo);
        source.prefix(lo, hi, A.data());

        ChunkResult res;
        dd L = log(dd(double(lo)));
        dd xs = kernel.has_c ? exp(L * kernel.invk) : dd(1.0);
        PieceKernel::Endpoint left = kernel.at(dd(double(lo)), L, xs);
        for (uint64_t m = lo; m < hi; ++m) {
            double r = (m == mmax) ? T : double(m + 1);
            PieceKernel::Endpoint right;
            dd width;
            if (r == double(m + 1)) {
                if (m < 64) {
                    // Taylor increments need 1/m small
                    L = log(dd(double(m + 1)));
                    if (kernel.has_c) xs = exp(L * kernel.invk);
                } else {
                    dd step = log1p_small(dd(1.0) / double(m));
                    L += step;
                    if (kernel.has_c) xs *= exp_small(step * kernel.invk);
                }
                right = kernel.at(dd(double(m + 1)), L, xs);
                width = dd(1.0);
            } else {
                right = kernel.at_fresh(r);
                width = dd(r) - dd(double(m));
            }
            if (checkpoints) {
                for (size_t c = 0; c < cps.size(); ++c) {
                    if (cp_piece(cps[c]) != m) continue;
                    dd partial = res.total;
                    if (cps[c] == double(m + 1) || cps[c] == r) {
                        partial += piece_value(A[m - lo], width, left, right);
                    } else {
                        PieceKernel::Endpoint mid = kernel.at_fresh(cps[c]);
                        partial += piece_value(A[m - lo], dd(cps[c]) - dd(double(m)),
                                               left, mid);
                    }
                    res.cp_partials.emplace_back(c, partial);
                }
            }
            res.total += piece_value(A[m - lo], width, left, right);
            left = right;
        }
        results[ci] = std::move(res);
    };

    if (opts.threads <= 1 || nchunks == 1) {
        for (uint64_t ci = 0; ci < nchunks; ++ci) run_chunk(ci);
    } else {
        std::atomic<uint64_t> next{0};
        auto worker = [&] {
            for (;;) {
                uint64_t ci = next.fetch_add(1);
                if (ci >= nchunks) break;
                run_chunk(ci);
            }
        };
        std::vector<std::thread> pool;
        int nt = std::min<int>(opts.threads, 64);
        for (int i = 0; i < nt; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::vector<dd> totals(nchunks);
    for (uint64_t ci = 0; ci < nchunks; ++ci) totals[ci] = results[ci].total;

    if (checkpoints && checkpoint_values) {
        checkpoint_values->assign(cps.size(), dd(0.0));
        for (uint64_t ci = 0; ci < nchunks; ++ci)
            for (auto& [c, partial] : results[ci].cp_partials)
                (*checkpoint_values)[c] = pairwise_reduce(totals, 0, ci) + partial;
    }
    return pairwise_reduce(totals, 0, nchunks);
}

namespace {

dd default_constant(Problem problem, int k) {
    switch (problem) {
        case Problem::Dirichlet: return dsquared_series_closed();
        case Problem::KFree:
            return series_constant_euler(ConstantKind::Bk, k).value;
        case Problem::ThreeDim:
            return series_constant_euler(ConstantKind::Ck, k).value;
    }
    return dd(0.0);
}

dd predicted_at(dd constant, double T) {
    return constant / (6.0 * sqr(dd_pi())) * pow(dd(T), 1.5);
}

} // namespace

MeanSquareReport integrate_delta_squared(Problem problem, int k, double T,
                                         MeanSquareOptions opts) {
    MainTermModel model = MainTermModel::make(problem, k);
    SieveSummatorySource source(problem, k);
    dd constant = opts.has_constant ? opts.constant : default_constant(problem, k);

    std::vector<double> cps;
    for (double t = T; t >= 16.0; t /= 2.0) cps.push_back(t);
    std::sort(cps.begin(), cps.end());
    std::vector<dd> cpv;
    dd integral = integrate_piecewise(source, model, T, opts, &cps, &cpv);

    MeanSquareReport rep;
    rep.problem = problem;
    rep.k = k;
    rep.T = T;
    rep.integral = integral;
    rep.constant = constant;
    rep.predicted_main = predicted_at(constant, T);
    rep.residual = (integral - rep.predicted_main).to_double();
    rep.delta_T = T > std::exp(1.0) ? delta_exponent(T) : 0.0;
    try {
        rep.predicted_error_exponent = predicted_error_exponent(problem, k);
        rep.has_exponent = true;
    } catch (const std::domain_error&) {
        rep.has_exponent = false;
    }
    for (size_t i = 0; i < cps.size(); ++i) {
        dd pred = predicted_at(constant, cps[i]);
        rep.samples.emplace_back(cps[i], (cpv[i] / pred).to_double());
    }
    return rep;
}

double predicted_error_exponent(Problem problem, int k) {
    auto general = [](int kk) { return 1.5 - 0.5 / kk + 1.0 / (double(kk) * kk); };
    switch (problem) {
        case Problem::Dirichlet:
            return 1.0; // T log^5 T
        case Problem::KFree:
            if (k < 4) throw std::domain_error("predicted_error_exponent: k >= 4");
            if (k == 4) return 1.5; // T^{3/2} e^{-c delta(T)}: log-type saving only
            if (k == 5) return 75.0 / 52.0;
            return general(k);
        case Problem::ThreeDim:
            if (k < 3) throw std::domain_error("predicted_error_exponent: k >= 3");
            if (k == 3) return 53.0 / 36.0;
            if (k == 4) return 29.0 / 20.0;
            if (k == 5) return 75.0 / 52.0;
            return general(k);
    }
    throw std::domain_error("predicted_error_exponent: bad problem");
}

OmegaWitness omega_witness(int k, double X) {
    if (k < 2) throw std::domain_error("omega_witness: k >= 2 required");
    if (X < 2.0) throw std::domain_error("omega_witness: X >= 2 required");
    MainTermModel model = MainTermModel::make(Problem::KFree, k);
    SieveSummatorySource source(Problem::KFree, k);

    uint64_t xmax = uint64_t(X);
    const uint64_t W = uint64_t(1) << 20;
    OmegaWitness best;
    int64_t prev = 0; // F(lo - 1)
    std::vector<int64_t> A;
    for (uint64_t lo = 1; lo <= xmax; lo += W) {
        uint64_t hi = std::min(xmax + 1, lo + W);
        A.resize(hi - lo);
        source.prefix(lo, hi, A.data());
        for (uint64_t m = lo; m < hi; ++m) {
            double main = model.eval_double(double(m));
            double up = double(A[m - lo]) - main;   // Delta at m from the right
            double down = double(prev) - main;      // limit from the left
            double score = std::max(std::fabs(up), std::fabs(down)) /
                           std::pow(double(m), 0.25);
            if (score > best.score) {
                best.score = score;
                best.x_star = double(m);
            }
            prev = A[m - lo];
        }
    }
    return best;
}

std::vector<std::pair<double, double>>
ratio_trace(Problem problem, int k, double T_max, int n_checkpoints,
            MeanSquareOptions opts) {
    if (n_checkpoints < 2) throw std::domain_error("ratio_trace: n >= 2 required");
    MainTermModel model = MainTermModel::make(problem, k);
    SieveSummatorySource source(problem, k);
    dd constant = opts.has_constant ? opts.constant : default_constant(problem, k);

    std::vector<double> cps;
    for (int i = 0; i < n_checkpoints; ++i)
        cps.push_back(T_max / std::pow(2.0, n_checkpoints - 1 - i));
    while (!cps.empty() && cps.front() <= 2.0) cps.erase(cps.begin());
    std::vector<dd> cpv;
    integrate_piecewise(source, model, T_max, opts, &cps, &cpv);

    std::vector<std::pair<double, double>> out;
    for (size_t i = 0; i < cps.size(); ++i)
        out.emplace_back(cps[i], (cpv[i] / predicted_at(constant, cps[i])).to_double());
    return out;
}

} // namespace kfd
