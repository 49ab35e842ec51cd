#include "kfd/sieve.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "kfd/errors.hpp"

namespace kfd {

std::vector<uint32_t> primes_upto(uint32_t n) {
    std::vector<uint32_t> primes;
    if (n < 2) return primes;
    std::vector<char> comp(n + 1, 0);
    for (uint32_t i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        primes.push_back(i);
        for (uint64_t j = uint64_t(i) * i; j <= n; j += i) comp[j] = 1;
    }
    return primes;
}

void sieve_d_mu(uint64_t lo, uint64_t hi, const std::vector<uint32_t>& primes,
                std::vector<int32_t>& d, std::vector<int8_t>& mu) {
    if (lo < 1 || hi <= lo) throw std::domain_error("sieve_d_mu: bad range");
    const uint64_t len = hi - lo;
    d.assign(len, 1);
    mu.assign(len, 1);
    std::vector<uint64_t> rem(len);
    for (uint64_t i = 0; i < len; ++i) rem[i] = lo + i;

    for (uint32_t p : primes) {
        uint64_t pp = uint64_t(p) * p;
        if (pp >= hi) break;
        uint64_t m = ((lo + p - 1) / p) * p;
        for (; m < hi; m += p) {
            uint64_t i = m - lo;
            int e = 0;
            while (rem[i] % p == 0) {
                rem[i] /= p;
                ++e;
            }
            d[i] *= e + 1;
            mu[i] = (e >= 2) ? 0 : int8_t(-mu[i]);
        }
    }
    // leftover factor is a single prime > sqrt(hi-1)
    for (uint64_t i = 0; i < len; ++i) {
        if (rem[i] > 1) {
            d[i] *= 2;
            mu[i] = int8_t(-mu[i]);
        }
    }
    if (lo == 1) { d[0] = 1; mu[0] = 1; }
}

namespace {

// largest t with t^k <= x
uint64_t root_k(uint64_t x, int k) {
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

} // namespace

SieveTable sieve_range(SieveRange range, int k, uint64_t max_segment) {
    if (range.lo < 1 || range.hi <= range.lo)
        throw std::domain_error("sieve_range: require 1 <= lo < hi");
    if (k != 0 && k < 2) throw std::domain_error("sieve_range: k must be >= 2");
    if (range.hi - range.lo > max_segment)
        throw resource_error("sieve_range: range exceeds segment size " +
                             std::to_string(max_segment));

    SieveTable t;
    t.range = range;
    t.k = k;
    uint32_t pbound = static_cast<uint32_t>(std::sqrt(double(range.hi))) + 2;
    auto primes = primes_upto(pbound);
    sieve_d_mu(range.lo, range.hi, primes, t.d, t.mu);

    if (k == 0) return t;

    const uint64_t len = t.size();
    t.dk.assign(len, 0);
    t.d11k.assign(len, 0);
    // w = 1 contributes d(n) to both arrays
    for (uint64_t i = 0; i < len; ++i) {
        t.dk[i] = t.d[i];
        t.d11k[i] = t.d[i];
    }

    uint64_t wmax = root_k(range.hi - 1, k);
    auto mu_small = mobius_upto(wmax > 1 ? wmax : 1);
    std::vector<int32_t> daux;
    std::vector<int8_t> muaux;
    for (uint64_t w = 2; w <= wmax; ++w) {
        __uint128_t wk128 = 1;
        for (int i = 0; i < k; ++i) wk128 *= w;
        uint64_t wk = static_cast<uint64_t>(wk128);
        uint64_t tlo = (range.lo + wk - 1) / wk;
        uint64_t thi = (range.hi + wk - 1) / wk; // first t with w^k t >= hi
        if (tlo < 1) tlo = 1;
        if (tlo >= thi) continue;
        sieve_d_mu(tlo, thi, primes, daux, muaux);
        int m = mu_small[w];
        for (uint64_t tt = tlo; tt < thi; ++tt) {
            uint64_t idx = wk * tt - range.lo;
            int32_t dv = daux[tt - tlo];
            t.d11k[idx] += dv;
            if (m != 0) t.dk[idx] += m * dv;
        }
    }
    return t;
}

std::vector<int8_t> mobius_upto(uint64_t n) {
    std::vector<int8_t> mu;
    std::vector<int32_t> d;
    std::vector<int8_t> m;
    uint32_t pbound = static_cast<uint32_t>(std::sqrt(double(n + 1))) + 2;
    auto primes = primes_upto(pbound);
    sieve_d_mu(1, n + 1, primes, d, m);
    mu.assign(n + 1, 0);
    for (uint64_t i = 1; i <= n; ++i) mu[i] = m[i - 1];
    return mu;
}

std::vector<int64_t> mertens_table(uint64_t n) {
    auto mu = mobius_upto(n);
    std::vector<int64_t> M(n + 1, 0);
    for (uint64_t i = 1; i <= n; ++i) M[i] = M[i - 1] + mu[i];
    return M;
}

int64_t mertens(uint64_t u) {
    if (u < 1) throw std::domain_error("mertens: u >= 1 required");
    MertensEvaluator ev;
    return ev.advance_to(u);
}

int64_t MertensEvaluator::advance_to(uint64_t u) {
    if (u < 1) throw std::domain_error("mertens: u >= 1 required");
    if (u < next_)
        throw std::domain_error("MertensEvaluator: queries must be increasing");
    std::vector<int32_t> d;
    std::vector<int8_t> mu;
    while (next_ <= u) {
        uint64_t hi = std::min(u + 1, next_ + segment_);
        uint32_t need = static_cast<uint32_t>(std::sqrt(double(hi))) + 2;
        if (primes_.empty() || primes_.back() < need) primes_ = primes_upto(need);
        sieve_d_mu(next_, hi, primes_, d, mu);
        for (uint64_t i = 0; i < hi - next_; ++i) acc_ += mu[i];
        next_ = hi;
    }
    return acc_;
}

double delta_exponent(double u) {
    double l = std::log(u);
    double ll = std::log(l);
    return std::pow(l, 0.6) * std::pow(ll, -0.2);
}

double mertens_envelope(double u, double c) {
    if (c <= 0.0) throw std::domain_error("mertens_envelope: c > 0 required");
    if (u < 2.0) throw std::domain_error("mertens_envelope: u >= 2 required");
    if (u <= std::exp(1.0)) return u; // log log u <= 0 there
    return u * std::exp(-c * delta_exponent(u));
}

// ---- segment cache --------------------------------------------------------

namespace {
constexpr char kMagic[4] = {'K', 'F', 'D', 'L'};
constexpr uint32_t kCacheVersion = 1;

template <typename T>
void put(std::ofstream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <typename T>
bool get(std::ifstream& is, T& v) {
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    return bool(is);
}
} // namespace

bool write_segment_cache(const std::filesystem::path& path, const SieveTable& t) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) return false;
    os.write(kMagic, 4);
    put(os, kCacheVersion);
    put(os, t.range.lo);
    put(os, t.range.hi);
    put(os, static_cast<uint32_t>(t.k));
    auto dump = [&](const auto& v) {
        using E = typename std::decay_t<decltype(v)>::value_type;
        os.write(reinterpret_cast<const char*>(v.data()),
                 static_cast<std::streamsize>(v.size() * sizeof(E)));
    };
    dump(t.d);
    dump(t.mu);
    if (t.k != 0) {
        dump(t.dk);
        dump(t.d11k);
    }
    return bool(os);
}

std::optional<SieveTable> read_segment_cache(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) return std::nullopt;
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0) return std::nullopt;
    uint32_t ver = 0;
    if (!get(is, ver) || ver != kCacheVersion) return std::nullopt;
    SieveTable t;
    uint32_t k32 = 0;
    if (!get(is, t.range.lo) || !get(is, t.range.hi) || !get(is, k32)) return std::nullopt;
    if (t.range.lo < 1 || t.range.hi <= t.range.lo) return std::nullopt;
    t.k = static_cast<int>(k32);
    uint64_t len = t.range.hi - t.range.lo;
    auto slurp = [&](auto& v) {
        using E = typename std::decay_t<decltype(v)>::value_type;
        v.resize(len);
        is.read(reinterpret_cast<char*>(v.data()),
                static_cast<std::streamsize>(len * sizeof(E)));
        return bool(is);
    };
    if (!slurp(t.d) || !slurp(t.mu)) return std::nullopt;
    if (t.k != 0 && (!slurp(t.dk) || !slurp(t.d11k))) return std::nullopt;
    // trailing junk means a corrupt file
    is.peek();
    if (!is.eof()) return std::nullopt;
    return t;
}

} // namespace kfd
