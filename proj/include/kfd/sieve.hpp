#pragma once
// Segmented sieves for the elementary multiplicative-function tables:
// divisor counts d(n), Moebius mu(n), k-free divisor counts, and the
// three-dimensional counts sum_{n = m1*m2*t^k} 1.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace kfd {

inline constexpr uint64_t kDefaultSegment = uint64_t(1) << 22;

// half-open [lo, hi), lo >= 1
struct SieveRange {
    uint64_t lo = 1;
    uint64_t hi = 2;
};

struct SieveTable {
    SieveRange range;
    int k = 0; // 0: dk/d11k absent
    std::vector<int32_t> d;
    std::vector<int8_t> mu;
    std::vector<int32_t> dk;
    std::vector<int32_t> d11k;

    uint64_t size() const { return range.hi - range.lo; }
    int32_t d_at(uint64_t n) const { return d[n - range.lo]; }
    int32_t mu_at(uint64_t n) const { return mu[n - range.lo]; }
    int32_t dk_at(uint64_t n) const { return dk[n - range.lo]; }
    int32_t d11k_at(uint64_t n) const { return d11k[n - range.lo]; }
};

std::vector<uint32_t> primes_upto(uint32_t n);

// d(n) and mu(n) over [lo, hi) by smallest-prime-factor factorisation.
// `primes` must contain all primes p with p*p < hi.
void sieve_d_mu(uint64_t lo, uint64_t hi, const std::vector<uint32_t>& primes,
                std::vector<int32_t>& d, std::vector<int8_t>& mu);

// Full table for one segment.  k == 0 skips the k-dependent arrays.
// d^(k)(n) is filled via the convolution sum_{t^k | n} mu(t) d(n/t^k),
// d(1,1,k;n) via sum_{t^k | n} d(n/t^k).
SieveTable sieve_range(SieveRange range, int k = 0,
                       uint64_t max_segment = kDefaultSegment);

// Moebius values mu(1..n) (index 0 unused) and Mertens prefix sums.
std::vector<int8_t> mobius_upto(uint64_t n);
std::vector<int64_t> mertens_table(uint64_t n);

int64_t mertens(uint64_t u);

// One forward sieve pass shared by an increasing sequence of queries.
class MertensEvaluator {
  public:
    explicit MertensEvaluator(uint64_t segment = kDefaultSegment)
        : segment_(segment) {}
    int64_t advance_to(uint64_t u);

  private:
    uint64_t segment_;
    uint64_t next_ = 1;
    int64_t acc_ = 0;
    std::vector<uint32_t> primes_;
};

// (log u)^{3/5} (log log u)^{-1/5}
double delta_exponent(double u);

// u * exp(-c * delta_exponent(u)); boundary convention: u for 2 <= u <= e
double mertens_envelope(double u, double c);

// Binary segment cache.  Little-endian header
//   magic "KFDL", version u32, lo u64, hi u64, k u32 (0 = absent)
// followed by the raw arrays in declared order: d, mu, dk, d11k.
bool write_segment_cache(const std::filesystem::path& path, const SieveTable& t);
std::optional<SieveTable> read_segment_cache(const std::filesystem::path& path);

} // namespace kfd
