#pragma once
// Truncated Voronoi expansion of the Dirichlet error term,
//   delta1(u; z) = u^{1/4}/(pi sqrt 2) sum_{n<=z} d(n) n^{-3/4}
//                  cos(4 pi sqrt(n u) - pi/4),
// its residual delta2 = Delta - delta1, and the Moebius-weighted aggregate
// over t <= y of delta1(x/t^k; z).

#include <cstdint>
#include <span>
#include <vector>

namespace kfd {

struct TruncationParams {
    uint64_t z = 1; // Voronoi cutoff
    double y = 1.0; // hyperbola cutoff
    int k = 2;
};

struct CosSumTerm {
    double amplitude = 0.0; // d(n) / n^{3/4} (unsigned)
    double frequency = 0.0; // 4 pi sqrt(n / t^k)
    double phase = 0.0;     // -pi/4
};

// Per-cutoff amplitude tables, shared across grid evaluations.
class Delta1Table {
  public:
    explicit Delta1Table(uint64_t z, uint64_t z_limit = 10'000'000);

    uint64_t cutoff() const { return z_; }
    CosSumTerm term(uint64_t n, uint64_t t = 1, int k = 2) const;

    // the cosine sum without the u^{1/4}/(pi sqrt 2) prefactor, over
    // n <= min(cutoff, nmax) (nmax = 0 keeps the full table);
    // ascending n, compensated accumulation
    double inner_sum(double u, uint64_t nmax = 0) const;
    // single point
    double eval(double u) const;
    void eval_grid(std::span<const double> us, std::span<double> out,
                   int threads = 1) const;

  private:
    uint64_t z_;
    std::vector<double> amp_;   // d(n) n^{-3/4}
    std::vector<double> sqrtn_; // sqrt(n)
};

double delta1(double u, uint64_t z);

// Delta(u) - delta1(u; z) on a sorted grid, Delta exact
std::vector<double> delta2_samples(std::span<const double> grid, uint64_t z,
                                   int threads = 1);

enum class OscWeights { MobiusSigned, Unsigned };

// x^{1/4}/(pi sqrt 2) sum_{t<=y} w_t t^{-k/4} sum_{n<=z} d(n) n^{-3/4}
// cos(4 pi sqrt(n x / t^k) - pi/4); w_t = mu(t) or 1
double oscillation_sum(double x, const TruncationParams& params, OscWeights w,
                       const Delta1Table* table = nullptr);

} // namespace kfd
