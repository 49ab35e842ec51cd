#pragma once
// Exact piecewise integration of Delta^2 over [1, T].  On each [m, m+1) the
// summatory value A is a constant integer and
//   int (A - P(x))^2 dx = A^2 (r-l) - 2A [F1] + [F2]
// with closed-form antiderivatives F1 = int P, F2 = int P^2 for the basis
// {x log x, x, x^{1/k}}.  All accumulation in double-double; chunked with a
// thread-count-independent chunk grid and deterministic reduction.

#include <cstdint>
#include <vector>

#include "kfd/dd.hpp"
#include "kfd/summatory.hpp"

namespace kfd {

// supplies exact summatory values F(m) for m in [lo, hi)
class SummatorySource {
  public:
    virtual ~SummatorySource() = default;
    virtual void prefix(uint64_t lo, uint64_t hi, int64_t* out) const = 0;
};

class SieveSummatorySource : public SummatorySource {
  public:
    SieveSummatorySource(Problem problem, int k) : problem_(problem), k_(k) {}
    void prefix(uint64_t lo, uint64_t hi, int64_t* out) const override;

  private:
    Problem problem_;
    int k_;
};

struct MeanSquareOptions {
    uint64_t chunk = uint64_t(1) << 20; // fixed grid; independent of threads
    int threads = 1;
    bool has_constant = false; // mean-square constant (numerator of c/(6 pi^2))
    dd constant;
};

struct MeanSquareReport {
    Problem problem = Problem::Dirichlet;
    int k = 0;
    double T = 0.0;
    dd integral;
    dd predicted_main; // constant/(6 pi^2) * T^{3/2}
    double residual = 0.0;
    dd constant;
    double predicted_error_exponent = 0.0;
    bool has_exponent = false;
    double delta_T = 0.0; // (log T)^{3/5} (log log T)^{-1/5}
    std::vector<std::pair<double, double>> samples; // (T_i, integral/predicted)
};

// integral of (F - P)^2 over [1, T]; checkpoint values (same integral up to
// each checkpoint) written to `checkpoint_values` when given
dd integrate_piecewise(const SummatorySource& source, const MainTermModel& model,
                       double T, const MeanSquareOptions& opts,
                       const std::vector<double>* checkpoints = nullptr,
                       std::vector<dd>* checkpoint_values = nullptr);

MeanSquareReport integrate_delta_squared(Problem problem, int k, double T,
                                         MeanSquareOptions opts = {});

// tabulated error exponents of the T^{3/2} laws; Dirichlet returns 1 (T log^5 T)
double predicted_error_exponent(Problem problem, int k);

struct OmegaWitness {
    double x_star = 0.0;
    double score = 0.0; // max |Delta^(k)(x)| / x^{1/4} over jump points x <= X
};
OmegaWitness omega_witness(int k, double X);

std::vector<std::pair<double, double>>
ratio_trace(Problem problem, int k, double T_max, int n_checkpoints,
            MeanSquareOptions opts = {});

} // namespace kfd
