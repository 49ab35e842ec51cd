#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "kfd/constants.hpp"
#include "kfd/meansquare.hpp"
#include "kfd/summatory.hpp"
#include "oracles.hpp"

using namespace kfd;

namespace {

// F(m) = 1 for every m >= 1 (a single unit jump at 1)
class UnitSource : public SummatorySource {
  public:
    void prefix(uint64_t lo, uint64_t hi, int64_t* out) const override {
        for (uint64_t i = 0; i < hi - lo; ++i) out[i] = 1;
    }
};

class ScaledSieveSource : public SummatorySource {
  public:
    ScaledSieveSource(Problem p, int k, int64_t s) : inner_(p, k), scale_(s) {}
    void prefix(uint64_t lo, uint64_t hi, int64_t* out) const override {
        inner_.prefix(lo, hi, out);
        for (uint64_t i = 0; i < hi - lo; ++i) out[i] *= scale_;
    }

  private:
    SieveSummatorySource inner_;
    int64_t scale_;
};

double quad_reference(Problem pr, int k, double T) {
    std::vector<double> gx, gw;
    oracle::gauss_legendre(20, gx, gw);
    MainTermModel model = MainTermModel::make(pr, k);
    SieveSummatorySource src(pr, k);
    uint64_t mmax = uint64_t(T) - 1;
    std::vector<int64_t> A(mmax);
    src.prefix(1, mmax + 1, A.data());
    long double acc = 0.0L;
    for (uint64_t m = 1; m <= mmax; ++m)
        for (int i = 0; i < 20; ++i) {
            double x = m + 0.5 + 0.5 * gx[i];
            double dv = double(A[m - 1]) - model.eval_double(x);
            acc += 0.5 * gw[i] * dv * dv;
        }
    return double(acc);
}

} // namespace

TEST_CASE("piecewise integration matches adaptive quadrature on [1, 1e3]") {
    struct Case {
        Problem pr;
        int k;
    } cases[] = {{Problem::Dirichlet, 0}, {Problem::KFree, 2}, {Problem::ThreeDim, 3}};
    for (auto [pr, k] : cases) {
        MeanSquareOptions o;
        o.has_constant = true;
        o.constant = dd(1.0);
        auto rep = integrate_delta_squared(pr, k, 1000.0, o);
        double ref = quad_reference(pr, k, 1000.0);
        CHECK(std::fabs(rep.integral.to_double() - ref) / ref < 1e-9);
    }
}

TEST_CASE("small closed-form piece at T = 2") {
    MeanSquareOptions o;
    o.has_constant = true;
    o.constant = dd(1.0);
    auto rep = integrate_delta_squared(Problem::Dirichlet, 0, 2.0, o);
    // int_1^2 (1 - x log x - (2g-1)x)^2 dx via 40-point quadrature
    std::vector<double> gx, gw;
    oracle::gauss_legendre(40, gx, gw);
    MainTermModel model = MainTermModel::make(Problem::Dirichlet);
    long double q = 0.0L;
    for (int i = 0; i < 40; ++i) {
        double x = 1.5 + 0.5 * gx[i];
        double dv = 1.0 - model.eval_double(x);
        q += 0.5 * gw[i] * dv * dv;
    }
    CHECK(rep.integral.to_double() == doctest::Approx(double(q)).epsilon(1e-10));
}

TEST_CASE("constant integrand gives T - 1") {
    UnitSource src;
    MainTermModel zero = MainTermModel::make(Problem::Dirichlet);
    zero.coefficients.clear(); // P == 0
    MeanSquareOptions o;
    for (double T : {2.0, 17.0, 1000.5}) {
        dd v = integrate_piecewise(src, zero, T, o);
        CHECK(v.to_double() == doctest::Approx(T - 1.0).epsilon(1e-14));
    }
}

TEST_CASE("doubling the error term scales the integral by exactly four") {
    MainTermModel m1 = MainTermModel::make(Problem::Dirichlet);
    MainTermModel m2 = m1;
    for (auto& [basis, coef] : m2.coefficients) coef = coef * 2.0;
    SieveSummatorySource s1(Problem::Dirichlet, 0);
    ScaledSieveSource s2(Problem::Dirichlet, 0, 2);
    MeanSquareOptions o;
    dd a = integrate_piecewise(s1, m1, 5000.0, o);
    dd b = integrate_piecewise(s2, m2, 5000.0, o);
    CHECK(b == a * 4.0); // bitwise: every operation scales by a power of two
}

TEST_CASE("additivity and monotonicity") {
    SieveSummatorySource src(Problem::Dirichlet, 0);
    MainTermModel model = MainTermModel::make(Problem::Dirichlet);
    MeanSquareOptions o;
    std::vector<double> cps = {3000.0};
    std::vector<dd> cpv;
    dd whole = integrate_piecewise(src, model, 10000.0, o, &cps, &cpv);
    dd first = integrate_piecewise(src, model, 3000.0, o);
    // int_1^{T1} + int_{T1}^{T2} = int_1^{T2}
    CHECK(std::fabs((cpv[0] - first).to_double()) < 1e-12 * first.to_double());
    CHECK(whole.to_double() > cpv[0].to_double()); // nondecreasing

    dd prev(0.0);
    for (double T : {100.0, 100.25, 101.0, 150.0}) {
        dd v = integrate_piecewise(src, model, T, o);
        CHECK(v.to_double() >= prev.to_double());
        prev = v;
    }
}

TEST_CASE("checkpoints equal fresh integration") {
    SieveSummatorySource src(Problem::Dirichlet, 0);
    MainTermModel model = MainTermModel::make(Problem::Dirichlet);
    MeanSquareOptions o;
    std::vector<double> cps = {1234.0, 5000.5, 9999.0};
    std::vector<dd> cpv;
    integrate_piecewise(src, model, 10000.0, o, &cps, &cpv);
    for (size_t i = 0; i < cps.size(); ++i) {
        dd fresh = integrate_piecewise(src, model, cps[i], o);
        CHECK(std::fabs((cpv[i] - fresh).to_double()) <=
              1e-10 * fresh.to_double());
    }
}

TEST_CASE("thread count does not change the result") {
    SieveSummatorySource src(Problem::KFree, 2);
    MainTermModel model = MainTermModel::make(Problem::KFree, 2);
    MeanSquareOptions o1, o4;
    o1.threads = 1;
    o4.threads = 4;
    o1.chunk = o4.chunk = 1 << 12; // many chunks
    dd a = integrate_piecewise(src, model, 50000.0, o1);
    dd b = integrate_piecewise(src, model, 50000.0, o4);
    CHECK(a == b);
}

TEST_CASE("predicted error exponents") {
    CHECK(predicted_error_exponent(Problem::KFree, 6) ==
          doctest::Approx(13.0 / 9.0)); // 3/2 - 1/12 + 1/36
    CHECK(predicted_error_exponent(Problem::KFree, 5) == doctest::Approx(75.0 / 52.0));
    CHECK(predicted_error_exponent(Problem::KFree, 4) == doctest::Approx(1.5));
    CHECK(predicted_error_exponent(Problem::ThreeDim, 3) ==
          doctest::Approx(53.0 / 36.0));
    CHECK(predicted_error_exponent(Problem::ThreeDim, 4) ==
          doctest::Approx(29.0 / 20.0));
    CHECK(predicted_error_exponent(Problem::ThreeDim, 5) ==
          doctest::Approx(75.0 / 52.0));
    CHECK(predicted_error_exponent(Problem::Dirichlet, 0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(predicted_error_exponent(Problem::KFree, 3), std::domain_error);
    CHECK_THROWS_AS(predicted_error_exponent(Problem::ThreeDim, 2), std::domain_error);
}

TEST_CASE("omega witness") {
    auto w = omega_witness(4, 5000.0);
    CHECK(w.score > 0.0);
    CHECK(w.x_star >= 1.0);
    CHECK(w.x_star <= 5000.0);

    // independent recomputation over every integer
    MainTermModel model = MainTermModel::make(Problem::KFree, 4);
    double best = 0.0, bx = 0.0;
    int64_t prev = 0;
    for (uint64_t m = 1; m <= 5000; ++m) {
        int64_t Dm = big_dk(m, 4);
        double main = model.eval_double(double(m));
        double sc = std::max(std::fabs(double(Dm) - main),
                             std::fabs(double(prev) - main)) /
                    std::pow(double(m), 0.25);
        if (sc > best) { best = sc; bx = double(m); }
        prev = Dm;
    }
    CHECK(w.score == doctest::Approx(best).epsilon(1e-12));
    CHECK(w.x_star == bx);
}

TEST_CASE("ratio trace") {
    MeanSquareOptions o;
    auto trace = ratio_trace(Problem::Dirichlet, 0, 20000.0, 6, o);
    REQUIRE(trace.size() >= 4);
    for (size_t i = 1; i < trace.size(); ++i)
        CHECK(trace[i].first > trace[i - 1].first);
    // fresh integration at three checkpoints
    for (size_t i : {size_t(0), trace.size() / 2, trace.size() - 1}) {
        auto rep = integrate_delta_squared(Problem::Dirichlet, 0, trace[i].first, o);
        double fresh = (rep.integral / rep.predicted_main).to_double();
        CHECK(trace[i].second == doctest::Approx(fresh).epsilon(1e-10));
    }
}
