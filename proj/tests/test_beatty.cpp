#include <doctest.h>

#include <cmath>
#include <random>

#include "beattylab/beatty.hpp"

using namespace beattylab;

namespace {

BeattyParams params_sqrt2(mpq_class beta = 0) {
    return BeattyParams(RealParam(Surd::sqrt_of(2)), RealParam::from_rational(beta));
}

}  // namespace

TEST_CASE("membership basics for alpha = sqrt 2") {
    BeattyParams p = params_sqrt2();
    CHECK(is_member(4, p));
    CHECK_FALSE(is_member(3, p));
    CHECK(is_member(1, p));
    CHECK_FALSE(is_member(0, p));
}

TEST_CASE("alpha validation") {
    CHECK_THROWS_AS(BeattyParams(RealParam::from_rational(mpq_class(3, 2)),
                                 RealParam::from_rational(0)),
                    PreconditionViolated);
    CHECK_THROWS_AS(BeattyParams(RealParam(-Surd::sqrt_of(2)), RealParam::from_rational(0)),
                    PreconditionViolated);
    CHECK_THROWS_AS(BeattyParams(RealParam(Surd::sqrt_of(2)),
                                 RealParam::from_rational(mpq_class(-1, 2))),
                    PreconditionViolated);
    // interval alpha allowed but flagged unverified
    BeattyParams p(RealParam::from_interval(mpq_class(3141, 1000), mpq_class(1, 100000)),
                   RealParam::from_rational(0));
    CHECK_FALSE(p.alpha_certified_irrational);
}

TEST_CASE("enumerate matches direct floors") {
    BeattyParams p = params_sqrt2();
    std::vector<mpz_class> want{1, 2, 4, 5, 7, 8, 9, 11, 12};
    CHECK(enumerate_members(12, p) == want);

    BeattyParams golden(RealParam(Surd(1, 1, 5, 2)), RealParam::from_rational(0));
    CHECK(enumerate_members(3, golden) == std::vector<mpz_class>{1, 3});
    CHECK(enumerate_members(0, golden).empty());
}

TEST_CASE("membership criterion agrees with the witness test on a surd grid") {
    std::vector<BeattyParams> grid;
    grid.push_back(params_sqrt2());
    grid.push_back(params_sqrt2(mpq_class(7, 10)));
    grid.push_back(BeattyParams(RealParam(Surd(0, 1, 3, 1)), RealParam::from_rational(mpq_class(13, 10))));
    grid.push_back(BeattyParams(RealParam(Surd(1, 1, 5, 2)), RealParam::from_rational(mpq_class(1, 3))));
    grid.push_back(BeattyParams(RealParam(Surd(3, 1, 7, 2)), RealParam::from_rational(2)));
    for (const BeattyParams& p : grid)
        for (mpz_class m = 1; m <= 2000; ++m)
            CHECK(is_member(m, p) == member_witness(m, p));
}

TEST_CASE("membership criterion with beta in the same quadratic field") {
    // beta = 5 - 3 sqrt(2) > 0, same field as alpha: exact arithmetic throughout
    BeattyParams p(RealParam(Surd::sqrt_of(2)), RealParam(Surd(5, -3, 2, 1)));
    int agree = 0;
    for (mpz_class m = 1; m <= 300; ++m) {
        // m = 5 sits exactly on the closed end of the membership interval;
        // the displayed criterion is strict there by design
        if (m == 5) continue;
        if (is_member(m, p) == member_witness(m, p)) ++agree;
    }
    CHECK(agree == 299);
    CHECK(member_witness(5, p));
    CHECK_FALSE(is_member(5, p));  // strict-inequality boundary reading
}

TEST_CASE("counting identity |count - N/alpha| <= beta/alpha + 2") {
    std::mt19937_64 rng(3);
    for (int iter = 0; iter < 6; ++iter) {
        mpz_class D = std::array<int, 4>{2, 3, 5, 7}[iter % 4];
        Surd alpha = Surd::sqrt_of(D) + Surd::from_integer(iter % 2);  // > 1
        mpq_class beta(static_cast<long>(rng() % 50), 7);
        BeattyParams p(RealParam(alpha), RealParam::from_rational(beta));
        mpz_class N = 20000 + static_cast<long>(rng() % 1000);
        double count = static_cast<double>(enumerate_members(N, p).size());
        double a = RealParam(alpha).to_double();
        double slack = beta.get_d() / a + 2.0;
        CHECK(std::abs(count - N.get_d() / a) <= slack);
    }
}

TEST_CASE("chi_delta") {
    CHECK(chi_delta(RealParam::from_rational(mpq_class(3, 10)), mpq_class(35, 100)) == 1);
    CHECK(chi_delta(RealParam::from_rational(mpq_class(1, 2)), mpq_class(1, 4)) == 0);
    CHECK(chi_delta(RealParam(Surd::sqrt_of(2)), mpq_class(42, 100)) == 1);
    CHECK(chi_delta(RealParam(Surd::sqrt_of(2)), mpq_class(41, 100)) == 0);
    // boundary is strict: ||1/4|| = 1/4 not < 1/4
    CHECK(chi_delta(RealParam::from_rational(mpq_class(1, 4)), mpq_class(1, 4)) == 0);
    CHECK_THROWS_AS(chi_delta(RealParam::from_interval(mpq_class(1, 4), mpq_class(1, 100)),
                              mpq_class(1, 4)),
                    UndecidableAtPrecision);
}

TEST_CASE("sandwich polynomials: spec examples") {
    SUBCASE("delta=1/4, L=1 brackets chi at the center") {
        SandwichPolys sp = sandwich_polys(mpq_class(1, 4), 1);
        CHECK(sp.lower(0.0) <= 1.0);
        CHECK(1.0 <= sp.upper(0.0));
        // exact mean values
        CHECK(sp.lower_const() == doctest::Approx(0.0));
        CHECK(sp.upper_const() == doctest::Approx(1.0));
    }
    SUBCASE("delta=0.3, L=8 brackets chi=0 at theta=0.45") {
        SandwichPolys sp = sandwich_polys(mpq_class(3, 10), 8);
        CHECK(sp.lower(0.45) <= 0.0);
        CHECK(0.0 <= sp.upper(0.45));
    }
    SUBCASE("coefficient bound at l=3") {
        SandwichPolys sp = sandwich_polys(mpq_class(3, 10), 8);
        double cap = std::min(2 * 0.3 + 1.0 / 9.0, 0.5);
        CHECK(std::abs(sp.c_plus[2]) <= cap);
        CHECK(std::abs(sp.c_minus[2]) <= cap);
    }
}

TEST_CASE("sandwich validates across the spec's delta and L ranges") {
    for (mpq_class delta : {mpq_class(1, 20), mpq_class(1, 4), mpq_class(9, 20)})
        for (std::size_t L : {1, 4, 16, 64}) CHECK_NOTHROW(sandwich_polys(delta, L));
}

TEST_CASE("sandwich integral identity: mean of lower/upper is 2 delta -+ 1/(L+1)") {
    SandwichPolys sp = sandwich_polys(mpq_class(1, 5), 7);
    // the constant Fourier coefficient IS the integral over one period
    CHECK(sp.lower_const() == doctest::Approx(2.0 / 5.0 - 1.0 / 8.0).epsilon(1e-15));
    CHECK(sp.upper_const() == doctest::Approx(2.0 / 5.0 + 1.0 / 8.0).epsilon(1e-15));
    // midpoint-rule quadrature agrees (the cosine terms integrate to zero)
    double integral_lo = 0, integral_hi = 0;
    const int n = 4096;
    for (int j = 0; j < n; ++j) {
        double t = (j + 0.5) / n;
        integral_lo += sp.lower(t) / n;
        integral_hi += sp.upper(t) / n;
    }
    CHECK(integral_lo == doctest::Approx(sp.lower_const()).epsilon(1e-12));
    CHECK(integral_hi == doctest::Approx(sp.upper_const()).epsilon(1e-12));
}

namespace {

// brute-force discrepancy over all realizable interval endpoint pairs
double discrepancy_oracle(std::vector<double> x) {
    std::sort(x.begin(), x.end());
    std::size_t M = x.size();
    double Md = static_cast<double>(M);
    double best = 0.0;
    // closed intervals [x_i, x_j] realize maximal count at minimal length
    for (std::size_t i = 0; i < M; ++i)
        for (std::size_t j = i; j < M; ++j)
            best = std::max(best, static_cast<double>(j - i + 1) / Md - (x[j] - x[i]));
    // open gaps (x_{i-1}, x_{j+1}) realize minimal count at maximal length,
    // with sentinels 0 and 1
    std::vector<double> s(x.size() + 2);
    s[0] = 0.0;
    std::copy(x.begin(), x.end(), s.begin() + 1);
    s[M + 1] = 1.0;
    for (std::size_t i = 1; i <= M + 1; ++i)
        for (std::size_t j = i - 1; j <= M; ++j)
            best = std::max(best, (s[j + 1] - s[i - 1]) -
                                      static_cast<double>(j >= i ? j - i + 1 : 0) / Md);
    return best;
}

}  // namespace

TEST_CASE("discrepancy: spec examples and oracle equality") {
    CHECK(discrepancy({0.0}) == doctest::Approx(1.0));
    std::vector<double> equis;
    for (int k = 0; k < 10; ++k) equis.push_back(k / 10.0);
    CHECK(discrepancy(equis) == doctest::Approx(0.1));

    std::vector<double> kron;
    double r2 = std::sqrt(2.0);
    for (int n = 1; n <= 100; ++n) kron.push_back(std::fmod(n * r2, 1.0));
    double d = discrepancy(kron);
    CHECK(d > 0.005);
    CHECK(d < 0.05);
    CHECK(d == doctest::Approx(discrepancy_oracle(kron)).epsilon(1e-12));

    std::mt19937_64 rng(17);
    for (int iter = 0; iter < 30; ++iter) {
        std::vector<double> pts;
        std::size_t n = 1 + rng() % 60;
        for (std::size_t i = 0; i < n; ++i) pts.push_back((rng() >> 11) * 0x1p-53);
        CHECK(discrepancy(pts) == doctest::Approx(discrepancy_oracle(pts)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(discrepancy({}), PreconditionViolated);
    CHECK_THROWS_AS(discrepancy({1.5}), PreconditionViolated);
}
