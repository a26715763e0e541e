#include <doctest.h>

#include <cmath>
#include <random>

#include "beattylab/primes.hpp"

using namespace beattylab;

namespace {

// trial-division oracle
bool slow_is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

}  // namespace

TEST_CASE("sieve windows against trial division") {
    SUBCASE("[2,20]") {
        PrimeTable t = PrimeTable::build(2, 20);
        std::vector<std::uint64_t> got;
        t.for_each_prime([&](std::uint64_t p) { got.push_back(p); });
        CHECK(got == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19});
    }
    SUBCASE("[90,100]") {
        PrimeTable t = PrimeTable::build(90, 100);
        CHECK(t.count() == 1);
        CHECK(t.is_prime(97));
    }
    SUBCASE("[10^6, 10^6+100]") {
        PrimeTable t = PrimeTable::build(1000000, 1000100);
        std::uint64_t oracle = 0;
        for (std::uint64_t n = 1000000; n <= 1000100; ++n)
            if (slow_is_prime(n)) ++oracle;
        CHECK(t.count() == oracle);
        CHECK(oracle == 6);
    }
    SUBCASE("[2,1000] against trial division, value by value") {
        PrimeTable t = PrimeTable::build(2, 1000);
        for (std::uint64_t n = 2; n <= 1000; ++n) CHECK(t.is_prime(n) == slow_is_prime(n));
    }
    SUBCASE("10^4 random windows") {
        std::mt19937_64 rng(101);
        std::size_t mismatches = 0;
        for (int iter = 0; iter < 10000; ++iter) {
            std::uint64_t lo = 2 + rng() % 500000;
            std::uint64_t hi = lo + rng() % 30;
            PrimeTable t = PrimeTable::build(lo, hi);
            for (std::uint64_t n = lo; n <= hi; ++n)
                if (t.is_prime(n) != slow_is_prime(n)) ++mismatches;
        }
        CHECK(mismatches == 0);
    }
}

TEST_CASE("von Mangoldt values") {
    CHECK(von_mangoldt(8) == doctest::Approx(std::log(2.0)));
    CHECK(von_mangoldt(6) == 0.0);
    CHECK(von_mangoldt(49) == doctest::Approx(std::log(7.0)));
    CHECK(von_mangoldt(1) == 0.0);
    CHECK(von_mangoldt(97) == doctest::Approx(std::log(97.0)));
}

TEST_CASE("chebyshev sums") {
    CHECK(chebyshev_theta(10) == doctest::Approx(std::log(210.0)).epsilon(1e-14));
    CHECK(chebyshev_theta(10, APClass(4, 1)) == doctest::Approx(std::log(5.0)).epsilon(1e-14));
    CHECK(chebyshev_theta(2) == doctest::Approx(std::log(2.0)));
    // psi(10) = 3 log 2 + 2 log 3 + log 5 + log 7
    double psi10 = 3 * std::log(2.0) + 2 * std::log(3.0) + std::log(5.0) + std::log(7.0);
    CHECK(chebyshev_psi(10) == doctest::Approx(psi10).epsilon(1e-14));
}

TEST_CASE("psi equals Lambda sum and theta correction identity") {
    for (std::uint64_t N : {100ull, 1453ull, 100000ull}) {
        KahanSum direct;
        for (std::uint64_t n = 1; n <= N; ++n) direct.add(von_mangoldt(n));
        CHECK(chebyshev_psi(N) == doctest::Approx(direct.value()).epsilon(1e-11));
        // psi(N) - theta(N) = sum_{nu>=2} theta(N^(1/nu))
        double gap = 0;
        for (unsigned nu = 2;; ++nu) {
            std::uint64_t root = static_cast<std::uint64_t>(std::pow(static_cast<double>(N), 1.0 / nu));
            while (std::pow(static_cast<double>(root + 1), static_cast<double>(nu)) <=
                   static_cast<double>(N))
                ++root;
            if (root < 2) break;
            gap += chebyshev_theta(root);
        }
        CHECK(chebyshev_psi(N) - chebyshev_theta(N) == doctest::Approx(gap).epsilon(1e-10));
    }
}

TEST_CASE("theta over residue classes sums to the unrestricted theta") {
    std::uint64_t N = 20000;
    for (std::uint64_t d : {3ull, 4ull, 7ull, 12ull}) {
        double total = 0;
        for (std::uint64_t f = 1; f < d; ++f)
            if (std::gcd(f, d) == 1) total += chebyshev_theta(N, APClass(d, f));
        // difference is exactly the primes dividing d
        double missing = 0;
        for (std::uint64_t p = 2; p <= d; ++p)
            if (d % p == 0 && slow_is_prime(p)) missing += std::log(static_cast<double>(p));
        CHECK(total == doctest::Approx(chebyshev_theta(N) - missing).epsilon(1e-11));
    }
}

TEST_CASE("explicit constants") {
    for (std::uint64_t N : {41ull, 100ull, 10000ull, 1000000ull}) {
        ExplicitConstantsReport r = check_explicit_constants(N);
        CHECK(r.theta_ok);
        CHECK(r.psi_ok);
    }
    for (std::uint64_t N : {41ull, 100ull, 10000ull})
        CHECK(check_explicit_constants(N).tail_ok);
    // The tail cap 1.0012(sqrt(N) + N^(1/3)) is numerically below the actual
    // unrestricted prime-power tail near N = 10^6 (1102.42 vs 1101.32); the
    // check reports that verdict faithfully. Restricted to any progression
    // mod d >= 2, where the inequality is actually applied, it holds.
    ExplicitConstantsReport big = check_explicit_constants(1000000);
    CHECK_FALSE(big.tail_ok);
    CHECK(big.tail == doctest::Approx(1102.4225).epsilon(1e-6));
    CHECK(big.tail_cap == doctest::Approx(1101.32).epsilon(1e-5));

    ExplicitConstantsReport r100 = check_explicit_constants(100);
    CHECK(r100.theta == doctest::Approx(83.7298).epsilon(1e-4));
    CHECK(r100.psi == doctest::Approx(94.0453).epsilon(1e-4));
}

TEST_CASE("theta is deterministic across thread counts") {
    double t1 = chebyshev_theta(2000000, APClass{}, 1);
    double t4 = chebyshev_theta(2000000, APClass{}, 4);
    CHECK(t1 == t4);  // fixed segment grid, ordered reduction
}

TEST_CASE("mobius table") {
    std::vector<int8_t> mu = mobius_table(30);
    CHECK(mu[1] == 1);
    CHECK(mu[2] == -1);
    CHECK(mu[4] == 0);
    CHECK(mu[6] == 1);
    CHECK(mu[30] == -1);
    CHECK(mu[12] == 0);
    // sum_{d|n} mu(d) = [n == 1]
    for (std::uint64_t n = 1; n <= 30; ++n) {
        int s = 0;
        for (std::uint64_t d = 1; d <= n; ++d)
            if (n % d == 0) s += mu[d];
        CHECK(s == (n == 1 ? 1 : 0));
    }
}

TEST_CASE("APClass validation") {
    CHECK_THROWS_AS(APClass(7, 14), PreconditionViolated);
    CHECK_THROWS_AS(APClass(6, 3), PreconditionViolated);
    CHECK_THROWS_AS(APClass(7, 0), PreconditionViolated);
    CHECK_NOTHROW(APClass(7, 3));
}
