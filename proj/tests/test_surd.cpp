#include <doctest.h>

#include <random>

#include "beattylab/realparam.hpp"

using namespace beattylab;

TEST_CASE("surd normalization and equality") {
    // 2 + 2*sqrt(8) over 2 = 1 + 2*sqrt(2)
    Surd a(2, 2, 8, 2);
    Surd b(1, 2, 2, 1);
    CHECK(a == b);
    // perfect-square radicand collapses to a rational
    Surd c(1, 3, 9, 2);  // (1 + 3*3)/2 = 5
    CHECK(c.is_rational());
    CHECK(c.to_rational() == 5);
    // sign absorbed into r
    Surd d(1, 1, 2, -3);
    CHECK(d.r() > 0);
    CHECK(d.sign() < 0);
}

TEST_CASE("surd field arithmetic round trip") {
    Surd r2 = Surd::sqrt_of(2);
    Surd x = (r2 + Surd::from_integer(3)) * (r2 - Surd::from_integer(3));  // 2 - 9
    CHECK(x.is_rational());
    CHECK(x.to_rational() == -7);
    Surd inv = Surd::from_integer(1) / r2;  // sqrt(2)/2
    CHECK((inv * r2).to_rational() == 1);
    Surd fifth = r2.pow_ui(5);
    CHECK(fifth == Surd(0, 4, 2, 1));  // (sqrt 2)^5 = 4 sqrt 2
}

TEST_CASE("floor_linear matches the spec examples") {
    RealParam r2(Surd::sqrt_of(2));
    RealParam zero = RealParam::from_rational(0);
    CHECK(floor_linear(3, r2, zero) == 4);
    CHECK(floor_linear(1, r2, zero) == 1);
    RealParam half = RealParam::from_rational(mpq_class(1, 2));
    CHECK(floor_linear(5, r2, half) == 7);
}

TEST_CASE("floor_linear bracketing invariant over random surds") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 200; ++iter) {
        mpz_class p = static_cast<long>(rng() % 21) - 10;
        mpz_class q = 1 + static_cast<long>(rng() % 6);
        mpz_class D = std::array<int, 4>{2, 3, 5, 7}[rng() % 4];
        mpz_class r = 1 + static_cast<long>(rng() % 9);
        Surd alpha(p, q, D, r);
        if (alpha.sign() <= 0) continue;
        Surd beta = Surd::from_rational(mpq_class(static_cast<long>(rng() % 100), 7));
        long n = 1 + static_cast<long>(rng() % 1000);
        mpz_class fl = floor_linear(n, RealParam(alpha), RealParam(beta));
        Surd val = alpha * Surd::from_integer(n) + beta;
        // fl <= val < fl + 1, checked by exact comparison
        CHECK(val.cmp(mpq_class(fl)) >= 0);
        CHECK(val.cmp(mpq_class(fl + 1)) < 0);
    }
}

TEST_CASE("dist_nearest_int basics and symmetry") {
    CHECK(dist_nearest_int(RealParam::from_rational(mpq_class(3, 4))).surd().to_rational() ==
          mpq_class(1, 4));
    CHECK(dist_nearest_int(RealParam::from_rational(mpq_class(-1, 5))).surd().to_rational() ==
          mpq_class(1, 5));
    RealParam r2(Surd::sqrt_of(2));
    Surd expected = Surd::sqrt_of(2) - Surd::from_integer(1);
    CHECK(dist_nearest_int(r2).surd() == expected);

    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 200; ++iter) {
        mpq_class x(static_cast<long>(rng() % 4001) - 2000, 1 + static_cast<long>(rng() % 97));
        x.canonicalize();
        long m = static_cast<long>(rng() % 13) - 6;
        auto d1 = dist_nearest_int(RealParam::from_rational(x)).surd().to_rational();
        auto d2 = dist_nearest_int(RealParam::from_rational(x + m)).surd().to_rational();
        auto d3 = dist_nearest_int(RealParam::from_rational(-x)).surd().to_rational();
        CHECK(d1 == d2);
        CHECK(d1 == d3);
        CHECK(d1 >= 0);
        CHECK(d1 <= mpq_class(1, 2));
    }
}

TEST_CASE("certified_less on surds and intervals") {
    RealParam r2(Surd::sqrt_of(2));
    CHECK(certified_less(r2, RealParam::from_rational(mpq_class(3, 2))));
    CHECK_FALSE(certified_less(r2, r2));
    RealParam a = RealParam::from_interval(mpq_class(141, 100), mpq_class(2, 100));
    RealParam b = RealParam::from_interval(mpq_class(142, 100), mpq_class(2, 100));
    CHECK_THROWS_AS((void)certified_less(a, b), UndecidableAtPrecision);
    // mixed fields decide by refinement
    CHECK(certified_less(r2, RealParam(Surd::sqrt_of(3))));
}

TEST_CASE("interval arithmetic soundness against exact surd evaluation") {
    std::mt19937_64 rng(23);
    for (int iter = 0; iter < 100; ++iter) {
        Surd x(static_cast<long>(rng() % 19) - 9, 1 + static_cast<long>(rng() % 4), 5,
               1 + static_cast<long>(rng() % 7));
        Surd y(static_cast<long>(rng() % 19) - 9, 1 + static_cast<long>(rng() % 4), 5,
               1 + static_cast<long>(rng() % 7));
        Surd exact = x * y + x - y;
        Interval ix = RealParam(x).enclosure(64), iy = RealParam(y).enclosure(64);
        Interval got = ix * iy + ix - iy;
        mpq_class lo, hi;
        exact.enclose(128, lo, hi);
        CHECK(got.lo() <= hi);
        CHECK(got.hi() >= lo);
    }
}

TEST_CASE("parse and print round trips") {
    RealParam a = RealParam::parse("(0+1*sqrt(2))/1");
    CHECK(a.exact());
    CHECK(a.surd() == Surd::sqrt_of(2));
    RealParam b = RealParam::parse("(1+2*sqrt(2))/2");
    CHECK(b.surd() == Surd(1, 2, 2, 2));
    RealParam c = RealParam::parse("3/2");
    CHECK(c.is_rational());
    CHECK(c.surd().to_rational() == mpq_class(3, 2));
    RealParam d = RealParam::parse("1.25");
    CHECK(d.surd().to_rational() == mpq_class(5, 4));
    RealParam e = RealParam::parse("1.41+-0.02");
    CHECK_FALSE(e.exact());
    CHECK(e.box().lo() == mpq_class(139, 100));
    CHECK(e.box().hi() == mpq_class(143, 100));
    RealParam f = RealParam::parse("1.41\xC2\xB1"
                                   "0.02");
    CHECK(f.box().lo() == e.box().lo());
    CHECK_THROWS_AS(RealParam::parse("(1+2*cbrt(2))/2"), ParseError);
    // surd text round trip
    CHECK(RealParam::parse(b.str()).surd() == b.surd());
}

TEST_CASE("floor on undecidable interval raises") {
    RealParam straddle = RealParam::from_interval(2, mpq_class(1, 10));
    CHECK_THROWS_AS((void)floor_linear(1, straddle, RealParam::from_rational(0)),
                    UndecidableAtPrecision);
}
