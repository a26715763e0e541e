#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "beattylab/surd.hpp"

namespace beattylab {

// Closed rational interval [lo, hi]. All arithmetic is exact (mpq), so the
// enclosure property needs no rounding control.
class Interval {
  public:
    Interval() : lo_(0), hi_(0) {}
    Interval(mpq_class lo, mpq_class hi);
    static Interval point(const mpq_class& v) { return Interval(v, v); }

    const mpq_class& lo() const { return lo_; }
    const mpq_class& hi() const { return hi_; }
    mpq_class mid() const { return (lo_ + hi_) / 2; }
    mpq_class width() const { return hi_ - lo_; }
    bool is_point() const { return lo_ == hi_; }
    bool contains(const mpq_class& v) const { return lo_ <= v && v <= hi_; }
    bool contains_integer() const;

    Interval operator-() const { return Interval(-hi_, -lo_); }
    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);
    friend Interval operator/(const Interval& a, const Interval& b);  // 0 not in b

    Interval abs() const;
    double to_double() const { return mid().get_d(); }

  private:
    mpq_class lo_, hi_;
};

// A real parameter: either an exact quadratic surd (refinable to any
// precision) or a fixed certified interval. Leaf decimal inputs become
// intervals; derived arithmetic keeps exactness whenever the operands stay
// inside one quadratic field and otherwise widens to an interval at a
// default working precision.
class RealParam {
  public:
    RealParam() : exact_(Surd()) {}
    explicit RealParam(Surd s) : exact_(std::move(s)) {}
    RealParam(Interval box, bool) : box_(std::move(box)) {}

    static RealParam from_surd(Surd s) { return RealParam(std::move(s)); }
    static RealParam from_rational(const mpq_class& v) {
        return RealParam(Surd::from_rational(v));
    }
    static RealParam from_interval(const mpq_class& mid, const mpq_class& rad);
    // "(p+q*sqrt(D))/r", "a/b", "3", "1.25", "1.41421+-0.00001" (or the
    // UTF-8 form "m±e"). Plain decimals parse exactly (radius zero).
    static RealParam parse(const std::string& text);

    bool exact() const { return exact_.has_value(); }
    const Surd& surd() const;
    const Interval& box() const;  // fixed leaf interval (only when !exact())

    // Certified enclosure; for exact values any requested precision, for
    // leaves the stored box.
    Interval enclosure(unsigned prec_bits) const;
    double to_double() const { return enclosure(80).to_double(); }

    bool is_rational() const { return exact() && exact_->is_rational(); }
    bool certified_irrational() const { return exact() && !exact_->is_rational(); }

    friend RealParam operator+(const RealParam& a, const RealParam& b);
    friend RealParam operator-(const RealParam& a, const RealParam& b);
    friend RealParam operator*(const RealParam& a, const RealParam& b);
    friend RealParam operator/(const RealParam& a, const RealParam& b);
    RealParam operator-() const;

    std::string str() const;

    static constexpr unsigned kDefaultPrec = 256;
    static constexpr unsigned kMaxPrec = 1u << 16;

  private:
    std::optional<Surd> exact_;
    Interval box_;
};

// The three spec'd operations on real parameters.

// floor(n*alpha + beta), exact for surd inputs (decided by integer-square
// bracketing), interval refinement otherwise.
mpz_class floor_linear(const mpz_class& n, const RealParam& alpha, const RealParam& beta);

// Distance to the nearest integer, in [0, 1/2].
RealParam dist_nearest_int(const RealParam& x);

// true iff x < y. Exact for surds; fixed intervals must be disjoint.
bool certified_less(const RealParam& x, const RealParam& y);

// Helpers shared by the modules that refine derived expressions.
mpz_class floor_of(const RealParam& x);
Interval dist_nearest_int(const Interval& x);

}  // namespace beattylab
