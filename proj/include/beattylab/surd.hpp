#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

#include "beattylab/errors.hpp"

namespace beattylab {

// Exact quadratic irrational (p + q*sqrt(d)) / r with integer p, q, r, d.
//
// Canonical form: r > 0, gcd(p, q, r) = 1, d squarefree and >= 2; q == 0
// forces d = 2. With d squarefree the representation of a value is unique,
// so equality is plain field comparison. The field Q(sqrt(d)) is closed
// under +,-,*,/ as long as both operands share d (or one is rational);
// mixing distinct radicands throws and callers fall back to intervals.
class Surd {
  public:
    Surd() : p_(0), q_(0), r_(1), d_(2) {}
    Surd(mpz_class p, mpz_class q, mpz_class d, mpz_class r);

    static Surd from_rational(const mpq_class& v);
    static Surd from_integer(long v) { return from_rational(mpq_class(v)); }
    static Surd sqrt_of(const mpz_class& d) { return Surd(0, 1, d, 1); }

    const mpz_class& p() const { return p_; }
    const mpz_class& q() const { return q_; }
    const mpz_class& r() const { return r_; }
    const mpz_class& d() const { return d_; }

    bool is_rational() const { return q_ == 0; }
    mpq_class to_rational() const;  // requires is_rational()

    bool compatible_with(const Surd& o) const {
        return q_ == 0 || o.q_ == 0 || d_ == o.d_;
    }

    int sign() const;
    int cmp(const Surd& o) const;          // requires compatible_with(o)
    int cmp(const mpq_class& v) const;
    bool operator==(const Surd& o) const {
        return p_ == o.p_ && q_ == o.q_ && r_ == o.r_ && d_ == o.d_;
    }

    Surd operator-() const { return Surd(-p_, -q_, d_, r_); }
    Surd abs() const { return sign() < 0 ? -*this : *this; }

    friend Surd operator+(const Surd& a, const Surd& b);
    friend Surd operator-(const Surd& a, const Surd& b);
    friend Surd operator*(const Surd& a, const Surd& b);
    friend Surd operator/(const Surd& a, const Surd& b);  // b != 0

    Surd pow_ui(unsigned long e) const;

    mpz_class floor() const;
    mpz_class nearest_int() const;  // halves round down: floor(x + 1/2)

    // Certified rational enclosure [lo, hi] with hi - lo <= 2^-prec_bits.
    void enclose(unsigned prec_bits, mpq_class& lo, mpq_class& hi) const;
    double to_double() const;

    // "(p+q*sqrt(d))/r"; rationals print as "p/r" or "p".
    std::string str() const;
    static Surd parse(const std::string& text);

  private:
    void normalize();
    mpz_class p_, q_, r_, d_;
};

std::ostream& operator<<(std::ostream& os, const Surd& s);

// floor(sqrt(n)) for n >= 0.
mpz_class isqrt(const mpz_class& n);

// Largest s with s^2 | n, so n = s^2 * squarefree_part. Trial division;
// throws CapacityExceeded for radicands too large to factor this way.
void squarefree_decompose(const mpz_class& n, mpz_class& square_root_part,
                          mpz_class& squarefree_part);

}  // namespace beattylab
