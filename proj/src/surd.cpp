#include "beattylab/surd.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

namespace beattylab {

mpz_class isqrt(const mpz_class& n) {
    if (n < 0) throw PreconditionViolated("isqrt of negative value");
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

void squarefree_decompose(const mpz_class& n, mpz_class& square_root_part,
                          mpz_class& squarefree_part) {
    if (n <= 0) throw PreconditionViolated("radicand must be positive");
    if (n > mpz_class("1000000000000000000"))
        throw CapacityExceeded("radicand too large for squarefree reduction");
    mpz_class m = n, s = 1;
    for (mpz_class i = 2; i * i * i * i <= m || i * i <= m; ++i) {
        if (i * i > m) break;
        mpz_class ii = i * i;
        while (m % ii == 0) {
            m /= ii;
            s *= i;
        }
    }
    // m is now squarefree unless it is a perfect square of a prime > cbrt(n);
    // one final sqrt test covers that.
    mpz_class rt = isqrt(m);
    if (rt * rt == m && m > 1) {
        s *= rt;
        m = 1;
    }
    square_root_part = s;
    squarefree_part = m;
}

Surd::Surd(mpz_class p, mpz_class q, mpz_class d, mpz_class r)
    : p_(std::move(p)), q_(std::move(q)), r_(std::move(r)), d_(std::move(d)) {
    normalize();
}

void Surd::normalize() {
    if (r_ == 0) throw PreconditionViolated("surd denominator is zero");
    if (q_ != 0) {
        if (d_ <= 0) throw PreconditionViolated("radicand must be positive");
        mpz_class s, f;
        squarefree_decompose(d_, s, f);
        if (f == 1) {  // perfect square: the value is rational
            p_ += q_ * s;
            q_ = 0;
            d_ = 2;
        } else {
            q_ *= s;
            d_ = f;
        }
    } else {
        d_ = 2;
    }
    if (r_ < 0) {
        r_ = -r_;
        p_ = -p_;
        q_ = -q_;
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), p_.get_mpz_t(), q_.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r_.get_mpz_t());
    if (g > 1) {
        p_ /= g;
        q_ /= g;
        r_ /= g;
    }
}

Surd Surd::from_rational(const mpq_class& v) {
    return Surd(v.get_num(), 0, 2, v.get_den());
}

mpq_class Surd::to_rational() const {
    if (!is_rational()) throw PreconditionViolated("surd is irrational");
    mpq_class v(p_, r_);
    v.canonicalize();
    return v;
}

// sign of p + q*sqrt(d)
static int sign_linear(const mpz_class& p, const mpz_class& q, const mpz_class& d) {
    int sp = sgn(p), sq = sgn(q);
    if (sq == 0) return sp;
    if (sp == 0) return sq;
    if (sp == sq) return sp;
    // opposite signs: compare p^2 with q^2 d
    mpz_class lhs = p * p, rhs = q * q * d;
    int c = cmp(lhs, rhs);
    if (c == 0) return 0;  // cannot happen for non-square d, kept for safety
    return (c > 0) ? sp : sq;
}

int Surd::sign() const { return sign_linear(p_, q_, d_); }

int Surd::cmp(const Surd& o) const {
    if (!compatible_with(o))
        throw PreconditionViolated("comparing surds from different quadratic fields");
    const mpz_class& d = (q_ != 0) ? d_ : o.d_;
    // (p1 + q1 sd)/r1 - (p2 + q2 sd)/r2, r1, r2 > 0
    mpz_class p = p_ * o.r_ - o.p_ * r_;
    mpz_class q = q_ * o.r_ - o.q_ * r_;
    return sign_linear(p, q, d);
}

int Surd::cmp(const mpq_class& v) const {
    mpz_class p = p_ * v.get_den() - v.get_num() * r_;
    mpz_class q = q_ * v.get_den();
    return sign_linear(p, q, d_);
}

Surd operator+(const Surd& a, const Surd& b) {
    if (!a.compatible_with(b))
        throw PreconditionViolated("adding surds from different quadratic fields");
    const mpz_class& d = (a.q_ != 0) ? a.d_ : b.d_;
    return Surd(a.p_ * b.r_ + b.p_ * a.r_, a.q_ * b.r_ + b.q_ * a.r_, d, a.r_ * b.r_);
}

Surd operator-(const Surd& a, const Surd& b) { return a + (-b); }

Surd operator*(const Surd& a, const Surd& b) {
    if (a.q_ != 0 && b.q_ != 0 && a.d_ != b.d_) {
        // pure radicals still multiply inside a quadratic field
        if (a.p_ == 0 && b.p_ == 0)
            return Surd(0, a.q_ * b.q_, a.d_ * b.d_, a.r_ * b.r_);
        throw PreconditionViolated("multiplying surds from different quadratic fields");
    }
    const mpz_class& d = (a.q_ != 0) ? a.d_ : b.d_;
    return Surd(a.p_ * b.p_ + a.q_ * b.q_ * d, a.p_ * b.q_ + a.q_ * b.p_, d,
                a.r_ * b.r_);
}

Surd operator/(const Surd& a, const Surd& b) {
    if (b.sign() == 0) throw PreconditionViolated("division by zero surd");
    if (b.q_ == 0) return Surd(a.p_ * b.r_, a.q_ * b.r_, a.d_, a.r_ * b.p_);
    if (a.q_ != 0 && a.d_ != b.d_) {
        if (a.p_ == 0 && b.p_ == 0)
            return Surd(0, a.q_ * b.d_ * b.r_, a.d_ * b.d_, a.r_ * b.q_ * b.d_);
        throw PreconditionViolated("dividing surds from different quadratic fields");
    }
    // 1/((p + q sd)/r) = r (p - q sd) / (p^2 - q^2 d)
    mpz_class den = b.p_ * b.p_ - b.q_ * b.q_ * b.d_;
    Surd inv(b.r_ * b.p_, -b.r_ * b.q_, b.d_, den);
    return a * inv;
}

Surd Surd::pow_ui(unsigned long e) const {
    Surd acc = Surd::from_integer(1);
    Surd base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

mpz_class Surd::floor() const {
    if (q_ == 0) {
        mpz_class f;
        mpz_fdiv_q(f.get_mpz_t(), p_.get_mpz_t(), r_.get_mpz_t());
        return f;
    }
    // bracket q*sqrt(d) between consecutive integers
    mpz_class t = isqrt(q_ * q_ * d_);
    mpz_class lo = (q_ > 0) ? t : mpz_class(-t - 1);  // q^2 d is never square here
    mpz_class f;
    mpz_class num = p_ + lo;
    mpz_fdiv_q(f.get_mpz_t(), num.get_mpz_t(), r_.get_mpz_t());
    // value lies in [(p+lo)/r, (p+lo+1)/r); floor is f or f+1
    while (cmp(mpq_class(f + 1)) >= 0) ++f;
    return f;
}

mpz_class Surd::nearest_int() const {
    // floor(x + 1/2)
    Surd shifted(2 * p_ + r_, 2 * q_, d_, 2 * r_);
    return shifted.floor();
}

void Surd::enclose(unsigned prec_bits, mpq_class& lo, mpq_class& hi) const {
    if (q_ == 0) {
        lo = hi = to_rational();
        return;
    }
    // sqrt(d) in [s/2^k, (s+1)/2^k], widen by |q|/r afterwards
    unsigned k = prec_bits + 2 + static_cast<unsigned>(mpz_sizeinbase(q_.get_mpz_t(), 2));
    mpz_class scaled = d_ << (2 * k);
    mpz_class s = isqrt(scaled);
    mpz_class two_k = mpz_class(1) << k;
    mpq_class rt_lo(s, two_k), rt_hi(s + 1, two_k);
    rt_lo.canonicalize();
    rt_hi.canonicalize();
    mpq_class a, b;
    if (q_ >= 0) {
        a = (p_ + q_ * rt_lo) / r_;
        b = (p_ + q_ * rt_hi) / r_;
    } else {
        a = (p_ + q_ * rt_hi) / r_;
        b = (p_ + q_ * rt_lo) / r_;
    }
    a.canonicalize();
    b.canonicalize();
    lo = a;
    hi = b;
}

double Surd::to_double() const {
    mpq_class lo, hi;
    enclose(80, lo, hi);
    return mpq_class((lo + hi) / 2).get_d();
}

std::string Surd::str() const {
    std::ostringstream os;
    if (q_ == 0) {
        os << p_;
        if (r_ != 1) os << "/" << r_;
        return os.str();
    }
    os << "(" << p_;
    if (q_ >= 0) os << "+";
    os << q_ << "*sqrt(" << d_ << "))/" << r_;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Surd& s) { return os << s.str(); }

namespace {

struct Cursor {
    const std::string& s;
    size_t i = 0;
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    bool eat_word(const char* w) {
        skip_ws();
        size_t n = std::string(w).size();
        if (s.compare(i, n, w) == 0) {
            i += n;
            return true;
        }
        return false;
    }
    mpz_class integer() {
        skip_ws();
        size_t start = i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
            throw ParseError("expected integer in surd at position " + std::to_string(start));
        return mpz_class(s.substr(start, i - start));
    }
};

}  // namespace

Surd Surd::parse(const std::string& text) {
    Cursor c{text};
    if (!c.eat('(')) {
        // plain integer or rational a/b
        mpz_class num = c.integer();
        if (c.eat('/')) {
            mpz_class den = c.integer();
            c.skip_ws();
            if (c.i != text.size()) throw ParseError("trailing characters in surd: " + text);
            return Surd(num, 0, 2, den);
        }
        c.skip_ws();
        if (c.i != text.size()) throw ParseError("trailing characters in surd: " + text);
        return Surd(num, 0, 2, 1);
    }
    mpz_class p = c.integer();
    c.skip_ws();
    mpz_class q;
    if (c.eat('+'))
        q = c.integer();
    else if (c.eat('-'))
        q = -c.integer();
    else
        throw ParseError("expected '+' or '-' in surd: " + text);
    if (!c.eat('*') || !c.eat_word("sqrt") || !c.eat('('))
        throw ParseError("expected '*sqrt(' in surd: " + text);
    mpz_class d = c.integer();
    if (!c.eat(')') || !c.eat(')') || !c.eat('/'))
        throw ParseError("expected '))/r' in surd: " + text);
    mpz_class r = c.integer();
    c.skip_ws();
    if (c.i != text.size()) throw ParseError("trailing characters in surd: " + text);
    return Surd(p, q, d, r);
}

}  // namespace beattylab
