#include "beattylab/realparam.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace beattylab {

Interval::Interval(mpq_class lo, mpq_class hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_ > hi_) throw PreconditionViolated("interval endpoints out of order");
    lo_.canonicalize();
    hi_.canonicalize();
}

bool Interval::contains_integer() const {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), hi_.get_num().get_mpz_t(), hi_.get_den().get_mpz_t());
    return mpq_class(f) >= lo_;
}

Interval operator+(const Interval& a, const Interval& b) {
    return Interval(a.lo_ + b.lo_, a.hi_ + b.hi_);
}

Interval operator-(const Interval& a, const Interval& b) {
    return Interval(a.lo_ - b.hi_, a.hi_ - b.lo_);
}

Interval operator*(const Interval& a, const Interval& b) {
    mpq_class c1 = a.lo_ * b.lo_, c2 = a.lo_ * b.hi_, c3 = a.hi_ * b.lo_, c4 = a.hi_ * b.hi_;
    return Interval(std::min({c1, c2, c3, c4}), std::max({c1, c2, c3, c4}));
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.lo_ <= 0 && b.hi_ >= 0)
        throw PreconditionViolated("interval division through zero");
    mpq_class c1 = a.lo_ / b.lo_, c2 = a.lo_ / b.hi_, c3 = a.hi_ / b.lo_, c4 = a.hi_ / b.hi_;
    return Interval(std::min({c1, c2, c3, c4}), std::max({c1, c2, c3, c4}));
}

Interval Interval::abs() const {
    if (lo_ >= 0) return *this;
    if (hi_ <= 0) return -*this;
    return Interval(0, std::max(mpq_class(-lo_), hi_));
}

RealParam RealParam::from_interval(const mpq_class& mid, const mpq_class& rad) {
    if (rad < 0) throw PreconditionViolated("interval radius must be non-negative");
    return RealParam(Interval(mid - rad, mid + rad), true);
}

const Surd& RealParam::surd() const {
    if (!exact_) throw PreconditionViolated("real parameter is not exact");
    return *exact_;
}

const Interval& RealParam::box() const {
    if (exact_) throw PreconditionViolated("real parameter is exact");
    return box_;
}

Interval RealParam::enclosure(unsigned prec_bits) const {
    if (!exact_) return box_;
    mpq_class lo, hi;
    exact_->enclose(prec_bits, lo, hi);
    return Interval(lo, hi);
}

namespace {

template <class SurdOp, class IntervalOp>
RealParam combine(const RealParam& a, const RealParam& b, SurdOp sop, IntervalOp iop) {
    if (a.exact() && b.exact() &&
        (a.surd().compatible_with(b.surd()) ||
         (a.surd().p() == 0 && b.surd().p() == 0)))
        try {
            return RealParam(sop(a.surd(), b.surd()));
        } catch (const PreconditionViolated&) {
            // fall through to interval arithmetic (incompatible fields)
        }
    Interval r = iop(a.enclosure(RealParam::kDefaultPrec), b.enclosure(RealParam::kDefaultPrec));
    return RealParam(r, true);
}

}  // namespace

RealParam operator+(const RealParam& a, const RealParam& b) {
    return combine(a, b, [](const Surd& x, const Surd& y) { return x + y; },
                   [](const Interval& x, const Interval& y) { return x + y; });
}

RealParam operator-(const RealParam& a, const RealParam& b) {
    return combine(a, b, [](const Surd& x, const Surd& y) { return x - y; },
                   [](const Interval& x, const Interval& y) { return x - y; });
}

RealParam operator*(const RealParam& a, const RealParam& b) {
    return combine(a, b, [](const Surd& x, const Surd& y) { return x * y; },
                   [](const Interval& x, const Interval& y) { return x * y; });
}

RealParam operator/(const RealParam& a, const RealParam& b) {
    return combine(a, b, [](const Surd& x, const Surd& y) { return x / y; },
                   [](const Interval& x, const Interval& y) { return x / y; });
}

RealParam RealParam::operator-() const {
    if (exact_) return RealParam(-*exact_);
    return RealParam(-box_, true);
}

std::string RealParam::str() const {
    if (exact_) return exact_->str();
    std::ostringstream os;
    mpq_class mid = box_.mid(), rad = box_.width() / 2;
    os << mid.get_d() << "+-" << rad.get_d();
    return os.str();
}

namespace {

mpq_class parse_decimal(const std::string& s) {
    // [+-]digits[.digits][e[+-]digits]
    size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = (s[i++] == '-');
    std::string digits;
    long frac_digits = 0;
    bool seen_digit = false, seen_dot = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits += c;
            seen_digit = true;
            if (seen_dot) ++frac_digits;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            break;
        }
    }
    if (!seen_digit) throw ParseError("expected decimal number: " + s);
    long exp10 = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = (s[i++] == '-');
        std::string e;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) e += s[i++];
        if (e.empty()) throw ParseError("empty exponent: " + s);
        exp10 = std::stol(e) * (eneg ? -1 : 1);
    }
    if (i != s.size()) throw ParseError("trailing characters in decimal: " + s);
    mpz_class num(digits.empty() ? "0" : digits);
    mpq_class v(num);
    long shift = exp10 - frac_digits;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    if (shift >= 0)
        v *= mpq_class(pow10);
    else
        v /= mpq_class(pow10);
    v.canonicalize();
    return neg ? mpq_class(-v) : v;
}

}  // namespace

RealParam RealParam::parse(const std::string& text) {
    std::string s = text;
    // strip outer spaces
    auto notspace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
    if (s.empty()) throw ParseError("empty real parameter");

    if (s.front() == '(') return RealParam(Surd::parse(s));

    // interval forms "m+-e" / "m±e"
    for (const std::string& sep : {std::string("+-"), std::string("\xC2\xB1")}) {
        auto pos = s.find(sep, 1);
        if (pos != std::string::npos) {
            mpq_class mid = parse_decimal(s.substr(0, pos));
            mpq_class rad = parse_decimal(s.substr(pos + sep.size()));
            return from_interval(mid, rad);
        }
    }

    // rational "a/b"
    auto slash = s.find('/');
    if (slash != std::string::npos) return RealParam(Surd::parse(s));

    return from_rational(parse_decimal(s));
}

namespace {

constexpr unsigned kStartPrec = 64;

}  // namespace

mpz_class floor_of(const RealParam& x) {
    if (x.exact()) return x.surd().floor();
    const Interval& b = x.box();
    mpz_class flo, fhi;
    mpz_fdiv_q(flo.get_mpz_t(), b.lo().get_num().get_mpz_t(), b.lo().get_den().get_mpz_t());
    mpz_fdiv_q(fhi.get_mpz_t(), b.hi().get_num().get_mpz_t(), b.hi().get_den().get_mpz_t());
    if (flo != fhi)
        throw UndecidableAtPrecision("floor straddles an integer at the supplied precision");
    return flo;
}

mpz_class floor_linear(const mpz_class& n, const RealParam& alpha, const RealParam& beta) {
    if (n < 1) throw PreconditionViolated("floor_linear requires n >= 1");
    if (alpha.exact() && beta.exact() && alpha.surd().compatible_with(beta.surd())) {
        Surd na = alpha.surd() * Surd::from_rational(mpq_class(n));
        return (na + beta.surd()).floor();
    }
    bool refinable = alpha.exact() && beta.exact();
    for (unsigned prec = kStartPrec;; prec *= 2) {
        Interval v = alpha.enclosure(prec) * Interval::point(mpq_class(n)) + beta.enclosure(prec);
        mpz_class flo, fhi;
        mpz_fdiv_q(flo.get_mpz_t(), v.lo().get_num().get_mpz_t(), v.lo().get_den().get_mpz_t());
        mpz_fdiv_q(fhi.get_mpz_t(), v.hi().get_num().get_mpz_t(), v.hi().get_den().get_mpz_t());
        if (flo == fhi) return flo;
        if (!refinable)
            throw UndecidableAtPrecision("n*alpha+beta straddles an integer at the supplied precision");
        if (prec >= RealParam::kMaxPrec)
            throw PrecisionExhausted("floor_linear refinement cap reached");
    }
}

Interval dist_nearest_int(const Interval& x) {
    if (x.width() >= 1) return Interval(0, mpq_class(1, 2));
    // shift lo into [0,1)
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), x.lo().get_num().get_mpz_t(), x.lo().get_den().get_mpz_t());
    mpq_class lo = x.lo() - f, hi = x.hi() - f;  // lo in [0,1), hi < 2
    auto dist = [](const mpq_class& t) {  // t in [0,2)
        mpq_class m = (t <= 1) ? t : mpq_class(t - 1);
        return std::min(m, mpq_class(1 - m));
    };
    mpq_class da = dist(lo), db = dist(hi);
    mpq_class out_lo = std::min(da, db), out_hi = std::max(da, db);
    mpq_class half(1, 2), one(1), three_half(3, 2);
    // interior extrema of ||t|| on [lo, hi]
    if (lo <= one && one <= hi) out_lo = 0;
    if (lo <= half && half <= hi) out_hi = half;
    if (lo <= three_half && three_half <= hi) out_hi = half;
    return Interval(out_lo, out_hi);
}

RealParam dist_nearest_int(const RealParam& x) {
    if (x.exact()) {
        const Surd& s = x.surd();
        mpz_class j = s.nearest_int();
        Surd d = (s - Surd::from_rational(mpq_class(j))).abs();
        return RealParam(d);
    }
    return RealParam(dist_nearest_int(x.box()), true);
}

bool certified_less(const RealParam& x, const RealParam& y) {
    if (x.exact() && y.exact()) {
        if (x.surd().compatible_with(y.surd())) return x.surd().cmp(y.surd()) < 0;
        // distinct quadratic fields: values cannot coincide, refine until split
        for (unsigned prec = kStartPrec; prec <= RealParam::kMaxPrec; prec *= 2) {
            Interval a = x.enclosure(prec), b = y.enclosure(prec);
            if (a.hi() < b.lo()) return true;
            if (b.hi() < a.lo()) return false;
        }
        throw PrecisionExhausted("certified_less refinement cap reached");
    }
    Interval a = x.enclosure(RealParam::kDefaultPrec), b = y.enclosure(RealParam::kDefaultPrec);
    if (a.hi() < b.lo()) return true;
    if (b.hi() < a.lo()) return false;
    if (a.is_point() && b.is_point()) return false;  // equal rationals
    throw UndecidableAtPrecision("intervals overlap; supply higher precision");
}

}  // namespace beattylab
