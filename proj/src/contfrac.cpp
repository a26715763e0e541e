#include "beattylab/contfrac.hpp"

#include <cmath>

namespace beattylab {

ContinuedFraction ContinuedFraction::from_quotients(std::vector<mpz_class> quotients) {
    ContinuedFraction cf;
    cf.quotients = std::move(quotients);
    mpz_class p_prev = 1, p_prev2 = 0, q_prev = 0, q_prev2 = 1;
    for (const mpz_class& a : cf.quotients) {
        mpz_class p = a * p_prev + p_prev2;
        mpz_class q = a * q_prev + q_prev2;
        cf.convergents.emplace_back(p, q);
        p_prev2 = p_prev;
        p_prev = p;
        q_prev2 = q_prev;
        q_prev = q;
    }
    return cf;
}

mpq_class ContinuedFraction::value() const {
    if (convergents.empty()) throw PreconditionViolated("empty continued fraction");
    mpq_class v(convergents.back().first, convergents.back().second);
    v.canonicalize();
    return v;
}

namespace {

// Gauss-map expansion over exact surds. Canonical normalization makes the
// iterates cycle, so representations stay bounded for periodic expansions.
ContinuedFraction expand_surd(const Surd& x0, std::size_t count) {
    std::vector<mpz_class> quots;
    Surd x = x0;
    for (std::size_t i = 0; i < count; ++i) {
        mpz_class a = x.floor();
        quots.push_back(a);
        Surd frac = x - Surd::from_rational(mpq_class(a));
        if (frac.sign() == 0) break;  // rational input: expansion terminates
        x = Surd::from_integer(1) / frac;
    }
    return ContinuedFraction::from_quotients(std::move(quots));
}

ContinuedFraction expand_interval(const Interval& x0, std::size_t count) {
    std::vector<mpz_class> quots;
    Interval x = x0;
    for (std::size_t i = 0; i < count; ++i) {
        mpz_class flo, fhi;
        mpz_fdiv_q(flo.get_mpz_t(), x.lo().get_num().get_mpz_t(), x.lo().get_den().get_mpz_t());
        mpz_fdiv_q(fhi.get_mpz_t(), x.hi().get_num().get_mpz_t(), x.hi().get_den().get_mpz_t());
        if (flo != fhi)
            throw PrecisionExhausted("interval cannot certify partial quotient " +
                                     std::to_string(i));
        quots.push_back(flo);
        Interval frac = x - Interval::point(mpq_class(flo));
        if (frac.lo() <= 0) {
            if (frac.hi() == 0 && frac.is_point()) break;  // exact rational endpoint
            throw PrecisionExhausted("interval cannot certify partial quotient " +
                                     std::to_string(i + 1));
        }
        x = Interval::point(1) / frac;
    }
    return ContinuedFraction::from_quotients(std::move(quots));
}

}  // namespace

ContinuedFraction cf_expand(const RealParam& x, std::size_t count) {
    if (count == 0) throw PreconditionViolated("cf_expand requires count >= 1");
    if (x.exact()) return expand_surd(x.surd(), count);
    return expand_interval(x.box(), count);
}

RationalApprox dirichlet_approx(const RealParam& x, const mpz_class& Q) {
    if (Q < 1) throw PreconditionViolated("dirichlet_approx requires Q >= 1");
    std::size_t count = 8;
    for (;;) {
        ContinuedFraction cf = cf_expand(x, count);
        // pick the last convergent with denominator <= Q
        std::size_t pick = cf.convergents.size();
        for (std::size_t i = 0; i < cf.convergents.size(); ++i) {
            if (cf.convergents[i].second <= Q)
                pick = i;
            else
                break;
        }
        if (pick == cf.convergents.size())
            throw PreconditionViolated("no convergent with denominator <= Q");
        bool terminated = cf.quotients.size() < count;
        if (pick + 1 < cf.convergents.size() || terminated)
            return {cf.convergents[pick].first, cf.convergents[pick].second};
        count *= 2;  // need the next denominator to witness q_{n+1} > Q
    }
}

TypeEstimate type_estimate(const RealParam& x, std::size_t n_max) {
    if (n_max < 3) throw PreconditionViolated("type_estimate requires n_max >= 3");
    ContinuedFraction cf = cf_expand(x, n_max + 1);
    TypeEstimate est;
    double best = 0.0;
    std::size_t limit = std::min(n_max, cf.convergents.size());
    for (std::size_t i = 0; i < limit; ++i) {
        const mpz_class& q = cf.convergents[i].second;
        if (q < 2) continue;
        RealParam qx = RealParam::from_rational(mpq_class(q)) * x;
        Interval dist = x.exact() ? dist_nearest_int(qx).enclosure(128)
                                  : dist_nearest_int(qx.box());
        if (dist.lo() <= 0) continue;  // terminating expansion; no information
        double dn = dist.mid().get_d();
        double lq = std::log(q.get_d());
        double sample = -std::log(dn) / lq;
        est.samples.push_back({q, sample});
        // q = 2 gives log q too small to carry information about the exponent
        if (q >= 3) best = std::max(best, sample - 1.0);
    }
    est.t_lower = std::max(1.0, best);
    return est;
}

std::size_t bracket_index(const std::vector<std::pair<mpz_class, mpz_class>>& convergents,
                          const Interval& threshold) {
    if (convergents.size() < 2)
        throw InsufficientConvergents("need at least two convergents to bracket");
    std::size_t m = convergents.size();
    for (std::size_t i = 0; i < convergents.size(); ++i) {
        if (mpq_class(convergents[i].first) <= threshold.lo())
            m = i;
        else
            break;
    }
    if (m == convergents.size()) {
        if (threshold.hi() < mpq_class(convergents.front().first))
            throw InsufficientConvergents("threshold below the first convergent numerator");
        throw UndecidableAtPrecision("threshold enclosure straddles the first numerator");
    }
    if (m + 1 == convergents.size())
        throw InsufficientConvergents("threshold may exceed the last convergent numerator");
    if (threshold.hi() < mpq_class(convergents[m + 1].first)) return m;
    throw UndecidableAtPrecision("threshold enclosure straddles a convergent numerator");
}

Interval pow_rational(const RealParam& x, const mpz_class& num, const mpz_class& den,
                      unsigned prec_bits) {
    if (den < 1) throw PreconditionViolated("pow_rational requires den >= 1");
    if (num < 0) throw PreconditionViolated("pow_rational requires num >= 0");
    if (!num.fits_ulong_p()) throw CapacityExceeded("exponent numerator too large");

    Interval base_pow;
    if (x.exact()) {
        Surd y = x.surd().pow_ui(num.get_ui());
        base_pow = RealParam(y).enclosure(prec_bits + 16);
    } else {
        Interval b = x.box();
        if (b.lo() <= 0) throw PreconditionViolated("pow_rational requires x > 0");
        Interval acc = Interval::point(1);
        for (unsigned long i = 0; i < num.get_ui(); ++i) acc = acc * b;
        base_pow = acc;
    }
    if (den == 1) return base_pow;
    if (base_pow.lo() <= 0) throw PreconditionViolated("pow_rational root of non-positive value");
    if (!den.fits_ulong_p()) throw CapacityExceeded("exponent denominator too large");
    unsigned long n = den.get_ui();

    // y^(1/n) bracketed via integer n-th roots of scaled numerators
    mpz_class scale = mpz_class(1) << prec_bits;
    mpz_class scale_n;
    mpz_pow_ui(scale_n.get_mpz_t(), scale.get_mpz_t(), n);

    auto root_lo = [&](const mpq_class& v) {
        mpz_class t = (v.get_num() * scale_n) / v.get_den();  // floor
        mpz_class rt;
        mpz_root(rt.get_mpz_t(), t.get_mpz_t(), n);
        mpq_class out(rt, scale);
        out.canonicalize();
        return out;
    };
    auto root_hi = [&](const mpq_class& v) {
        mpz_class t;
        mpz_cdiv_q(t.get_mpz_t(), mpz_class(v.get_num() * scale_n).get_mpz_t(),
                   v.get_den().get_mpz_t());
        mpz_class rt;
        int exactroot = mpz_root(rt.get_mpz_t(), t.get_mpz_t(), n);
        if (!exactroot) rt += 1;
        mpq_class out(rt, scale);
        out.canonicalize();
        return out;
    };
    return Interval(root_lo(base_pow.lo()), root_hi(base_pow.hi()));
}

std::size_t select_m(const RealParam& alpha, const RealParam& B, const mpq_class& gamma,
                     const ContinuedFraction& cf) {
    if (gamma <= 0) throw PreconditionViolated("gamma must be positive");
    mpq_class g = gamma;
    g.canonicalize();
    mpz_class num = g.get_num() + g.get_den();  // (1+gamma)/gamma = (u+v)/u
    mpz_class den = g.get_num();
    for (unsigned prec = 128;; prec *= 2) {
        Interval t = pow_rational(alpha, num, den, prec) * B.enclosure(prec);
        try {
            return bracket_index(cf.convergents, t);
        } catch (const UndecidableAtPrecision&) {
            if (!(alpha.exact() && B.exact()))
                throw PrecisionExhausted("select_m threshold undecidable at supplied precision");
            if (prec >= RealParam::kMaxPrec)
                throw PrecisionExhausted("select_m refinement cap reached");
        }
    }
}

}  // namespace beattylab
