#include "beattylab/beatty.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace beattylab {

BeattyParams::BeattyParams(RealParam a, RealParam b) : alpha(std::move(a)), beta(std::move(b)) {
    if (alpha.exact()) {
        if (alpha.surd().sign() <= 0) throw PreconditionViolated("alpha must be positive");
        if (alpha.surd().is_rational())
            throw PreconditionViolated("alpha must be irrational (rational alpha makes "
                                       "the Beatty sequence a union of residue classes)");
        alpha_certified_irrational = true;
    } else {
        if (alpha.box().lo() <= 0) throw PreconditionViolated("alpha must be positive");
        alpha_certified_irrational = false;  // interval input: unverified-irrational
    }
    if (beta.exact()) {
        if (beta.surd().sign() < 0) throw PreconditionViolated("beta must be >= 0");
    } else if (beta.box().lo() < 0) {
        throw PreconditionViolated("beta must be >= 0");
    }
}

namespace {

constexpr unsigned kStartPrec = 96;

bool exact_compatible(const BeattyParams& p) {
    return p.alpha.exact() && p.beta.exact() &&
           p.alpha.surd().compatible_with(p.beta.surd());
}

// m > alpha + beta - 1
bool above_threshold(const mpz_class& m, const BeattyParams& params) {
    if (exact_compatible(params)) {
        Surd rhs = params.alpha.surd() + params.beta.surd() - Surd::from_integer(1);
        return rhs.cmp(mpq_class(m)) < 0;
    }
    bool refinable = params.alpha.exact() && params.beta.exact();
    for (unsigned prec = kStartPrec;; prec *= 2) {
        Interval v = params.alpha.enclosure(prec) + params.beta.enclosure(prec) -
                     Interval::point(1);
        if (v.hi() < m) return true;
        if (v.lo() >= m) return false;
        if (!refinable)
            throw UndecidableAtPrecision("membership threshold undecidable at supplied precision");
        if (prec >= RealParam::kMaxPrec)
            throw PrecisionExhausted("membership threshold refinement cap reached");
    }
}

// || (2m + 1 - 2 beta) / (2 alpha) || < 1 / (2 alpha)
bool norm_criterion(const mpz_class& m, const BeattyParams& params) {
    if (exact_compatible(params)) {
        Surd num = Surd::from_rational(mpq_class(2 * m + 1)) -
                   params.beta.surd() * Surd::from_integer(2);
        Surd two_alpha = params.alpha.surd() * Surd::from_integer(2);
        Surd x = num / two_alpha;
        Surd dist = (x - Surd::from_rational(mpq_class(x.nearest_int()))).abs();
        Surd bound = Surd::from_integer(1) / two_alpha;
        return dist.cmp(bound) < 0;
    }
    bool refinable = params.alpha.exact() && params.beta.exact();
    mpq_class two_m_one(2 * m + 1);
    for (unsigned prec = kStartPrec;; prec *= 2) {
        Interval a2 = params.alpha.enclosure(prec) * Interval::point(2);
        Interval x = (Interval::point(two_m_one) -
                      params.beta.enclosure(prec) * Interval::point(2)) /
                     a2;
        Interval dist = dist_nearest_int(x);
        Interval bound = Interval::point(1) / a2;
        if (dist.hi() < bound.lo()) return true;
        if (dist.lo() >= bound.hi()) return false;
        if (!refinable)
            throw UndecidableAtPrecision("membership criterion undecidable at supplied precision");
        if (prec >= RealParam::kMaxPrec)
            throw PrecisionExhausted("membership criterion refinement cap reached");
    }
}

}  // namespace

bool is_member(const mpz_class& m, const BeattyParams& params) {
    return above_threshold(m, params) && norm_criterion(m, params);
}

bool member_witness(const mpz_class& m, const BeattyParams& params) {
    // n = ceil((m - beta)/alpha) = -floor((beta - m)/alpha)
    mpz_class n;
    if (exact_compatible(params)) {
        Surd y = (params.beta.surd() - Surd::from_rational(mpq_class(m))) / params.alpha.surd();
        n = -y.floor();
    } else {
        bool refinable = params.alpha.exact() && params.beta.exact();
        for (unsigned prec = kStartPrec;; prec *= 2) {
            Interval y = (params.beta.enclosure(prec) - Interval::point(mpq_class(m))) /
                         params.alpha.enclosure(prec);
            mpz_class flo, fhi;
            mpz_fdiv_q(flo.get_mpz_t(), y.lo().get_num().get_mpz_t(), y.lo().get_den().get_mpz_t());
            mpz_fdiv_q(fhi.get_mpz_t(), y.hi().get_num().get_mpz_t(), y.hi().get_den().get_mpz_t());
            if (flo == fhi) {
                n = -flo;
                break;
            }
            if (!refinable)
                throw UndecidableAtPrecision("witness index undecidable at supplied precision");
            if (prec >= RealParam::kMaxPrec)
                throw PrecisionExhausted("witness index refinement cap reached");
        }
    }
    if (n < 1) return false;
    return floor_linear(n, params.alpha, params.beta) == m;
}

void for_each_member(const mpz_class& N, const BeattyParams& params,
                     const std::function<void(const mpz_class&)>& fn) {
    mpz_class prev;
    bool have_prev = false;
    for (mpz_class n = 1;; ++n) {
        mpz_class m = floor_linear(n, params.alpha, params.beta);
        if (m > N) break;
        if (!have_prev || prev != m) {
            fn(m);
            prev = m;
            have_prev = true;
        }
    }
}

std::vector<mpz_class> enumerate_members(const mpz_class& N, const BeattyParams& params) {
    std::vector<mpz_class> out;
    for_each_member(N, params, [&](const mpz_class& m) { out.push_back(m); });
    return out;
}

int chi_delta(const RealParam& theta, const mpq_class& delta) {
    if (!(delta > 0 && delta <= mpq_class(1, 2)))
        throw PreconditionViolated("chi_delta requires 0 < delta <= 1/2");
    if (theta.exact()) {
        const Surd& s = theta.surd();
        Surd dist = (s - Surd::from_rational(mpq_class(s.nearest_int()))).abs();
        return dist.cmp(delta) < 0 ? 1 : 0;
    }
    Interval dist = dist_nearest_int(theta.box());
    if (dist.hi() < delta) return 1;
    if (dist.lo() >= delta) return 0;
    throw UndecidableAtPrecision("||theta|| straddles delta at the supplied precision");
}

namespace {

// Vaaler's coefficient function phi(t) = pi t (1-t) cot(pi t) + t on (0,1).
double vaaler_phi(double t) {
    const double pi = std::numbers::pi;
    return pi * t * (1.0 - t) * (std::cos(pi * t) / std::sin(pi * t)) + t;
}

}  // namespace

double SandwichPolys::lower(double theta) const {
    double s = lower_const();
    const double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t l = 1; l <= L; ++l)
        s += 2.0 * c_minus[l - 1] * std::cos(two_pi * static_cast<double>(l) * theta);
    return s;
}

double SandwichPolys::upper(double theta) const {
    double s = upper_const();
    const double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t l = 1; l <= L; ++l)
        s += 2.0 * c_plus[l - 1] * std::cos(two_pi * static_cast<double>(l) * theta);
    return s;
}

double SandwichPolys::lower_const() const {
    return 2.0 * delta.get_d() - 1.0 / static_cast<double>(L + 1);
}

double SandwichPolys::upper_const() const {
    return 2.0 * delta.get_d() + 1.0 / static_cast<double>(L + 1);
}

std::vector<mpq_class> sandwich_validation_grid(const mpq_class& delta) {
    constexpr unsigned long kGrid = 10000;
    std::vector<mpq_class> grid;
    grid.reserve(kGrid + 4);
    for (unsigned long j = 0; j < kGrid; ++j) {
        mpq_class t(2 * j + 1, 2 * kGrid);
        t.canonicalize();
        grid.push_back(t);
    }
    mpq_class eps(1, 1000000000);
    grid.push_back(delta - eps);
    grid.push_back(delta + eps);
    grid.push_back(-delta - eps);
    grid.push_back(-delta + eps);
    return grid;
}

SandwichPolys sandwich_polys(const mpq_class& delta, std::size_t L) {
    if (!(delta > 0 && delta < mpq_class(1, 2)))
        throw PreconditionViolated("sandwich_polys requires 0 < delta < 1/2");
    if (L < 1) throw PreconditionViolated("sandwich_polys requires L >= 1");

    SandwichPolys sp;
    sp.delta = delta;
    sp.L = L;
    sp.c_minus.resize(L);
    sp.c_plus.resize(L);
    const double pi = std::numbers::pi;
    const double dd = delta.get_d();
    const double K = static_cast<double>(L + 1);
    for (std::size_t l = 1; l <= L; ++l) {
        double ld = static_cast<double>(l);
        double main = vaaler_phi(ld / K) * std::sin(2.0 * pi * ld * dd) / (pi * ld);
        double corr = (1.0 / K) * (1.0 - ld / K) * std::cos(2.0 * pi * ld * dd);
        sp.c_plus[l - 1] = main + corr;
        sp.c_minus[l - 1] = main - corr;
    }

    // coefficient bound of the two-sided approximation
    for (std::size_t l = 1; l <= L; ++l) {
        double cap = std::min(2.0 * dd + 1.0 / K, 3.0 / (2.0 * static_cast<double>(l)));
        if (std::abs(sp.c_plus[l - 1]) > cap || std::abs(sp.c_minus[l - 1]) > cap)
            throw ConstructionFailed("sandwich coefficient exceeds the required bound at l=" +
                                     std::to_string(l));
    }

    // pointwise sandwich on the validation grid
    for (const mpq_class& t : sandwich_validation_grid(delta)) {
        int chi = chi_delta(RealParam::from_rational(t), delta);
        double td = t.get_d();
        if (!(sp.lower(td) <= chi && chi <= sp.upper(td)))
            throw ConstructionFailed("sandwich violated at a validation grid point");
    }
    return sp;
}

double discrepancy(std::vector<double> points) {
    if (points.empty()) throw PreconditionViolated("discrepancy of an empty point set");
    for (double p : points)
        if (!(p >= 0.0 && p < 1.0))
            throw PreconditionViolated("discrepancy points must lie in [0,1)");
    std::sort(points.begin(), points.end());
    const double M = static_cast<double>(points.size());
    double over = -1.0, under = -1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        double di = static_cast<double>(i);
        over = std::max(over, (di + 1.0) / M - points[i]);
        under = std::max(under, points[i] - di / M);
    }
    return over + under;
}

}  // namespace beattylab
