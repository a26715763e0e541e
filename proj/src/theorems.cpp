#include "beattylab/theorems.hpp"

#include <cmath>
#include <sstream>

#include "beattylab/calibration.hpp"

namespace beattylab {

IntPolynomial::IntPolynomial(std::vector<mpz_class> c) : coeffs(std::move(c)) {
    if (coeffs.size() < 3)
        throw PreconditionViolated("polynomial degree must be >= 2");
    if (coeffs.back() < 1)
        throw PreconditionViolated("leading coefficient must be >= 1");
}

IntPolynomial IntPolynomial::parse(const std::string& text) {
    std::vector<mpz_class> c;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto first = item.find_first_not_of(" \t");
        auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos) throw ParseError("empty polynomial coefficient");
        c.emplace_back(item.substr(first, last - first + 1));
    }
    return IntPolynomial(std::move(c));
}

mpq_class IntPolynomial::gamma() const {
    mpz_class denom;
    mpz_ui_pow_ui(denom.get_mpz_t(), 4, degree() - 1);
    mpq_class g(1, denom);
    g.canonicalize();
    return g;
}

mpz_class IntPolynomial::eval(const mpz_class& x) const {
    static const mpz_class kCap = mpz_class(1) << 127;
    mpz_class acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * x + *it;
        if (acc > kCap || acc < -kCap)
            throw CapacityExceeded("polynomial value exceeds the 2^127 cap");
    }
    return acc;
}

std::string IntPolynomial::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (i) os << ",";
        os << coeffs[i];
    }
    return os.str();
}

RealParam beatty_B(const BeattyParams& params) {
    RealParam one = RealParam::from_rational(1);
    return certified_less(one, params.beta) ? params.beta : one;
}

namespace {

double real_to_double(const RealParam& x) { return x.enclosure(96).to_double(); }

mpz_class power_window(std::uint64_t N, double exponent) {
    double w = std::pow(static_cast<double>(N), exponent);
    if (w < 1.0) return 1;
    if (w > 1e30) throw CapacityExceeded("Dirichlet window too large");
    mpz_class out(std::floor(w));
    return out;
}

struct SievedSum {
    double lhs = 0;
    std::uint64_t matched = 0;
};

// sum of log p over primes p <= N with accept(p); deterministic
// segment-ordered reduction.
SievedSum sum_over_primes(std::uint64_t N, unsigned threads,
                          const std::function<bool(std::uint64_t)>& accept) {
    constexpr std::uint64_t kSeg = 1 << 18;
    if (N < 2) return {};
    std::size_t nseg = static_cast<std::size_t>((N - 2) / kSeg) + 1;
    std::vector<KahanSum> partial(nseg);
    std::vector<std::uint64_t> counts(nseg, 0);
    parallel_segments(2, N, kSeg, threads,
                      [&](std::uint64_t a, std::uint64_t b, std::size_t s) {
                          PrimeTable t = PrimeTable::build(a, b);
                          t.for_each_prime([&](std::uint64_t p) {
                              if (accept(p)) {
                                  partial[s].add(std::log(static_cast<double>(p)));
                                  ++counts[s];
                              }
                          });
                      });
    SievedSum out;
    KahanSum total;
    for (std::size_t s = 0; s < nseg; ++s) {
        total.add(partial[s].value());
        out.matched += counts[s];
    }
    out.lhs = total.value();
    return out;
}

// sum of log p over prime powers p^nu <= N with accept(p^nu), ascending n.
SievedSum sum_over_prime_powers(std::uint64_t N,
                                const std::function<bool(std::uint64_t)>& accept) {
    SievedSum out;
    if (N < 2) return out;
    LambdaSupport sup = LambdaSupport::build(N, APClass{});
    KahanSum total;
    for (std::size_t i = 0; i < sup.n.size(); ++i) {
        if (accept(sup.n[i])) {
            total.add(sup.logp[i]);
            ++out.matched;
        }
    }
    out.lhs = total.value();
    return out;
}

}  // namespace

TheoremReport thm1_experiment(const IntPolynomial& g, const BeattyParams& params,
                              std::uint64_t N, double eps, unsigned threads,
                              bool prime_powers) {
    if (N < 3) throw PreconditionViolated("thm1 requires N >= 3");
    unsigned k = g.degree();
    double gamma = std::pow(4.0, 1.0 - static_cast<double>(k));

    TheoremReport r;
    r.N = N;
    r.eps = eps;
    r.prime_powers = prime_powers;

    // q from a Dirichlet approximation of a_k/alpha at Q = N^{k t/(t+1)}
    RealParam base = RealParam::from_rational(mpq_class(g.leading())) / params.alpha;
    r.t_lower = type_estimate(base, 20).t_lower;
    double t = r.t_lower;
    r.Q = power_window(N, static_cast<double>(k) * t / (t + 1.0));
    RationalApprox approx = dirichlet_approx(base, r.Q);
    r.q = approx.q;

    auto accept = [&](std::uint64_t n) {
        mpz_class v = g.eval(mpz_class(n));
        return v >= 1 && is_member(v, params);
    };
    SievedSum s = prime_powers ? sum_over_prime_powers(N, accept)
                               : sum_over_primes(N, threads, accept);
    r.lhs = s.lhs;
    r.matched = s.matched;

    double alpha_d = real_to_double(params.alpha);
    double theta = prime_powers ? chebyshev_psi(N, APClass{}, threads)
                                : chebyshev_theta(N, APClass{}, threads);
    r.main_term = theta / alpha_d;
    r.error = r.lhs - r.main_term;
    r.rel_deviation = r.main_term != 0 ? std::abs(r.error) / r.main_term : 0.0;

    double Nd = static_cast<double>(N), qd = r.q.get_d();
    r.predicted_bound =
        std::pow(Nd, eps) *
        (Nd * std::pow(qd, -gamma) + std::pow(Nd, 1.0 - gamma / 2.0) +
         std::pow(qd, gamma / (1.0 - gamma)) *
             std::pow(Nd, (1.0 - (k + 1.0) * gamma) / (1.0 - gamma)) +
         std::pow(qd, gamma) * std::pow(Nd, 1.0 - static_cast<double>(k) * gamma));

    r.small_m_cutoff = alpha_d + real_to_double(params.beta) - 1.0;
    r.psi_theta_gap = (chebyshev_psi(N) - chebyshev_theta(N)) / alpha_d;
    return r;
}

namespace {

// Convergents of `base` expanded until index `need` exists (or the theorem's
// threshold bracket succeeds); InsufficientConvergents propagates past the cap.
ContinuedFraction expand_for(const RealParam& base, std::size_t need) {
    std::size_t count = std::max<std::size_t>(16, need + 2);
    for (;;) {
        ContinuedFraction cf = cf_expand(base, count);
        if (cf.convergents.size() >= need + 1 || cf.quotients.size() < count) return cf;
        count *= 2;
        if (count > 4096) throw InsufficientConvergents("convergent expansion cap reached");
    }
}

}  // namespace

void thm2_exponents(unsigned k, double eps, double& e_alpha, double& e_B, double& e_p) {
    double kd = static_cast<double>(k);
    double gamma = std::pow(4.0, 1.0 - kd);
    e_alpha = (2.0 * kd - 1.0) / (kd * gamma) - (gamma + 1.0) * eps / gamma;
    e_B = (kd - 1.0) / kd - eps / gamma;
    e_p = 1.0 / kd + eps / gamma;
}

Thm2Bound thm2_bound(const IntPolynomial& g, const BeattyParams& params, unsigned l,
                     double eps) {
    if (l < 1) throw PreconditionViolated("thm2 requires l >= 1");
    unsigned k = g.degree();
    double kd = static_cast<double>(k);
    double gamma = std::pow(4.0, 1.0 - kd);
    double eps_cap = gamma * gamma / (2.0 * (2.0 * kd + gamma));
    if (!(eps >= 0.0 && eps < eps_cap))
        throw PreconditionViolated("thm2 requires 0 <= eps < gamma^2/(2(2k+gamma))");

    RealParam B = beatty_B(params);
    RealParam base = params.alpha / RealParam::from_rational(mpq_class(g.leading()));
    ContinuedFraction cf = expand_for(base, 80);

    Thm2Bound out;
    out.m = select_m(params.alpha, B, g.gamma(), cf);
    if (out.m + l >= cf.convergents.size())
        throw InsufficientConvergents("need convergent index m + l");
    out.p_m = cf.convergents[out.m].first;
    out.p_m_plus_l = cf.convergents[out.m + l].first;

    thm2_exponents(k, eps, out.exp_alpha, out.exp_B, out.exp_p);
    double alpha_d = real_to_double(params.alpha);
    double B_d = real_to_double(B);
    double p_d = out.p_m_plus_l.get_d();
    out.bound = std::pow(alpha_d, out.exp_alpha) * std::pow(B_d, out.exp_B) *
                std::pow(p_d, out.exp_p);

    // parameter choices of the proof: q = p_{m+l}, eta = q / (alpha^{(1+gamma)/gamma} B)
    double thresh = std::pow(alpha_d, (gamma + 1.0) / gamma) * B_d;
    out.q_choice = p_d;
    out.eta = p_d / thresh;
    out.N_choice = std::pow(alpha_d, (2.0 * kd - 1.0) / (kd * gamma)) *
                   std::pow(B_d, (kd - 1.0) / kd) * std::pow(p_d, 1.0 / kd) *
                   std::pow(out.eta, eps / gamma);

    // diagnostic: smallest l whose q = p_{m+l} satisfies the proof's
    // inequality chain with the measured Prop. 1 constant standing in for C(eps)
    double beta_d = real_to_double(params.beta);
    for (unsigned lc = 1; lc <= 64 && out.m + lc < cf.convergents.size(); ++lc) {
        double qc = cf.convergents[out.m + lc].first.get_d();
        double eta_c = qc / thresh;
        double Nc = std::pow(alpha_d, (2.0 * kd - 1.0) / (kd * gamma)) *
                    std::pow(B_d, (kd - 1.0) / kd) * std::pow(qc, 1.0 / kd) *
                    std::pow(eta_c, eps / gamma);
        double xi_over_N =
            calibration::kProp1Constant * std::pow(Nc, eps) *
            (std::pow(qc, -gamma) + std::pow(Nc, -gamma / 2.0) +
             std::pow(qc, gamma) * std::pow(Nc, -kd * gamma) +
             std::pow(qc, gamma / (1.0 - gamma)) * std::pow(Nc, -kd * gamma / (1.0 - gamma)));
        double rhs = 1.04 * (alpha_d / Nc) * (alpha_d + beta_d - 1.0) +
                     1.81 * alpha_d / std::sqrt(Nc) + alpha_d * xi_over_N;
        if (0.73 > rhs) {
            out.l_min_measured = lc;
            break;
        }
    }
    return out;
}

mpz_class least_prime_search(const IntPolynomial& g, const BeattyParams& params,
                             std::uint64_t cap) {
    if (cap >= 2) {
        PrimeTable t = PrimeTable::build(2, cap);
        mpz_class found = 0;
        t.for_each_prime([&](std::uint64_t p) {
            if (found != 0) return;
            mpz_class v = g.eval(mpz_class(p));
            if (v >= 1 && is_member(v, params)) found = p;
        });
        if (found != 0) return found;
    }
    throw NotFoundBelowCap("no prime p <= cap with g(p) in the Beatty sequence", cap);
}

double thm3_lhs(const BeattyParams& params, const APClass& ap, std::uint64_t N,
                unsigned threads, std::uint64_t* matched) {
    SievedSum s = sum_over_primes(N, threads, [&](std::uint64_t p) {
        return ap.matches(p) && is_member(mpz_class(p), params);
    });
    if (matched) *matched = s.matched;
    return s.lhs;
}

TheoremReport thm3_experiment(const BeattyParams& params, const APClass& ap, std::uint64_t N,
                              double eps, unsigned threads, bool prime_powers) {
    if (N < 3) throw PreconditionViolated("thm3 requires N >= 3");
    TheoremReport r;
    r.N = N;
    r.eps = eps;
    r.prime_powers = prime_powers;

    RealParam inv_alpha = RealParam::from_rational(1) / params.alpha;
    r.t_lower = type_estimate(inv_alpha, 20).t_lower;
    double t = r.t_lower;
    r.Q = power_window(N, t / (1.0 + t));
    RationalApprox approx = dirichlet_approx(inv_alpha, r.Q);
    r.q = approx.q;

    // d <= min(q^{1/2}, N^{1/6}) exactly: d^2 <= q and d^6 <= N
    if (ap.d > 1) {
        mpz_class d2 = mpz_class(ap.d) * mpz_class(ap.d);
        mpz_class d6 = d2 * d2 * d2;
        if (d2 > r.q || d6 > N)
            throw PreconditionViolated("thm3 requires d <= min(q^(1/2), N^(1/6))");
    }

    if (prime_powers) {
        SievedSum s = sum_over_prime_powers(N, [&](std::uint64_t n) {
            return ap.matches(n) && is_member(mpz_class(n), params);
        });
        r.lhs = s.lhs;
        r.matched = s.matched;
    } else {
        r.lhs = thm3_lhs(params, ap, N, threads, &r.matched);
    }

    double alpha_d = real_to_double(params.alpha);
    double main_sum = prime_powers ? chebyshev_psi(N, ap, threads)
                                   : chebyshev_theta(N, ap, threads);
    r.main_term = main_sum / alpha_d;
    r.error = r.lhs - r.main_term;
    r.rel_deviation = r.main_term != 0 ? std::abs(r.error) / r.main_term : 0.0;

    double Nd = static_cast<double>(N), qd = r.q.get_d(), dd = static_cast<double>(ap.d);
    r.predicted_bound = std::pow(Nd, eps) *
                        (Nd / std::sqrt(qd) + std::sqrt(Nd) * std::sqrt(qd) +
                         std::pow(Nd, 0.75) * std::sqrt(dd) + std::pow(Nd, 0.8) / std::pow(dd, 0.2));

    r.small_m_cutoff = alpha_d + real_to_double(params.beta) - 1.0;
    r.psi_theta_gap = (chebyshev_psi(N, ap) - chebyshev_theta(N, ap)) / alpha_d;
    return r;
}

void remark1_exponents(double eps, double& e_alpha, double& e_B, double& e_d, double& e_p) {
    e_alpha = 3.0 - 7.0 * eps;
    e_B = 0.5 * (1.0 - 3.0 * eps);
    e_d = 3.0 - 10.0 * eps;
    e_p = 1.0 + 3.0 * eps;
}

Remark1Bound remark1_bound(const BeattyParams& params, const APClass& ap, unsigned l,
                           double eps) {
    if (l < 1) throw PreconditionViolated("remark1 requires l >= 1");
    if (ap.d < 2 || ap.d > 500)
        throw PreconditionViolated("remark1 requires 1 <= f < d <= 500");
    if (eps < 0) throw PreconditionViolated("remark1 requires eps >= 0");

    RealParam B = beatty_B(params);
    ContinuedFraction cf = expand_for(params.alpha, 80);

    // p_m <= alpha^{7/3} B^{1/2} d^{10/3} < p_{m+1}
    RealParam d_param = RealParam::from_rational(mpq_class(ap.d));
    Remark1Bound out;
    bool refinable = params.alpha.exact() && B.exact();
    for (unsigned prec = 128;; prec *= 2) {
        Interval thr = pow_rational(params.alpha, 7, 3, prec) * pow_rational(B, 1, 2, prec) *
                       pow_rational(d_param, 10, 3, prec);
        try {
            out.m = bracket_index(cf.convergents, thr);
            break;
        } catch (const UndecidableAtPrecision&) {
            if (!refinable)
                throw PrecisionExhausted("remark1 threshold undecidable at supplied precision");
            if (prec >= RealParam::kMaxPrec)
                throw PrecisionExhausted("remark1 threshold refinement cap reached");
        }
    }
    if (out.m + l >= cf.convergents.size())
        throw InsufficientConvergents("need convergent index m + l");
    out.p_m = cf.convergents[out.m].first;
    out.p_m_plus_l = cf.convergents[out.m + l].first;

    remark1_exponents(eps, out.exp_alpha, out.exp_B, out.exp_d, out.exp_p);
    double alpha_d = real_to_double(params.alpha);
    double B_d = real_to_double(B);
    out.bound = std::pow(alpha_d, out.exp_alpha) * std::pow(B_d, out.exp_B) *
                std::pow(static_cast<double>(ap.d), out.exp_d) *
                std::pow(out.p_m_plus_l.get_d(), out.exp_p);
    return out;
}

}  // namespace beattylab
