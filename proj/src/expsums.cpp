#include "beattylab/expsums.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <thread>

namespace beattylab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::uint64_t kMultiplierCap = std::uint64_t(1) << 62;
constexpr std::uint64_t kVaughanCap = 1'000'000;  // exact decomposition work budget

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t d) {
    long long t = 0, nt = 1;
    long long r = static_cast<long long>(d), nr = static_cast<long long>(a % d);
    while (nr != 0) {
        long long qq = r / nr;
        long long tmp = t - qq * nt;
        t = nt;
        nt = tmp;
        tmp = r - qq * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw PreconditionViolated("residue not invertible");
    return static_cast<std::uint64_t>(t < 0 ? t + static_cast<long long>(d) : t);
}

std::uint64_t checked_multiplier(unsigned __int128 v) {
    if (v >= kMultiplierCap) throw CapacityExceeded("phase multiplier exceeds the 2^62 budget");
    return static_cast<std::uint64_t>(v);
}

}  // namespace

Phase128 Phase128::of(const RealParam& theta, std::uint64_t max_multiplier) {
    if (max_multiplier >= kMultiplierCap)
        throw CapacityExceeded("phase multiplier exceeds the 2^62 budget");
    Interval enc = theta.enclosure(160);
    if (!theta.exact()) {
        // certified digits must survive scaling by the largest multiplier
        mpq_class scaled = enc.width() * mpq_class(static_cast<unsigned long>(max_multiplier));
        if (scaled > mpq_class(1, mpz_class("1000000000000000")))
            throw PrecisionExhausted(
                "theta interval too wide for the requested multiplier range");
    }
    mpq_class mid = enc.mid();
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), mid.get_num().get_mpz_t(), mid.get_den().get_mpz_t());
    mpq_class f = mid - fl;  // in [0,1)
    // u = round(f * 2^128) mod 2^128
    mpz_class num = f.get_num() << 128;
    mpz_class t = (2 * num + f.get_den()) / (2 * f.get_den());
    mpz_class mod = mpz_class(1) << 128;
    t %= mod;
    mpz_class hi = t >> 64;
    mpz_class lo = t - (hi << 64);
    Phase128 ph;
    ph.u_ = (static_cast<unsigned __int128>(hi.get_ui()) << 64) |
            static_cast<unsigned __int128>(lo.get_ui());
    return ph;
}

std::complex<double> Phase128::e(std::uint64_t m) const {
    double x = kTwoPi * frac(m);
    return {std::cos(x), std::sin(x)};
}

LambdaSupport LambdaSupport::build(std::uint64_t N, const APClass& ap) {
    LambdaSupport s;
    if (N < 2) return s;
    PrimeTable t = PrimeTable::build(2, N);
    t.for_each_prime([&](std::uint64_t p) {
        double lp = std::log(static_cast<double>(p));
        for (std::uint64_t pk = p;; pk *= p) {
            if (ap.matches(pk)) {
                s.n.push_back(pk);
                s.logp.push_back(lp);
            }
            if (pk > N / p) break;
        }
    });
    // ascending n keeps summation order independent of how powers interleave
    std::vector<std::size_t> idx(s.n.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return s.n[a] < s.n[b]; });
    LambdaSupport out;
    out.n.reserve(idx.size());
    out.logp.reserve(idx.size());
    for (std::size_t i : idx) {
        out.n.push_back(s.n[i]);
        out.logp.push_back(s.logp[i]);
    }
    return out;
}

std::complex<double> inner_sum(const LambdaSupport& support, const Phase128& ph, long long l) {
    if (l == 0) {
        KahanSum re;
        for (double lp : support.logp) re.add(lp);
        return {re.value(), 0.0};
    }
    std::uint64_t la = static_cast<std::uint64_t>(l < 0 ? -l : l);
    KahanSum re, im;
    for (std::size_t i = 0; i < support.n.size(); ++i) {
        std::complex<double> w = ph.e(la * support.n[i]);
        re.add(support.logp[i] * w.real());
        im.add(support.logp[i] * w.imag());
    }
    double imv = (l < 0) ? -im.value() : im.value();
    return {re.value(), imv};
}

std::complex<double> inner_sum(std::uint64_t N, const APClass& ap, const RealParam& theta,
                               long long l) {
    std::uint64_t la = static_cast<std::uint64_t>(l < 0 ? -l : l);
    Phase128 ph = Phase128::of(
        theta, checked_multiplier(static_cast<unsigned __int128>(std::max<std::uint64_t>(la, 1)) * N));
    return inner_sum(LambdaSupport::build(N, ap), ph, l);
}

double s_theta(const ExpSumSpec& spec, unsigned threads) {
    if (spec.N < 2 || spec.L < 1) throw PreconditionViolated("s_theta requires N >= 2, L >= 1");
    LambdaSupport support = LambdaSupport::build(spec.N, spec.ap);
    Phase128 ph = Phase128::of(
        spec.theta, checked_multiplier(static_cast<unsigned __int128>(spec.L) * spec.N));
    std::vector<double> mag(spec.L + 1, 0.0);
    auto work = [&](std::uint64_t l) { mag[l] = std::abs(inner_sum(support, ph, static_cast<long long>(l))); };
    if (threads <= 1 || spec.L < 2) {
        for (std::uint64_t l = 1; l <= spec.L; ++l) work(l);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::uint64_t> next{1};
        unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(spec.L));
        for (unsigned i = 0; i < n; ++i)
            pool.emplace_back([&] {
                for (;;) {
                    std::uint64_t l = next.fetch_add(1);
                    if (l > spec.L) return;
                    work(l);
                }
            });
        for (auto& t : pool) t.join();
    }
    KahanSum total;
    for (std::uint64_t l = 1; l <= spec.L; ++l) total.add(2.0 * mag[l]);  // conjugate pair
    if (spec.include_l0) total.add(std::abs(inner_sum(support, ph, 0)));
    return total.value();
}

namespace {

struct KahanComplex {
    KahanSum re, im;
    void add(const std::complex<double>& v) {
        re.add(v.real());
        im.add(v.imag());
    }
    std::complex<double> value() const { return {re.value(), im.value()}; }
};

// Lambda(n) for n <= M as a dense table.
std::vector<double> lambda_table(std::uint64_t M) {
    std::vector<double> lam(M + 1, 0.0);
    if (M < 2) return lam;
    for (std::uint64_t p : primes_up_to(M)) {
        double lp = std::log(static_cast<double>(p));
        for (std::uint64_t pk = p;; pk *= p) {
            lam[pk] = lp;
            if (pk > M / p) break;
        }
    }
    return lam;
}

// Inner n-loop: sum over n in [1, n_hi] with m*n = f (mod d) of w(n) e(l m n theta).
template <class Weight>
std::complex<double> congruence_inner(std::uint64_t m, std::uint64_t n_hi, const APClass& ap,
                                      const Phase128& ph, std::uint64_t l, Weight w,
                                      std::uint64_t n_lo = 1) {
    std::uint64_t start = n_lo, step = 1;
    if (ap.d > 1) {
        if (std::gcd(m, ap.d) != 1) return {0.0, 0.0};
        std::uint64_t res = (ap.f % ap.d) * mod_inverse(m % ap.d, ap.d) % ap.d;
        if (res == 0) res = ap.d;  // n = 0 (mod d) enters at n = d, 2d, ...
        start = n_lo <= res ? res : res + ((n_lo - res + ap.d - 1) / ap.d) * ap.d;
        step = ap.d;
    }
    KahanComplex acc;
    for (std::uint64_t n = start; n <= n_hi; n += step) {
        double weight = w(n);
        if (weight == 0.0) continue;
        std::complex<double> ech = ph.e(l * m * n);
        acc.add(weight * ech);
    }
    return acc.value();
}

}  // namespace

double phi1(std::uint64_t m, std::uint64_t U) {
    if (m < 1) throw PreconditionViolated("phi1 requires m >= 1");
    // sum over factorizations m = a*b with a <= U, b <= U
    std::vector<int8_t> mu = mobius_table(std::min(m, U));
    KahanSum acc;
    for (std::uint64_t a = 1; a <= std::min(m, U); ++a) {
        if (m % a || !mu[a]) continue;
        std::uint64_t b = m / a;
        if (b > U) continue;
        double lb = von_mangoldt(b);
        if (lb != 0.0) acc.add(static_cast<double>(mu[a]) * lb);
    }
    return acc.value();
}

double phi2(std::uint64_t m, std::uint64_t U) {
    if (m < 1) throw PreconditionViolated("phi2 requires m >= 1");
    long long acc = 0;
    std::vector<int8_t> mu = mobius_table(std::min<std::uint64_t>(m, U));
    for (std::uint64_t a = 1; a <= std::min(m, U); ++a)
        if (m % a == 0) acc += mu[a];
    return static_cast<double>(acc);
}

VaughanPieces vaughan_pieces(std::uint64_t N, std::uint64_t U, const APClass& ap,
                             const RealParam& theta, long long l) {
    if (N < 2) throw PreconditionViolated("vaughan_pieces requires N >= 2");
    if (U < 1 || U * U > N) throw PreconditionViolated("vaughan_pieces requires 1 <= U <= sqrt(N)");
    if (N > kVaughanCap)
        throw CapacityExceeded("exact Vaughan decomposition capped at N <= 10^6");
    std::uint64_t la = static_cast<std::uint64_t>(l < 0 ? -l : l);
    Phase128 ph = Phase128::of(
        theta, checked_multiplier(static_cast<unsigned __int128>(std::max<std::uint64_t>(la, 1)) * N));

    std::uint64_t M = N / U;  // range of the phi2 / Lambda variable
    std::vector<int8_t> mu = mobius_table(U * U);
    std::vector<double> lam = lambda_table(std::max(M, U * U));

    // phi1 over [1, U^2], phi2 over [1, M]
    std::vector<double> phi1_tab(U * U + 1, 0.0);
    for (std::uint64_t a = 1; a <= U; ++a) {
        if (!mu[a]) continue;
        double ma = static_cast<double>(mu[a]);
        for (std::uint64_t b = 2; b <= U; ++b)
            if (lam[b] != 0.0) phi1_tab[a * b] += ma * lam[b];
    }
    std::vector<double> phi2_tab(M + 1, 0.0);
    for (std::uint64_t a = 1; a <= std::min(U, M); ++a) {
        if (!mu[a]) continue;
        for (std::uint64_t mm = a; mm <= M; mm += a) phi2_tab[mm] += mu[a];
    }

    VaughanPieces out;
    out.residual_cap = 1.04 * static_cast<double>(U);

    // S1 = sum_{m<=U} mu(m) sum_{n<=N/m} log(n) e(l m n theta)
    KahanComplex s1;
    for (std::uint64_t m = 1; m <= U; ++m) {
        if (!mu[m]) continue;
        std::complex<double> inner = congruence_inner(
            m, N / m, ap, ph, la, [](std::uint64_t n) { return std::log(static_cast<double>(n)); });
        s1.add(static_cast<double>(mu[m]) * inner);
    }
    out.s1 = s1.value();

    // S2 = sum_{m<=U^2} phi1(m) sum_{n<=N/m} e(l m n theta)
    KahanComplex s2;
    for (std::uint64_t m = 2; m <= U * U && m <= N; ++m) {
        if (phi1_tab[m] == 0.0) continue;
        std::complex<double> inner =
            congruence_inner(m, N / m, ap, ph, la, [](std::uint64_t) { return 1.0; });
        s2.add(phi1_tab[m] * inner);
    }
    out.s2 = s2.value();

    // S3 = sum_{U<m<=N/U} phi2(m) sum_{U<n<=N/m} Lambda(n) e(l m n theta),
    // split at m = sqrt(N) into S31/S32, each in dyadic blocks.
    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(N)));
    while (root * root > N) --root;
    while ((root + 1) * (root + 1) <= N) ++root;
    {
        KahanComplex block;
        std::uint64_t block_end = 2 * U;
        for (std::uint64_t m = U + 1; m <= root; ++m) {
            if (phi2_tab[m] != 0.0) {
                std::complex<double> inner = congruence_inner(
                    m, N / m, ap, ph, la, [&](std::uint64_t n) { return lam[n]; }, U + 1);
                block.add(phi2_tab[m] * inner);
            }
            if (m == root || m == block_end) {
                out.s31_dyadic.push_back(block.value());
                block = KahanComplex{};
                block_end *= 2;
            }
        }
    }
    KahanComplex s31;
    for (const auto& b : out.s31_dyadic) s31.add(b);
    out.s31 = s31.value();
    {
        // m > sqrt(N) forces n <= N/m < sqrt(N); iterate n outside for dyadics
        KahanComplex block;
        std::uint64_t block_end = 2 * U;
        for (std::uint64_t n = U + 1; n <= root; ++n) {
            if (lam[n] != 0.0) {
                std::complex<double> v = congruence_inner(
                    n, N / n, ap, ph, la, [&](std::uint64_t mm) { return phi2_tab[mm]; },
                    root + 1);
                block.add(lam[n] * v);
            }
            if (n == root || n == block_end) {
                out.s32_dyadic.push_back(block.value());
                block = KahanComplex{};
                block_end *= 2;
            }
        }
    }
    KahanComplex s32;
    for (const auto& b : out.s32_dyadic) s32.add(b);
    out.s32 = s32.value();

    // the full inner sum and the exact n <= U head
    LambdaSupport support = LambdaSupport::build(N, ap);
    out.inner = inner_sum(support, ph, static_cast<long long>(la));
    KahanComplex head;
    for (std::size_t i = 0; i < support.n.size() && support.n[i] <= U; ++i)
        head.add(support.logp[i] * ph.e(la * support.n[i]));
    out.head = head.value();
    out.residual = out.inner - (out.s1 - out.s2 - out.s31 - out.s32);

    if (l < 0) {  // everything conjugates coherently
        auto conj_all = [](std::complex<double>& z) { z = std::conj(z); };
        conj_all(out.inner);
        conj_all(out.s1);
        conj_all(out.s2);
        conj_all(out.s31);
        conj_all(out.s32);
        conj_all(out.residual);
        conj_all(out.head);
        for (auto& z : out.s31_dyadic) conj_all(z);
        for (auto& z : out.s32_dyadic) conj_all(z);
    }
    return out;
}

GeomSum ap_geometric_sum(std::uint64_t x, std::uint64_t x_prime, const APClass& ap,
                         const RealParam& theta) {
    if (x >= x_prime) throw PreconditionViolated("ap_geometric_sum requires x < x'");
    GeomSum out;
    // first term m0 > x with m0 = f (mod d); count terms <= x'
    std::uint64_t d = ap.d, f = ap.d == 1 ? 0 : ap.f;
    std::uint64_t m0;
    if (d == 1) {
        m0 = x + 1;
    } else {
        m0 = (x / d) * d + f;
        if (m0 <= x) m0 += d;
    }
    if (m0 > x_prime) {
        out.value = {0.0, 0.0};
        out.terms = 0;
        out.bound = static_cast<double>(x_prime) / static_cast<double>(d) + 1.0;
        return out;
    }
    std::uint64_t cnt = (x_prime - m0) / d + 1;
    out.terms = cnt;

    // phases from a high-precision rational midpoint; exact for rational theta
    Interval enc = theta.enclosure(192);
    mpq_class th = enc.mid();
    auto frac_nearest = [&](const mpq_class& v) {  // reduce to [-1/2, 1/2)
        mpq_class r = v;
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
        r -= fl;
        if (r >= mpq_class(1, 2)) r -= 1;
        return r.get_d();
    };
    double yd = frac_nearest(mpq_class(d) * th);
    double norm_dtheta = std::abs(yd);
    double count_bound = static_cast<double>(x_prime) / static_cast<double>(d) + 1.0;
    out.bound = (norm_dtheta == 0.0) ? count_bound
                                     : std::min(count_bound, 1.0 / norm_dtheta);

    auto e_of = [](double t) { return std::complex<double>(std::cos(kTwoPi * t), std::sin(kTwoPi * t)); };
    double phase0 = frac_nearest(mpq_class(m0) * th);
    if (yd == 0.0) {  // ratio 1: plain count
        out.value = static_cast<double>(cnt) * e_of(phase0);
        return out;
    }
    // (e(cnt d theta) - 1) / (e(d theta) - 1), each factored as 2i sin(pi t) e(t/2)
    double yc = frac_nearest(mpq_class(cnt) * mpq_class(d) * th);
    std::complex<double> num = 2.0 * std::sin(std::numbers::pi * yc) * e_of(yc / 2.0);
    std::complex<double> den = 2.0 * std::sin(std::numbers::pi * yd) * e_of(yd / 2.0);
    out.value = e_of(phase0) * (num / den);
    return out;
}

MinsumsReport vinogradov_minsums(std::uint64_t X, std::uint64_t Y, const RationalApprox& approx,
                                 const RealParam& alpha) {
    if (X < 1 || Y < 1) throw PreconditionViolated("vinogradov_minsums requires X, Y >= 1");
    if (approx.q < 1) throw PreconditionViolated("approximation denominator must be >= 1");
    Phase128 ph = Phase128::of(alpha, X);
    MinsumsReport r;
    KahanSum lhs1, lhs2;
    double XY = static_cast<double>(X) * static_cast<double>(Y);
    for (std::uint64_t x = 1; x <= X; ++x) {
        double fx = ph.frac(x);
        double dist = std::min(fx, 1.0 - fx);
        double inv = dist > 0.0 ? 1.0 / dist : std::numeric_limits<double>::infinity();
        lhs1.add(std::min(static_cast<double>(Y), inv));
        lhs2.add(std::min(XY / static_cast<double>(x), inv));
    }
    r.lhs1 = lhs1.value();
    r.lhs2 = lhs2.value();
    double q = approx.q.get_d();
    double Xd = static_cast<double>(X);
    r.rhs1 = XY / q + (Xd + q) * std::log(2.0 * q);
    r.rhs2 = XY / q + (Xd + q) * std::log(2.0 * XY * q);
    r.ratio1 = r.lhs1 / r.rhs1;
    r.ratio2 = r.lhs2 / r.rhs2;
    return r;
}

double bilinear_S(std::uint64_t X, std::uint64_t W, std::uint64_t L, const APClass& ap,
                  const RealParam& theta, const std::function<double(std::uint64_t)>& phi,
                  const std::function<double(std::uint64_t)>& psi, std::uint64_t N_cut) {
    if (X < 1 || W < 1 || L < 1) throw PreconditionViolated("bilinear_S requires X, W, L >= 1");
    Phase128 ph = Phase128::of(theta, L * 2 * X * W);

    // collect the (u, v) support with weights once
    std::vector<std::uint64_t> prod;
    std::vector<double> weight;
    for (std::uint64_t v = X + 1; v <= 2 * X; ++v) {
        double pv = psi(v);
        if (pv == 0.0) continue;
        std::uint64_t u_hi = std::min(W, N_cut / v);
        if (ap.d == 1) {
            for (std::uint64_t u = 1; u <= u_hi; ++u) {
                double w = phi(u) * pv;
                if (w != 0.0) {
                    prod.push_back(u * v);
                    weight.push_back(w);
                }
            }
        } else {
            if (std::gcd(v, ap.d) != 1) continue;
            std::uint64_t res = (ap.f % ap.d) * mod_inverse(v % ap.d, ap.d) % ap.d;
            if (res == 0) res = ap.d;
            for (std::uint64_t u = res; u <= u_hi; u += ap.d) {
                double w = phi(u) * pv;
                if (w != 0.0) {
                    prod.push_back(u * v);
                    weight.push_back(w);
                }
            }
        }
    }
    KahanSum total;
    // l = 0 term (Lemma 6 sums |l| <= L), then conjugate pairs
    KahanSum zero;
    for (double w : weight) zero.add(w);
    total.add(std::abs(zero.value()));
    for (std::uint64_t l = 1; l <= L; ++l) {
        KahanComplex acc;
        for (std::size_t i = 0; i < prod.size(); ++i) acc.add(weight[i] * ph.e(l * prod[i]));
        total.add(2.0 * std::abs(acc.value()));
    }
    return total.value();
}

double typeII_bound(std::uint64_t X, std::uint64_t W, std::uint64_t L, std::uint64_t d,
                    const mpz_class& q, double T, double F, double eps) {
    double Xd = static_cast<double>(X), Wd = static_cast<double>(W), Ld = static_cast<double>(L);
    double dd = static_cast<double>(d), qd = q.get_d();
    double main = Ld * Wd * std::sqrt(Xd) / std::sqrt(dd);
    double fudge = std::pow(Ld * Xd * dd, eps);
    double tail = Ld * Xd * Wd / std::sqrt(qd) + Ld * Xd * std::sqrt(Wd) * std::sqrt(dd) +
                  std::sqrt(Ld) * std::sqrt(qd) * std::sqrt(Xd) * std::sqrt(Wd);
    return T * F * (main + fudge * tail);
}

double typeI_bound(std::uint64_t X, std::uint64_t W, std::uint64_t L, std::uint64_t d,
                   const mpz_class& q, double F, double eps) {
    double Xd = static_cast<double>(X), Wd = static_cast<double>(W), Ld = static_cast<double>(L);
    double dd = static_cast<double>(d), qd = q.get_d();
    return F * std::pow(Ld * Xd * dd, eps) * (Ld * Xd * Wd / qd + Ld * Xd * dd + qd);
}

Prop2Bound prop2_bound(std::uint64_t N, std::uint64_t L, const mpz_class& q, std::uint64_t d,
                       double eps) {
    Prop2Bound b;
    double Nd = static_cast<double>(N), Ld = static_cast<double>(L);
    double qd = q.get_d(), dd = static_cast<double>(d);
    double sum = Nd * Ld / std::sqrt(qd) + std::sqrt(Ld) * std::sqrt(Nd) * std::sqrt(qd) +
                 Ld * std::pow(Nd, 0.75) * std::sqrt(dd) + Ld * std::pow(Nd, 0.8) / std::pow(dd, 0.2);
    b.formula = std::pow(Nd * Ld, eps) * sum;
    b.trivial = Ld * Nd / dd;
    b.value = std::min(b.formula, b.trivial);
    return b;
}

double prop1_bound(std::uint64_t N, std::uint64_t L, const mpz_class& q, unsigned k, double eps) {
    if (k < 2) throw PreconditionViolated("prop1_bound requires k >= 2");
    double gamma = std::pow(4.0, 1.0 - static_cast<double>(k));
    double Nd = static_cast<double>(N), Ld = static_cast<double>(L), qd = q.get_d();
    double inner = 1.0 / qd + 1.0 / std::sqrt(Nd) +
                   qd * std::pow(Nd, -static_cast<double>(k)) / Ld;
    return std::pow(Nd * Ld, 1.0 + eps) * std::pow(inner, gamma);
}

ParamChoice choose_params(ParamKind kind, std::uint64_t N, const mpz_class& q, std::uint64_t d,
                          unsigned k) {
    ParamChoice c;
    double Nd = static_cast<double>(N), qd = q.get_d(), dd = static_cast<double>(d);
    switch (kind) {
        case ParamKind::L_thm1: {
            if (k < 2) throw PreconditionViolated("L_thm1 requires k >= 2");
            double gamma = std::pow(4.0, 1.0 - static_cast<double>(k));
            c.exact = std::pow(qd, -gamma / (1.0 - gamma)) *
                      std::pow(Nd, static_cast<double>(k) * gamma / (1.0 - gamma));
            break;
        }
        case ParamKind::L_thm3:
            c.exact = Nd / (qd * dd * dd);
            break;
        case ParamKind::U_prop2:
            c.exact = std::pow(Nd, 0.4) / std::pow(dd, 0.6);
            break;
    }
    double fl = std::floor(c.exact + 1e-9);  // absorb double noise on exact integer values
    c.value = fl < 1.0 ? 1 : static_cast<std::uint64_t>(fl);
    return c;
}

ExpSumReport expsum_report(const ExpSumSpec& spec, std::uint64_t U, double eps,
                           unsigned threads) {
    ExpSumReport r;
    r.N = spec.N;
    r.L = spec.L;
    r.d = spec.ap.d;
    r.f = spec.ap.f;
    r.include_l0 = spec.include_l0;
    r.theta = spec.theta.str();
    r.eps = eps;

    mpz_class Q = isqrt(mpz_class(spec.N));
    if (Q < 1) Q = 1;
    r.q = dirichlet_approx(spec.theta, Q).q;

    if (U == 0) {
        U = choose_params(ParamKind::U_prop2, spec.N, r.q, spec.ap.d, 2).value;
        std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(spec.N)));
        U = std::max<std::uint64_t>(1, std::min(U, root));
    }
    r.U = U;

    r.direct = s_theta(spec, threads);
    KahanSum s1p, s2p, s31p, s32p, resid;
    for (std::uint64_t l = 1; l <= spec.L; ++l) {
        VaughanPieces vp = vaughan_pieces(spec.N, U, spec.ap, spec.theta, static_cast<long long>(l));
        s1p.add(2.0 * std::abs(vp.s1));
        s2p.add(2.0 * std::abs(vp.s2));
        s31p.add(2.0 * std::abs(vp.s31));
        s32p.add(2.0 * std::abs(vp.s32));
        resid.add(2.0 * std::abs(vp.head));
    }
    r.s1p = s1p.value();
    r.s2p = s2p.value();
    r.s31p = s31p.value();
    r.s32p = s32p.value();
    r.residual = resid.value();

    Prop2Bound b = prop2_bound(spec.N, spec.L, r.q, spec.ap.d, eps);
    r.bound_formula = b.formula;
    r.bound_trivial = b.trivial;
    r.bound = b.value;
    r.ratio = r.bound > 0 ? r.direct / r.bound : 0.0;
    return r;
}

}  // namespace beattylab
