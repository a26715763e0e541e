#include "beattylab/primes.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

namespace beattylab {

APClass::APClass(std::uint64_t d_, std::uint64_t f_) : d(d_), f(f_) {
    if (d == 0) throw PreconditionViolated("modulus must be >= 1");
    if (d == 1) {
        f = 0;
        return;
    }
    if (!(1 <= f && f < d) || std::gcd(f, d) != 1)
        throw PreconditionViolated("f must satisfy 1 <= f < d, gcd(f,d)=1");
}

void parallel_segments(std::uint64_t lo, std::uint64_t hi, std::uint64_t seg_size,
                       unsigned threads,
                       const std::function<void(std::uint64_t, std::uint64_t, std::size_t)>& work) {
    if (hi < lo) return;
    std::size_t nseg = static_cast<std::size_t>((hi - lo) / seg_size) + 1;
    if (threads <= 1 || nseg == 1) {
        for (std::size_t s = 0; s < nseg; ++s) {
            std::uint64_t a = lo + s * seg_size;
            std::uint64_t b = std::min(hi, a + seg_size - 1);
            work(a, b, s);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    auto runner = [&] {
        for (;;) {
            std::size_t s = next.fetch_add(1);
            if (s >= nseg) return;
            std::uint64_t a = lo + s * seg_size;
            std::uint64_t b = std::min(hi, a + seg_size - 1);
            work(a, b, s);
        }
    };
    std::vector<std::thread> pool;
    unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(nseg));
    pool.reserve(n);
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(runner);
    for (auto& t : pool) t.join();
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    if (n < 2) return out;
    std::vector<char> is_prime(n + 1, 1);
    is_prime[0] = is_prime[1] = 0;
    for (std::uint64_t i = 2; i * i <= n; ++i)
        if (is_prime[i])
            for (std::uint64_t j = i * i; j <= n; j += i) is_prime[j] = 0;
    for (std::uint64_t i = 2; i <= n; ++i)
        if (is_prime[i]) out.push_back(i);
    return out;
}

PrimeTable PrimeTable::build(std::uint64_t lo, std::uint64_t hi) {
    if (lo < 2 || hi < lo) throw PreconditionViolated("sieve requires 2 <= lo <= hi");
    if (hi - lo >= (std::uint64_t(1) << 34))
        throw CapacityExceeded("sieve window exceeds memory budget");
    PrimeTable t(lo, hi);
    std::uint64_t len = hi - lo + 1;
    t.bits_.assign((len + 63) / 64, ~std::uint64_t(0));
    auto clear_bit = [&](std::uint64_t idx) {
        t.bits_[idx >> 6] &= ~(std::uint64_t(1) << (idx & 63));
    };
    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi)));
    while (root * root > hi) --root;
    while ((root + 1) * (root + 1) <= hi) ++root;
    std::vector<std::uint64_t> base = primes_up_to(root);
    for (std::uint64_t p : base) {
        std::uint64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
        for (std::uint64_t m = start; m <= hi; m += p) clear_bit(m - lo);
    }
    // mask out trailing bits beyond hi
    std::uint64_t tail = len & 63;
    if (tail) t.bits_.back() &= (std::uint64_t(1) << tail) - 1;
    return t;
}

std::uint64_t PrimeTable::count() const {
    std::uint64_t c = 0;
    for (std::uint64_t w : bits_) c += static_cast<std::uint64_t>(__builtin_popcountll(w));
    return c;
}

void PrimeTable::for_each_prime(const std::function<void(std::uint64_t)>& fn) const {
    for (std::size_t w = 0; w < bits_.size(); ++w) {
        std::uint64_t word = bits_[w];
        while (word) {
            unsigned b = static_cast<unsigned>(__builtin_ctzll(word));
            fn(lo_ + (static_cast<std::uint64_t>(w) << 6) + b);
            word &= word - 1;
        }
    }
}

double von_mangoldt(std::uint64_t n) {
    if (n < 2) return 0.0;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            std::uint64_t m = n;
            while (m % p == 0) m /= p;
            return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
        }
    }
    return std::log(static_cast<double>(n));  // n itself is prime
}

namespace {

constexpr std::uint64_t kSegment = 1 << 20;
constexpr std::uint64_t kSumCap = 200'000'000;  // keeps theta/psi under a second-scale budget

double theta_impl(std::uint64_t N, const APClass& ap, unsigned threads) {
    if (N < 2) return 0.0;
    if (N > kSumCap) throw CapacityExceeded("theta/psi beyond the documented cap");
    std::size_t nseg = static_cast<std::size_t>((N - 2) / kSegment) + 1;
    std::vector<KahanSum> partial(nseg);
    parallel_segments(2, N, kSegment, threads, [&](std::uint64_t a, std::uint64_t b, std::size_t s) {
        PrimeTable t = PrimeTable::build(a, b);
        KahanSum& acc = partial[s];
        t.for_each_prime([&](std::uint64_t p) {
            if (ap.matches(p)) acc.add(std::log(static_cast<double>(p)));
        });
    });
    KahanSum total;
    for (const KahanSum& s : partial) total.add(s.value());
    return total.value();
}

}  // namespace

double chebyshev_theta(std::uint64_t N, const APClass& ap, unsigned threads) {
    return theta_impl(N, ap, threads);
}

double chebyshev_psi(std::uint64_t N, const APClass& ap, unsigned threads) {
    if (N < 2) return 0.0;
    double theta = theta_impl(N, ap, threads);
    // prime powers p^nu <= N, nu >= 2: only p <= sqrt(N) contribute
    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(N)));
    while (root * root > N) --root;
    while ((root + 1) * (root + 1) <= N) ++root;
    KahanSum tail;
    for (std::uint64_t p : primes_up_to(root)) {
        double lp = std::log(static_cast<double>(p));
        for (std::uint64_t pk = p * p;; pk *= p) {
            if (ap.matches(pk)) tail.add(lp);
            if (pk > N / p) break;
        }
    }
    return theta + tail.value();
}

double prime_power_tail(std::uint64_t N) {
    return chebyshev_psi(N) - chebyshev_theta(N);
}

ExplicitConstantsReport check_explicit_constants(std::uint64_t N) {
    if (N < 41) throw PreconditionViolated("check_explicit_constants requires N >= 41");
    ExplicitConstantsReport r;
    r.N = N;
    r.theta = chebyshev_theta(N);
    r.psi = chebyshev_psi(N);
    r.tail = r.psi - r.theta;
    double dn = static_cast<double>(N);
    r.theta_floor = dn - dn / std::log(dn);
    r.psi_cap = 1.04 * dn;
    r.tail_cap = 1.0012 * (std::sqrt(dn) + std::cbrt(dn));
    r.theta_ok = r.theta > r.theta_floor;
    r.psi_ok = r.psi <= r.psi_cap;
    r.tail_ok = r.tail <= r.tail_cap;
    return r;
}

std::vector<int8_t> mobius_table(std::uint64_t n) {
    std::vector<int8_t> mu(n + 1, 1);
    std::vector<std::uint64_t> spf(n + 1, 0);  // smallest prime factor
    std::vector<std::uint64_t> primes;
    if (n >= 1) mu[0] = 0;
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (!spf[i]) {
            spf[i] = i;
            primes.push_back(i);
            mu[i] = -1;
        }
        for (std::uint64_t p : primes) {
            if (p > spf[i] || i * p > n) break;
            spf[i * p] = p;
            mu[i * p] = (p == spf[i]) ? 0 : -mu[i];
        }
    }
    return mu;
}

}  // namespace beattylab
