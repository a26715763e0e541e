#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "beattylab/errors.hpp"

namespace beattylab {

// Neumaier-compensated accumulator; deterministic for a fixed add order.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

// Residue class f (mod d); d = 1 means no restriction.
struct APClass {
    std::uint64_t d = 1;
    std::uint64_t f = 0;
    APClass() = default;
    APClass(std::uint64_t d_, std::uint64_t f_);
    bool matches(std::uint64_t n) const { return d == 1 || n % d == f; }
};

// Exact primality flags over [lo, hi], segmented construction.
class PrimeTable {
  public:
    static PrimeTable build(std::uint64_t lo, std::uint64_t hi);

    std::uint64_t lo() const { return lo_; }
    std::uint64_t hi() const { return hi_; }
    bool is_prime(std::uint64_t n) const {
        if (n < lo_ || n > hi_) throw PreconditionViolated("value outside sieved window");
        return bits_[(n - lo_) >> 6] >> ((n - lo_) & 63) & 1;
    }
    std::uint64_t count() const;
    void for_each_prime(const std::function<void(std::uint64_t)>& fn) const;

  private:
    PrimeTable(std::uint64_t lo, std::uint64_t hi) : lo_(lo), hi_(hi) {}
    std::uint64_t lo_, hi_;
    std::vector<std::uint64_t> bits_;
};

// Simple prime list up to n inclusive.
std::vector<std::uint64_t> primes_up_to(std::uint64_t n);

// log p if n = p^nu, else 0. Trial division; fine for standalone queries,
// bulk sums enumerate prime powers instead.
double von_mangoldt(std::uint64_t n);

// theta(N; d, f) = sum of log p over p <= N, p = f (mod d).
double chebyshev_theta(std::uint64_t N, const APClass& ap = {}, unsigned threads = 1);

// psi(N; d, f) = sum of Lambda(n) over n <= N, n = f (mod d).
double chebyshev_psi(std::uint64_t N, const APClass& ap = {}, unsigned threads = 1);

// sum of log p over prime powers p^nu <= N with nu >= 2.
double prime_power_tail(std::uint64_t N);

struct ExplicitConstantsReport {
    std::uint64_t N = 0;
    double theta = 0, psi = 0, tail = 0;
    double theta_floor = 0;   // N - N/log N
    double psi_cap = 0;       // 1.04 N
    double tail_cap = 0;      // 1.0012 (sqrt(N) + N^(1/3))
    bool theta_ok = false, psi_ok = false, tail_ok = false;
    bool all_ok() const { return theta_ok && psi_ok && tail_ok; }
};

// Numeric verdicts for the explicit inequalities the bounds import:
// theta(N) > N - N/log N (N >= 41), psi(N) <= 1.04 N, and the prime-power
// tail <= 1.0012 (sqrt(N) + N^(1/3)).
ExplicitConstantsReport check_explicit_constants(std::uint64_t N);

// Mobius function on [1, n], mu[0] unused.
std::vector<int8_t> mobius_table(std::uint64_t n);

// Deterministic parallel reduction over fixed-size segments of [lo, hi]:
// partials are combined in segment order regardless of thread count.
void parallel_segments(std::uint64_t lo, std::uint64_t hi, std::uint64_t seg_size,
                       unsigned threads,
                       const std::function<void(std::uint64_t, std::uint64_t, std::size_t)>& work);

}  // namespace beattylab
