#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "beattylab/realparam.hpp"

namespace beattylab {

// The pair (alpha, beta) of B(alpha, beta) = { floor(n*alpha + beta) : n >= 1 }.
struct BeattyParams {
    RealParam alpha;
    RealParam beta;
    bool alpha_certified_irrational = false;

    BeattyParams(RealParam a, RealParam b);
};

// Membership of m in B(alpha, beta) by the fractional-part criterion
// || m/alpha + (1-2 beta)/(2 alpha) || < 1/(2 alpha) together with the
// threshold m > alpha + beta - 1. Strict inequality at the boundary.
bool is_member(const mpz_class& m, const BeattyParams& params);

// Direct witness test: n = ceil((m - beta)/alpha), member iff
// floor(n*alpha + beta) == m. Independent oracle for is_member.
bool member_witness(const mpz_class& m, const BeattyParams& params);

// Stream members <= N in increasing order (duplicates collapsed).
void for_each_member(const mpz_class& N, const BeattyParams& params,
                     const std::function<void(const mpz_class&)>& fn);

// All members <= N in increasing order.
std::vector<mpz_class> enumerate_members(const mpz_class& N, const BeattyParams& params);

// Indicator of ||theta|| < delta, decided exactly for surds.
int chi_delta(const RealParam& theta, const mpq_class& delta);

// Two-sided trigonometric approximation of chi_delta of degree L:
//   lower(t) = 2 delta - 1/(L+1) + sum_{1<=|l|<=L} c_minus[l] e(l t)
//   upper(t) = 2 delta + 1/(L+1) + sum_{1<=|l|<=L} c_plus[l] e(l t)
// with lower <= chi <= upper pointwise and
// |c[l]| <= min(2 delta + 1/(L+1), 3/(2l)). Coefficients are real and even
// in l (c(-l) = c(l)). Selberg majorant/minorant built from the Vaaler
// sawtooth polynomial plus a Fejer-kernel correction; both properties are
// validated on a 10^4-point grid at construction.
struct SandwichPolys {
    mpq_class delta;
    std::size_t L = 1;
    std::vector<double> c_minus;  // c_minus[l-1] is the coefficient of e(l t)
    std::vector<double> c_plus;

    double lower(double theta) const;
    double upper(double theta) const;
    double lower_const() const;  // 2 delta - 1/(L+1), the exact mean of lower
    double upper_const() const;
};

SandwichPolys sandwich_polys(const mpq_class& delta, std::size_t L);

// Validation grid shared by construction and the acceptance suite:
// 10^4 midpoints of [0,1) plus the eight points +-delta +- 1e-9 (mod 1).
std::vector<mpq_class> sandwich_validation_grid(const mpq_class& delta);

// Extreme discrepancy of a point set in [0,1): sup over subintervals I of
// |V(I,M)/M - |I||, realized at sample points (sorted two-sided formula).
double discrepancy(std::vector<double> points);

}  // namespace beattylab
