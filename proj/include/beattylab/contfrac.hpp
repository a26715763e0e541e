#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <utility>
#include <vector>

#include "beattylab/realparam.hpp"

namespace beattylab {

// Regular continued fraction [a0; a1, a2, ...] with convergents p_n/q_n,
// p_0/q_0 = a0/1 and p_n = a_n p_{n-1} + p_{n-2}.
struct ContinuedFraction {
    std::vector<mpz_class> quotients;
    std::vector<std::pair<mpz_class, mpz_class>> convergents;

    // Build convergents from quotients (used by synthetic expansions).
    static ContinuedFraction from_quotients(std::vector<mpz_class> quotients);
    // Exact rational value of the full expansion.
    mpq_class value() const;
};

struct RationalApprox {
    mpz_class a;
    mpz_class q;  // > 0, gcd(a, q) = 1
};

struct TypeSample {
    mpz_class q;     // convergent denominator
    double exponent; // -log ||q x|| / log q
};

struct TypeEstimate {
    double t_lower = 1.0;
    std::vector<TypeSample> samples;
};

// First `count` partial quotients plus convergents. Surds use the exact
// periodic P,Q recurrence so any count is reachable; intervals run the
// certified Gauss map and throw PrecisionExhausted when a quotient cannot
// be pinned. Rationals terminate; asking past the end throws
// InsufficientConvergents.
ContinuedFraction cf_expand(const RealParam& x, std::size_t count);

// a/q with 1 <= q <= Q and |x - a/q| <= 1/(qQ): the last convergent with
// denominator <= Q.
RationalApprox dirichlet_approx(const RealParam& x, const mpz_class& Q);

// Empirical lower bound for the irrationality type from the first n_max
// convergents. Reported as t_lower, never as t: the sup in the definition
// is not computable from finite data.
TypeEstimate type_estimate(const RealParam& x, std::size_t n_max);

// The unique m with p_m <= alpha^{(1+gamma)/gamma} * B < p_{m+1}, indices
// into cf.convergents (p_0 = first numerator). cf is the expansion of
// whatever base the caller's theorem names (alpha/a_k or alpha itself).
std::size_t select_m(const RealParam& alpha, const RealParam& B, const mpq_class& gamma,
                     const ContinuedFraction& cf);

// Shared helper: the unique m with p_m <= threshold < p_{m+1} for a
// certified threshold enclosure.
std::size_t bracket_index(const std::vector<std::pair<mpz_class, mpz_class>>& convergents,
                          const Interval& threshold);

// Certified enclosure of x^(num/den) for x > 0, den >= 1.
Interval pow_rational(const RealParam& x, const mpz_class& num, const mpz_class& den,
                      unsigned prec_bits);

}  // namespace beattylab
