#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "beattylab/beatty.hpp"
#include "beattylab/contfrac.hpp"
#include "beattylab/expsums.hpp"
#include "beattylab/primes.hpp"

namespace beattylab {

// g(x) = a_0 + a_1 x + ... + a_k x^k with integer coefficients, k >= 2,
// a_k >= 1. gamma = 4^(1-k).
struct IntPolynomial {
    std::vector<mpz_class> coeffs;  // a_0 ... a_k

    explicit IntPolynomial(std::vector<mpz_class> c);
    static IntPolynomial parse(const std::string& text);  // "1,0,2" = 1 + 2x^2

    unsigned degree() const { return static_cast<unsigned>(coeffs.size() - 1); }
    mpq_class gamma() const;  // 4^(1-k)
    const mpz_class& leading() const { return coeffs.back(); }
    // Horner evaluation; values above 2^127 raise CapacityExceeded.
    mpz_class eval(const mpz_class& x) const;
    std::string str() const;
};

struct TheoremReport {
    double lhs = 0;              // sum of log p over matching primes
    double main_term = 0;        // theta(N)/alpha or theta(N;d,f)/alpha
    double error = 0;            // lhs - main_term
    double rel_deviation = 0;    // |error| / main_term
    double predicted_bound = 0;  // the theorem's error expression at eps
    // parameter echo
    std::uint64_t N = 0;
    double eps = 0;
    mpz_class q;                 // denominator used in the bound
    mpz_class Q;                 // Dirichlet window N^{k t/(t+1)} or N^{t/(t+1)}
    double t_lower = 1.0;        // empirical type lower bound standing in for t
    std::uint64_t matched = 0;   // primes counted into lhs
    double small_m_cutoff = 0;   // alpha + beta - 1; members below it bypass
                                 // the norm criterion regime
    double psi_theta_gap = 0;    // prime-power correction reported separately
    bool prime_powers = false;   // lhs over primes only (default) or powers
};

// Theorem 1 harness: lhs = sum_{p <= N, g(p) in B} log p against theta(N)/alpha.
// With prime_powers the lhs runs over p^nu <= N weighted log p (the Lambda
// form) and the main term becomes psi(N)/alpha; default matches the theorem
// statement (primes only), with the psi-theta gap reported either way.
TheoremReport thm1_experiment(const IntPolynomial& g, const BeattyParams& params,
                              std::uint64_t N, double eps, unsigned threads = 1,
                              bool prime_powers = false);

// Least-prime bound of Theorem 2 evaluated at user-supplied l.
struct Thm2Bound {
    double bound = 0;
    std::size_t m = 0;
    mpz_class p_m, p_m_plus_l;
    double N_choice = 0, q_choice = 0, eta = 0;
    // smallest l making the proof's inequality chain hold with the measured
    // Prop. 1 constant; empty when no l <= 64 works
    std::optional<unsigned> l_min_measured;
    double exp_alpha = 0, exp_B = 0, exp_p = 0;  // the three exponents at this eps
};

Thm2Bound thm2_bound(const IntPolynomial& g, const BeattyParams& params, unsigned l, double eps);

// Smallest prime p <= cap with g(p) in B(alpha, beta).
mpz_class least_prime_search(const IntPolynomial& g, const BeattyParams& params,
                             std::uint64_t cap);

// Theorem 3 harness: primes p <= N, p in B, p = f (mod d).
TheoremReport thm3_experiment(const BeattyParams& params, const APClass& ap, std::uint64_t N,
                              double eps, unsigned threads = 1, bool prime_powers = false);

// The bare lhs of Theorem 3 (sum of log p over p <= N, p = f (d), p in B)
// without the theorem's parameter preconditions; the residue-sum identity
// is a statement about these sums alone.
double thm3_lhs(const BeattyParams& params, const APClass& ap, std::uint64_t N,
                unsigned threads = 1, std::uint64_t* matched = nullptr);

struct Remark1Bound {
    double bound = 0;
    std::size_t m = 0;
    mpz_class p_m, p_m_plus_l;
    double exp_alpha = 0, exp_B = 0, exp_d = 0, exp_p = 0;
};

// Remark 1 least-prime bound for p in B, p = f (mod d), d <= 500. The
// continued fraction here is the expansion of alpha itself.
Remark1Bound remark1_bound(const BeattyParams& params, const APClass& ap, unsigned l,
                           double eps);

// Exponent tuples for the bound evaluators (acceptance checks them at eps=0).
void thm2_exponents(unsigned k, double eps, double& e_alpha, double& e_B, double& e_p);
void remark1_exponents(double eps, double& e_alpha, double& e_B, double& e_d, double& e_p);

// B = max(1, beta).
RealParam beatty_B(const BeattyParams& params);

}  // namespace beattylab
