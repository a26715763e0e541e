#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "beattylab/contfrac.hpp"
#include "beattylab/primes.hpp"
#include "beattylab/realparam.hpp"

namespace beattylab {

// Fixed-point fractional multiplier: frac(theta) rounded to 128 bits.
// Products m * u wrap mod 2^128, which is exactly reduction mod 1, so the
// phase of m*theta carries error below m * 2^-128 (~1e-20 for m <= 2^62).
// Shifting theta by an integer leaves the engine bit-identical.
class Phase128 {
  public:
    static Phase128 of(const RealParam& theta, std::uint64_t max_multiplier);
    double frac(std::uint64_t m) const {
        unsigned __int128 prod = u_ * static_cast<unsigned __int128>(m);
        return static_cast<double>(static_cast<std::uint64_t>(prod >> 64)) * 0x1p-64;
    }
    std::complex<double> e(std::uint64_t m) const;

  private:
    unsigned __int128 u_ = 0;
};

struct ExpSumSpec {
    std::uint64_t N = 2;
    std::uint64_t L = 1;
    APClass ap;
    RealParam theta;
    bool include_l0 = false;  // Eqs. (2)/(6) sum 1 <= |l| <= L; flag adds l = 0
};

// Prime powers n <= N with n = f (mod d), ascending, with their log p.
struct LambdaSupport {
    std::vector<std::uint64_t> n;
    std::vector<double> logp;
    static LambdaSupport build(std::uint64_t N, const APClass& ap);
};

// sum over n <= N, n = f (d), of Lambda(n) e(l n theta).
std::complex<double> inner_sum(std::uint64_t N, const APClass& ap, const RealParam& theta,
                               long long l);
std::complex<double> inner_sum(const LambdaSupport& support, const Phase128& ph, long long l);

// S(theta) = sum over 1 <= |l| <= L (plus l = 0 when include_l0) of
// |inner_sum(l)|. Conjugate symmetry folds the sum to 2 * sum_{l>=1}.
double s_theta(const ExpSumSpec& spec, unsigned threads = 1);

// Vaughan decomposition of one inner sum: inner = S1 - S2 - S3 + head,
// head = sum_{n <= U} Lambda(n) e(l n theta) with |head| <= 1.04 U.
struct VaughanPieces {
    std::complex<double> inner, s1, s2, s31, s32;
    std::vector<std::complex<double>> s31_dyadic;  // m in (U 2^t, U 2^(t+1)]
    std::vector<std::complex<double>> s32_dyadic;  // n in (U 2^t, ...]
    std::complex<double> residual;  // inner - (s1 - s2 - s31 - s32)
    std::complex<double> head;      // the exact n <= U sum
    double residual_cap = 0;        // 1.04 * U
};

VaughanPieces vaughan_pieces(std::uint64_t N, std::uint64_t U, const APClass& ap,
                             const RealParam& theta, long long l);

// phi1(m) = sum_{ab=m, a<=U, b<=U} mu(a) Lambda(b), |phi1(m)| <= log m.
double phi1(std::uint64_t m, std::uint64_t U);
// phi2(m) = sum_{a|m, a<=U} mu(a), |phi2(m)| <= d_2(m).
double phi2(std::uint64_t m, std::uint64_t U);

// sum_{x < m <= x', m = f (d)} e(m theta) in closed form, plus the
// min(x'/d + 1, ||theta d||^{-1}) bound it is tested against.
struct GeomSum {
    std::complex<double> value;
    double bound = 0;
    std::uint64_t terms = 0;
};
GeomSum ap_geometric_sum(std::uint64_t x, std::uint64_t x_prime, const APClass& ap,
                         const RealParam& theta);

// LHS1 = sum_{x<=X} min(Y, ||alpha x||^{-1})    vs  XY/q + (X+q) log 2q
// LHS2 = sum_{x<=X} min(XY/x, ||alpha x||^{-1}) vs  XY/q + (X+q) log(2XYq)
struct MinsumsReport {
    double lhs1 = 0, lhs2 = 0, rhs1 = 0, rhs2 = 0;
    double ratio1 = 0, ratio2 = 0;
};
MinsumsReport vinogradov_minsums(std::uint64_t X, std::uint64_t Y, const RationalApprox& approx,
                                 const RealParam& alpha);

// S = sum_{|l|<=L} | sum_{X<v<=2X} sum_{u<=W, uv<=N_cut, uv=f(d)}
//       phi(u) psi(v) e(l u v theta) |
double bilinear_S(std::uint64_t X, std::uint64_t W, std::uint64_t L, const APClass& ap,
                  const RealParam& theta, const std::function<double(std::uint64_t)>& phi,
                  const std::function<double(std::uint64_t)>& psi, std::uint64_t N_cut);

// T F (L W X^(1/2) / d^(1/2) + (LXd)^eps (LXW/q^(1/2) + LXW^(1/2)d^(1/2)
//      + L^(1/2) q^(1/2) X^(1/2) W^(1/2)))
double typeII_bound(std::uint64_t X, std::uint64_t W, std::uint64_t L, std::uint64_t d,
                    const mpz_class& q, double T, double F, double eps);

// F (LXd)^eps (L X W q^{-1} + L X d + q)
double typeI_bound(std::uint64_t X, std::uint64_t W, std::uint64_t L, std::uint64_t d,
                   const mpz_class& q, double F, double eps);

struct Prop2Bound {
    double formula = 0;  // (NL)^eps (NL/q^(1/2) + ... )
    double trivial = 0;  // L N / d
    double value = 0;    // min of the two
};
Prop2Bound prop2_bound(std::uint64_t N, std::uint64_t L, const mpz_class& q, std::uint64_t d,
                       double eps);

// (NL)^(1+eps) (q^{-1} + N^{-1/2} + q N^{-k} L^{-1})^gamma, gamma = 4^(1-k)
double prop1_bound(std::uint64_t N, std::uint64_t L, const mpz_class& q, unsigned k, double eps);

enum class ParamKind { L_thm1, L_thm3, U_prop2 };

struct ParamChoice {
    std::uint64_t value = 1;  // rounded down, floored at 1
    double exact = 0;         // the formula before rounding
};
ParamChoice choose_params(ParamKind kind, std::uint64_t N, const mpz_class& q, std::uint64_t d,
                          unsigned k);

// Full report for the CLI: direct value, Vaughan pieces aggregated over l,
// Prop. 2 bound and the measured ratio.
struct ExpSumReport {
    std::uint64_t N = 0, L = 0, d = 1, f = 0, U = 0;
    std::string theta;
    mpz_class q;
    bool include_l0 = false;
    double direct = 0;
    double s1p = 0, s2p = 0, s31p = 0, s32p = 0;  // sum_{1<=|l|<=L} |piece_l|
    double residual = 0;                          // sum_{1<=|l|<=L} |head_l|
    double bound_formula = 0, bound_trivial = 0, bound = 0;
    double ratio = 0;
    double eps = 0;
};

ExpSumReport expsum_report(const ExpSumSpec& spec, std::uint64_t U, double eps,
                           unsigned threads = 1);

}  // namespace beattylab
