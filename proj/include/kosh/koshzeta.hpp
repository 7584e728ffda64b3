// The zeta pair attached to a Koshliakov sequence.
//
//   zeta_p(s) = sum_n w_n lambda_n^{-s}                   (Re s > 1)
//   eta_p(s)  = sum_k (s, 2 pi p k)_k k^{-s}                (Re s > 1)
//   (s, nu k)_k = Gamma(s)^{-1} int_0^inf x^{s-1} e^{-x} ((k nu - x)/(k nu + x))^k dx
//
// related by zeta_p(1 - s) = 2 cos(pi s/2) Gamma(s) (2 pi)^{-s} eta_p(s).
//
// zeta_p is continued to every s != 1 by the Euler-Maclaurin formula applied
// to t -> w(lambda(t)) lambda(t)^{-s}, where lambda(t) is the smooth root
// branch through the lambda_n.  Since d lambda/dt = w(lambda), the integral
// of the summand is elementary and the derivatives follow from Taylor jets
// in lambda.  eta_p is summed directly for Re s > 1 with its k-tail
// expanded asymptotically in powers of 1/k^2, and reflected otherwise.
#pragma once

#include "kosh/sequence.hpp"
#include "kosh/types.hpp"

namespace kosh {

struct KoshConstants {
    double c1 = 0.0;               // lim { sum_{j<n} w_j/lambda_j - log lambda_n }
    double c2 = 0.0;               // lim { sum_{k<n} (1, 2 pi p k)_k / k - ifac log n }
    double gamma_p = 0.0;          // constant of the generalized Entry 3.3.3
    double q0 = 0.0;               // Q_{2 pi p}(0) = E_1(2 pi p); 0 for both limit shapes
    double zeta_prime0 = 0.0;      // zeta_p'(0)
    double eta_laurent_const = 0.0;  // eta_p(s) = ifac/(s-1) + eta_laurent_const + O(s-1)
};

// Mellin quadrature of (s, nu k)_k (Re s > 0).
cplx kosh_coeff(cplx s, int k, double nu, const QuadratureSpec& q);
// Same coefficient through the fractional-integral (Laguerre) representation
//   (-1)^k [1 - 2 k nu int_0^inf (1+u)^{-s} e^{-k nu u} L^{(1)}_{k-1}(2 k nu u) du].
cplx kosh_coeff_fractional(cplx s, int k, double nu, const QuadratureSpec& q);
// Coefficients c_r(s) of the large-k expansion (s, nu k)_k ~ sum_r c_r(s) k^{-2r}.
std::vector<cplx> kosh_coeff_asymptotic(cplx s, double nu, int R);

// Direct weighted series for Re s > 1: partial sum over the cached roots with
// the remaining tail summed by Euler-Maclaurin; tail_bound is the size of the
// last correction term kept.
SeriesValue zeta_p(const ShapeParam& shape, cplx s, const KoshSequence& seq, const EvalConfig& cfg);
// zeta_p(s) for every s != 1 (Euler-Maclaurin continuation).  For Re s < 0 the
// absolute error grows like 2^-53 lambda_N^{1 - Re s} (about 1e-8 at s = -4);
// zeta_p_continued is exact at the trivial zeros and better conditioned there.
cplx zeta_p_em(const ShapeParam& shape, cplx s, const EvalConfig& cfg);
// Tail sum_{n >= N} w_n lambda_n^{-s} for any s (Euler-Maclaurin; N >= 1).
cplx zeta_p_tail(const ShapeParam& shape, cplx s, int N);
// zeta_p(s) - 1/(s - 1), analytic at s = 1.
cplx zeta_p_regular(const ShapeParam& shape, cplx s, const EvalConfig& cfg);
// zeta_p(s) through the functional equation and eta_p(1 - s) for Re s < 0,
// plus the closed forms zeta_p(0) = -ifac/2 and zeta_p(-2k) = 0.
cplx zeta_p_continued(const ShapeParam& shape, cplx s, const EvalConfig& cfg);

// eta_p(s) for Re s > 1 from the coefficients.
SeriesValue eta_p(const ShapeParam& shape, cplx s, const EvalConfig& cfg);
// eta_p(s) for every s != 1: direct for Re s > 1, reflected from zeta_p(1 - s)
// otherwise; eta_p(0) = -1/2.
cplx eta_p_any(const ShapeParam& shape, cplx s, const EvalConfig& cfg);

// C^(1) by Richardson extrapolation of the defining limit over N = 2^lo..2^hi.
double c1_ladder(const ShapeParam& shape, int log2_lo, int log2_hi);

KoshConstants constants(const ShapeParam& shape, const EvalConfig& cfg);

// sigma(t) = (p + t)/(p - t); 1 and -1 for the limit shapes.
cplx sigma_ratio(const ShapeParam& shape, cplx t);

// sigma_p(z) = sum_n w_n e^{-lambda_n z}, Re z > 0.
SeriesValue sigma_p_series(const ShapeParam& shape, cplx z, const KoshSequence& seq, const EvalConfig& cfg);
// Convenience: sigma_p(z) with a sequence long enough for double precision.
cplx sigma_p(const ShapeParam& shape, cplx z);

// zeta_p(2) in closed form: (pi^2/6)(1 + 3/(pi p)(1 + 1/(pi p)))/(1 + 1/(pi p))^2.
double zeta_p_two_closed(const ShapeParam& shape);

}  // namespace kosh
