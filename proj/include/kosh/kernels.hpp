// Kernels and series shapes from which the identities are assembled:
// the Ramanujan-type kernel G_p(a), the weighted Watson series and its
// alternative right-hand sides, the J-Bessel integral of the second Watson
// analogue, the double integral of the third analogue, and the
// Bessel-like integral  K_{nu,p}(x).
//
// Throughout, kern_p(z) = 1/(sigma(z) e^{2 pi z} - 1) is evaluated in the
// pole-free form provided by ShapeParam::kernel.
#pragma once

#include "kosh/sequence.hpp"
#include "kosh/types.hpp"

namespace kosh {

// G_p(a) for a > 0 (finite p or either limit shape), computed with every
// hyperbolic term scaled by e^{-pi sqrt(2a)} so no overflow can occur.
double g_kernel(const ShapeParam& shape, double a);
double g_kernel(double p, double a);

// phi_p(s, x) = sum_n w_n (lambda_n^2 + x^2)^{-s}.  Terms beyond a cutoff
// N0 > 2x are expanded binomially in x^2/lambda_n^2 and summed with the
// continued tails of zeta_p, which also continues phi_p to every s.
SeriesValue watson_series(const KoshSequence& seq, cplx s, double x, const EvalConfig& cfg);

// The three-term integral right-hand side (1/2 < Re s < 1; the formula is
// evaluated for every Re s < 1).
cplx watson_rhs_integral(const ShapeParam& shape, cplx s, double x, const EvalConfig& cfg);
// Only the integral int_0^inf y^{-s} (y+1)^{-s} kern_p((2y+1) x) dy.
cplx watson_integral_term(const ShapeParam& shape, cplx s, double x, const EvalConfig& cfg);

// The K-Bessel right-hand side.  The inner (l, t) double sum for each m is
// evaluated as one Laguerre-weighted integral:
//   sum_l C(m,l)(-1)^{m-l}(4 pi m p)^l int_1^inf t^{s-1/2} e^{-2 pi m p (t-1)} (t-1)^{l-1}/(l-1)! K(2 pi x m t) dt
//   = (-1)^{m-1} 4 pi m p int_0^inf (1+u)^{s-1/2} e^{-2 pi m p u} L^{(1)}_{m-1}(4 pi m p u) K(2 pi x m (1+u)) du.
cplx watson_rhs_bessel(const ShapeParam& shape, cplx s, double x, const EvalConfig& cfg);
// Only the K-Bessel part of watson_rhs_bessel (exponentially small in x);
// entire in s.
cplx watson_bessel_sum(const ShapeParam& shape, cplx s, double x, const EvalConfig& cfg);

// Second analogue: the J-Bessel integral right-hand side (Re s > 1/2).
cplx watson2_rhs(const ShapeParam& shape, cplx s, double x, const EvalConfig& cfg);
// Only pi int_0^inf y^{s-1/2} J_{s-1/2}(2 pi x y) kern_p(y) dy.
cplx watson2_integral_term(const ShapeParam& shape, cplx s, double x, const EvalConfig& cfg);
// pi int_0^inf y^{s-1/2} {J_{s-1/2}(2 pi x y) - first N+1 series terms} kern_p(y) dy,
// valid for Re s > -N - 1/2 (N = -1 subtracts nothing).
cplx watson2_integral_regularized(const ShapeParam& shape, cplx s, double x, int N, const EvalConfig& cfg);
// The right side of the second analogue continued to Re s > -N - 1/2 by
// subtracting N + 1 power-series terms of J and restoring them through eta_p.
cplx watson2_rhs_continued(const ShapeParam& shape, cplx s, double x, int N, const EvalConfig& cfg);
// sum_n w_n K_0(2 pi lambda_n x) and its closed right side
//   1/(4x) + C2/2 - L/(2(1+1/(pi p))) + log(x/2)/(2(1+1/(pi p))) + pi int (J_0(2 pi x y) - 1) kern_p(y) dy,
// with L = log(1 + 1/(pi p)).
cplx k0_series_lhs(const KoshSequence& seq, double x, const EvalConfig& cfg);
cplx k0_series_rhs(const ShapeParam& shape, double x, const EvalConfig& cfg);
// 2 int_0^inf sin(2 pi x y) kern_p(y) dy, and the resulting Abel-Plana form
// of sigma_p(2 pi x) = -1/(2(1+1/(pi p))) + 1/(2 pi x) + that integral.
double sine_kernel_integral(const ShapeParam& shape, double x, const EvalConfig& cfg);
cplx sigma_p_integral(const ShapeParam& shape, double x, const EvalConfig& cfg);
// Left side of the second analogue: sum_n w_n lambda_n^{s-1/2} K_{s-1/2}(2 pi lambda_n x).
cplx watson2_lhs(const KoshSequence& seq, cplx s, double x, const EvalConfig& cfg);

struct Watson3Result {
    cplx value{0.0, 0.0};
    double accel_error = 0.0;  // Levin-u error estimate of the m-sum
    int terms_used = 0;
    bool converged = false;
};
// The m-th term of the double-integral side of the third analogue
// (prefactor included).
cplx watson3_term(const ShapeParam& shape, cplx s, double x, int m, const EvalConfig& cfg);
// The double-integral side of the third analogue.
Watson3Result watson3_lhs(const ShapeParam& shape, cplx s, double x, const EvalConfig& cfg);

// K_{nu,p}(x) = int_0^inf y^{-nu-1/2} (y+1)^{-nu-1/2} / (sigma(x(2y+1)/(2 pi)) e^{(2y+1)x} - 1) dy,
// Re nu < 1/2.
cplx k_kernel(const ShapeParam& shape, cplx nu, double x, const EvalConfig& cfg);

}  // namespace kosh
