// Special functions on the complex plane used throughout the library:
// Gamma, modified Bessel K of complex order, Bessel J of complex order,
// the incomplete gamma integral, and reference Riemann/Hurwitz zeta values.
#pragma once

#include "kosh/types.hpp"

namespace kosh {

// log Gamma(z) (principal branch away from the negative axis, continuous
// elsewhere via reflection).  Throws PoleError at nonpositive integers.
cplx lgamma(cplx z);
// Gamma(z); throws PoleError at nonpositive integers.
cplx gamma(cplx z);
// 1/Gamma(z), entire: returns exactly 0 at the poles of Gamma.
cplx rgamma(cplx z);
// Digamma psi(z); throws PoleError at nonpositive integers.
cplx digamma(cplx z);

// B_{2k} for k = 1..15.
double bernoulli_b2k(int k);

struct BesselKOptions {
    double order_cap = 50.0;  // maximal |Re nu|
};

// K_nu(x) for complex nu and x > 0 via the trapezoidal rule on
// int_0^inf exp(-x cosh t) cosh(nu t) dt.  Returns exact zero and sets
// *underflow when the result lies below the double range.
cplx bessel_k(cplx nu, double x, bool* underflow = nullptr, const BesselKOptions& opt = {});
// e^{x} K_nu(x); never underflows for moderate nu.
cplx bessel_k_scaled(cplx nu, double x, const BesselKOptions& opt = {});

// J_nu(x) for complex nu and x > 0: power series for x <= 12, Schlaefli's
// integral for 12 < x <= 30 + |nu|^2, Hankel's expansion beyond.
cplx bessel_j(cplx nu, double x);

// Q_mu(s) = int_mu^inf t^{s-1} e^{-t} dt for mu > 0.
cplx incomplete_gamma_q(double mu, cplx s);
// E_1(x) = Q_x(0) for x > 0.
double expint_e1(double x);

// Riemann zeta: alternating-series acceleration for Re s >= 1/2, functional
// equation otherwise.  Throws PoleError at s = 1.
cplx riemann_zeta(cplx s);
// zeta(s) - 1/(s-1), regular at s = 1.
cplx riemann_zeta_regular(cplx s);
// Hurwitz zeta sum_{k>=0} (k + a)^{-s}, a > 0, via Euler-Maclaurin.
cplx hurwitz_zeta(cplx s, double a);

// (e^z - 1)/z, accurate near z = 0.
cplx expm1_over(cplx z);

}  // namespace kosh
