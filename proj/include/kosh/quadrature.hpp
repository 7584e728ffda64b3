// Quadrature and series-acceleration helpers.
//
// The adaptive rules themselves come from Boost.Math (Gauss-Kronrod,
// tanh-sinh, exp-sinh); this header fixes one calling convention for
// complex-valued integrands and adds the acceleration schemes used by the
// series evaluators (Levin u-transform, Richardson extrapolation).
#pragma once

#include "kosh/types.hpp"

#include <functional>
#include <vector>

namespace kosh {

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<cplx(double)>;

// Adaptive Gauss-Kronrod (31 points) on a finite interval with smooth integrand.
cplx integrate_gk(const ComplexFn& f, double a, double b, const QuadratureSpec& q,
                  double* error = nullptr);
double integrate_gk_real(const RealFn& f, double a, double b, const QuadratureSpec& q,
                         double* error = nullptr);

// tanh-sinh on a finite interval; tolerates integrable endpoint singularities.
cplx integrate_ts(const ComplexFn& f, double a, double b, const QuadratureSpec& q,
                  double* error = nullptr);

// exp-sinh on [a, inf); integrand must decay without oscillating.
cplx integrate_es(const ComplexFn& f, double a, const QuadratureSpec& q,
                  double* error = nullptr);

// Gauss-Kronrod over consecutive panels [b_0,b_1], [b_1,b_2], ...
cplx integrate_panels(const ComplexFn& f, const std::vector<double>& breaks,
                      const QuadratureSpec& q, double* error = nullptr);

// Fixed Gauss-Legendre rule with n nodes on [a, b] (nodes cached per n).
cplx gauss_legendre(const ComplexFn& f, double a, double b, int n);

// Levin u-transform of the partial sums of sum_k terms[k].
// Returns the accelerated limit and writes an error estimate (difference of
// the last two transforms) to *error when given.
cplx levin_u(const std::vector<cplx>& terms, double* error = nullptr);

// Richardson extrapolation of values f(h_k) with h_{k+1} = h_k / ratio and
// error expansion in powers h^order, h^{2 order}, ...
cplx richardson(const std::vector<cplx>& values, double ratio, double order);

}  // namespace kosh
