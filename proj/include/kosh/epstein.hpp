// The two Epstein-zeta analogues built on Koshliakov lattices.
//
// First analogue (Re s > 1), with w, w' the weights of the p and p'
// sequences and ifac = 1/(1 + 1/(pi p)):
//   zeta_{p,p'}(s,c) = 2 ifac' zeta_p(2s) + 2 c^{-s} ifac zeta_{p'}(2s)
//                      + 4 sum_{m,n>=1} w_m w'_n (lambda_m^2 + c lambda'_n^2)^{-s}.
// Second analogue (Re s > 1):
//   zeta~_{p,p'}(s,c) = 2 c^{-s} zeta_{p'}(2s) + 2 ifac' eta_p(2s)
//                      + 8 pi^{s+1} c^{1/4-s/2}/Gamma(s) sum_n w'_n lambda'_n^{1/2-s}
//                        int_0^inf y^{s-1/2} J_{s-1/2}(2 pi lambda'_n sqrt(c) y) kern_p(y) dy.
#pragma once

#include "kosh/types.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace kosh {

struct EpsteinParams {
    ShapeParam p = ShapeParam::infinity();
    ShapeParam pprime = ShapeParam::infinity();
    double c = 1.0;

    void validate() const;
    EpsteinParams swapped() const { return {pprime, p, c}; }
};

struct LaurentData {
    double pole_location = 0.0;
    cplx residue{0.0, 0.0};
    cplx constant_term{0.0, 0.0};
    double eps_used = 0.0;
};

// Direct double series (Re s > 1).  Rows n whose inner argument
// sqrt(c) lambda'_n exceeds a cutoff are replaced by the smooth part of the
// inner sum's large-x expansion; the neglected remainder is below e^{-2 pi x}.
SeriesValue epstein1_direct(const EpsteinParams& params, cplx s, const EvalConfig& cfg);
// Continuation for Re s < 1 through the y^{-s}(y+1)^{-s} kernel integrals.
cplx epstein1_continued(const EpsteinParams& params, cplx s, const EvalConfig& cfg);
// Continuation for every s != 1 through the K-Bessel rows (entire part H).
cplx epstein1_bessel(const EpsteinParams& params, cplx s, const EvalConfig& cfg);

// Residue and constant term of f at a simple pole s0 from f(s0 +- eps) and
// f(s0 +- eps/2), one Richardson stage in eps^2 (eps = cfg.pole_eps).
// Throws ConvergenceError when the eps and eps/2 residue estimates disagree.
LaurentData laurent_extract(const std::function<cplx(double)>& f, double s0, const EvalConfig& cfg);

// Closed-form constant term at s = 1 of the first analogue.
cplx kronecker1_constant(const EpsteinParams& params, const EvalConfig& cfg);
// Closed form of zeta_{p,p'}(1/2, c).
cplx epstein1_central(const EpsteinParams& params, const EvalConfig& cfg);

struct RealZero {
    double root = 0.0;
    double lo = 0.0, hi = 0.0;   // final bracket
    double value_at_half = 0.0;  // zeta_{p,inf}(1/2, c) > 0
};
// Real zero of zeta_{p,inf}(s, c) in (1/2, 1) by 80 bisection steps; the
// sign just below s = 1 is that of -residue.  Throws DomainError when the
// central value is not positive (no sign change).
RealZero real_zero(const EpsteinParams& params, const EvalConfig& cfg);

// Smallest c of `c_grid` (scanned in increasing order) for which
// zeta_{p,inf}(s, c) has a verified sign change on (1/2, 1), with its zero;
// nullopt when no tested c qualifies.  The threshold is only known to exceed
// 16 pi^2 e^{-2 C_p^(1)}, so it is located empirically rather than asserted.
struct ZeroThreshold {
    double c = 0.0;
    RealZero zero;
};
std::optional<ZeroThreshold> smallest_c_with_zero(const ShapeParam& p, std::vector<double> c_grid,
                                                  const EvalConfig& cfg);

enum class Epstein2Route { definition, selberg_chowla };
cplx epstein2(const EpsteinParams& params, cplx s, const EvalConfig& cfg, Epstein2Route route);
// |Lambda_{p,p'}(s) - Lambda_{p',p}(1-s)| / max(|.|, |.|) with
// Lambda_{p,p'}(s) = (pi/sqrt c)^{-s} Gamma(s) zeta~_{p,p'}(s, c).
// Lambda is assembled without pole-times-zero products, so the negative
// integers need no special treatment; at s = 1/2 the symmetric eps-limit is used.
double epstein2_functional_eq_residual(const EpsteinParams& params, cplx s, const EvalConfig& cfg);
// Closed-form constant term at s = 1 of the second analogue.
cplx kronecker2_constant(const EpsteinParams& params, const EvalConfig& cfg);
// Closed form of zeta~_{p,p'}(1/2, c).
cplx epstein2_central(const EpsteinParams& params, const EvalConfig& cfg);

}  // namespace kosh
