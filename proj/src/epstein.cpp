#include "kosh/epstein.hpp"

#include "kosh/kernels.hpp"
#include "kosh/koshzeta.hpp"
#include "kosh/sequence.hpp"
#include "kosh/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kosh {

namespace {

// Rows whose Bessel remainder e^{-2 pi x} drops below 1e-18 are summed
// through their smooth part only.
constexpr double kRowCutoff = 7.0;

double log_ifac_gap(const ShapeParam& shape) {
    return shape.is_finite() ? std::log1p(1.0 / (kPi * shape.p())) : 0.0;
}

// Smallest N with sqrt(c) lambda_N >= xmax, together with a sequence
// holding at least that many roots.
std::shared_ptr<const KoshSequence> rows_up_to(const ShapeParam& shape, double xmax, double c, int& N) {
    const double lam_max = xmax / std::sqrt(c);
    // lambda_n > n - 1/2, so n = ceil(lam_max + 1/2) certainly suffices.
    const int cap = std::max(4, static_cast<int>(std::ceil(lam_max + 0.5)) + 1);
    auto seq = sequence(shape, cap);
    N = 1;
    while (N < cap && seq->lambda(N) < lam_max) ++N;
    return seq;
}

// sum_{m,n} w_m w'_n (lambda_m/lambda'_n)^{s-1/2} K_{s-1/2}(2 pi sqrt(c) lambda_m lambda'_n),
// summed by shells max(m, n) = k until no term of a shell is above the
// e^{-(40 + 2|s|)} threshold.
cplx double_k_sum(const EpsteinParams& prm, cplx s) {
    const double rc = std::sqrt(prm.c);
    const double xmax = 40.0 + 2.0 * std::abs(s);
    const double T = xmax / (2.0 * kPi * rc);  // bound on lambda_m lambda'_n
    // lambda_1 >= 1/2 for every shape, so indices never exceed 2T + 1.
    const int cap = static_cast<int>(std::ceil(2.0 * T + 1.5)) + 1;
    auto sp = sequence(prm.p, cap);
    auto sq = sequence(prm.pprime, cap);
    const cplx nu = s - 0.5;
    auto term = [&](int m, int n) -> cplx {
        const double lm = sp->lambda(m), ln = sq->lambda(n);
        if (lm * ln > T) return 0.0;
        const double X = 2.0 * kPi * rc * lm * ln;
        return sp->weight(m) * sq->weight(n) * std::exp(nu * (std::log(lm) - std::log(ln)) - X) *
               bessel_k_scaled(nu, X);
    };
    cplx total = 0.0;
    for (int k = 1; k <= cap; ++k) {
        if (sp->lambda(k) * sq->lambda(1) > T && sp->lambda(1) * sq->lambda(k) > T) break;
        for (int j = 1; j <= k; ++j) total += term(k, j);
        for (int j = 1; j < k; ++j) total += term(j, k);
    }
    return total;
}

// Guard radius: half the innermost offset laurent_extract uses, so the
// extraction itself never trips it.
double guard_radius(const EvalConfig& cfg) { return 0.25 * cfg.pole_eps; }

void check_pole(cplx s, const EvalConfig& cfg, const char* who) {
    if (std::abs(s - 1.0) < guard_radius(cfg)) throw PoleError(std::string(who) + ": too close to the pole s = 1");
}

void check_not_central(cplx s, const EvalConfig& cfg, const char* who) {
    // At s = 1/2 a pole of zeta_p(2s) (resp. eta_p(2s)) cancels one of
    // Gamma(s - 1/2); the value there is extracted, not evaluated.
    if (std::abs(s - 0.5) < guard_radius(cfg))
        throw DomainError(std::string(who) + ": s = 1/2 is a removable point; use laurent_extract");
}

// Gamma(s - 1/2) zeta_q(2s - 1), including its finite values at the
// removable points s = 1/2 - k, k >= 1, where Gamma has a pole and
// zeta_q(-2k) = 0.  There the functional equation gives
//   zeta_q'(-2k) = pi (-1)^k (2k)! (2 pi)^{-1-2k} eta_q(2k + 1),
// so the product equals 2 pi (2k)!/k! (2 pi)^{-1-2k} eta_q(2k + 1).
cplx gamma_zeta_product(const ShapeParam& q, cplx s, const EvalConfig& cfg) {
    const double kr = std::round(0.5 - s.real());
    if (kr >= 1.0 && std::abs(s - cplx(0.5 - kr, 0.0)) < 1e-6) {
        const int k = static_cast<int>(kr);
        double ratio = 1.0;  // (2k)!/k!
        for (int j = k + 1; j <= 2 * k; ++j) ratio *= j;
        return 2.0 * kPi * ratio * std::pow(2.0 * kPi, -1.0 - 2.0 * k) * eta_p(q, 2.0 * k + 1.0, cfg).value;
    }
    return gamma(s - 0.5) * zeta_p_em(q, 2.0 * s - 1.0, cfg);
}

}  // namespace

void EpsteinParams::validate() const {
    if (!(c > 0) || !std::isfinite(c)) throw DomainError("Epstein parameter c must be positive");
}

// ---------------------------------------------------------------------------
// First analogue.
// ---------------------------------------------------------------------------
SeriesValue epstein1_direct(const EpsteinParams& prm, cplx s, const EvalConfig& cfg) {
    prm.validate();
    if (!(s.real() > 1.0)) throw DomainError("epstein1_direct: needs Re s > 1");
    const double ifac = prm.p.ifac(), ifacq = prm.pprime.ifac();
    const int Np = std::max(cfg.series_N, 8);
    auto seqp = sequence(prm.p, Np);
    const cplx zp = zeta_p(prm.p, 2.0 * s, *seqp, cfg).value;
    auto seqq0 = sequence(prm.pprime, cfg.series_N);
    const cplx zq = zeta_p(prm.pprime, 2.0 * s, *seqq0, cfg).value;

    int N1 = 0;
    auto seqq = rows_up_to(prm.pprime, kRowCutoff, prm.c, N1);
    const double rc = std::sqrt(prm.c);
    cplx rows = 0.0;
    double bound = 0.0;
    for (int n = 1; n < N1; ++n) {
        const SeriesValue r = watson_series(*seqp, s, rc * seqq->lambda(n), cfg);
        rows += seqq->weight(n) * r.value;
        bound += seqq->weight(n) * r.tail_bound;
    }
    // Smooth part of the inner sums for n >= N1.
    const cplx a = std::sqrt(kPi) * gamma(s - 0.5) * rgamma(s) / 2.0;
    rows += a * std::exp((1.0 - 2.0 * s) * std::log(rc)) * zeta_p_tail(prm.pprime, 2.0 * s - 1.0, N1) -
            0.5 * ifac * std::exp(-2.0 * s * std::log(rc)) * zeta_p_tail(prm.pprime, 2.0 * s, N1);
    bound += std::exp(-2.0 * kPi * kRowCutoff);

    SeriesValue out;
    out.value = 2.0 * ifacq * zp + 2.0 * std::exp(-s * std::log(prm.c)) * ifac * zq + 4.0 * rows;
    out.tail_bound = 4.0 * bound;
    out.terms_used = N1;
    out.converged = out.tail_bound <= std::max(cfg.quad.abs_tol, cfg.quad.rel_tol * std::abs(out.value));
    return out;
}

cplx epstein1_bessel(const EpsteinParams& prm, cplx s, const EvalConfig& cfg) {
    prm.validate();
    check_pole(s, cfg, "epstein1_bessel");
    check_not_central(s, cfg, "epstein1_bessel");
    const double rc = std::sqrt(prm.c);
    const cplx head = 2.0 * prm.pprime.ifac() * zeta_p_em(prm.p, 2.0 * s, cfg) +
                      2.0 * std::sqrt(kPi) * std::exp((0.5 - s) * std::log(prm.c)) * rgamma(s) *
                          gamma_zeta_product(prm.pprime, s, cfg);
    int N1 = 0;
    auto seqq = rows_up_to(prm.pprime, kRowCutoff + 0.5, prm.c, N1);
    cplx H = 0.0;
    for (int n = 1; n <= N1; ++n) H += seqq->weight(n) * watson_bessel_sum(prm.p, s, rc * seqq->lambda(n), cfg);
    return head + 4.0 * H;
}

cplx epstein1_continued(const EpsteinParams& prm, cplx s, const EvalConfig& cfg) {
    prm.validate();
    if (!(s.real() < 1.0)) throw DomainError("epstein1_continued: needs Re s < 1");
    check_not_central(s, cfg, "epstein1_continued");
    const double rc = std::sqrt(prm.c);
    const cplx head = 2.0 * prm.pprime.ifac() * zeta_p_em(prm.p, 2.0 * s, cfg) +
                      2.0 * std::sqrt(kPi) * std::exp((0.5 - s) * std::log(prm.c)) * rgamma(s) *
                          gamma_zeta_product(prm.pprime, s, cfg);
    int N1 = 0;
    auto seqq = rows_up_to(prm.pprime, kRowCutoff + 0.5, prm.c, N1);
    cplx H = 0.0;
    for (int n = 1; n <= N1; ++n) {
        const double ln = seqq->lambda(n);
        H += seqq->weight(n) * std::exp((1.0 - 2.0 * s) * std::log(ln)) *
             watson_integral_term(prm.p, s, rc * ln, cfg);
    }
    const cplx pref = std::exp((4.0 - 2.0 * s) * kLn2 + (0.5 - s) * std::log(prm.c)) * std::sin(kPi * s);
    return head + pref * H;
}

LaurentData laurent_extract(const std::function<cplx(double)>& f, double s0, const EvalConfig& cfg) {
    const double e = cfg.pole_eps;
    const cplx fp1 = f(s0 + e), fm1 = f(s0 - e);
    const cplx fp2 = f(s0 + 0.5 * e), fm2 = f(s0 - 0.5 * e);
    const cplx r1 = 0.5 * e * (fp1 - fm1), r2 = 0.25 * e * (fp2 - fm2);
    const cplx c1 = 0.5 * (fp1 + fm1), c2 = 0.5 * (fp2 + fm2);
    LaurentData out;
    out.pole_location = s0;
    out.eps_used = e;
    // Both estimates carry an O(eps^2) bias: one Richardson stage removes it.
    out.residue = (4.0 * r2 - r1) / 3.0;
    out.constant_term = (4.0 * c2 - c1) / 3.0;
    if (std::abs(r1 - r2) > 1e-3 * (1.0 + std::abs(out.residue)))
        throw ConvergenceError("laurent_extract: residue estimates at eps and eps/2 disagree");
    return out;
}

cplx kronecker1_constant(const EpsteinParams& prm, const EvalConfig& cfg) {
    prm.validate();
    const double rc = std::sqrt(prm.c);
    const KoshConstants kq = constants(prm.pprime, cfg);
    int N1 = 0;
    auto seqq = rows_up_to(prm.pprime, kRowCutoff + 0.5, prm.c, N1);
    double sum = 0.0;
    for (int n = 1; n <= N1; ++n) {
        const double ln = seqq->lambda(n);
        sum += seqq->weight(n) / ln * prm.p.kernel(rc * ln);
    }
    return 2.0 * prm.pprime.ifac() * zeta_p_two_closed(prm.p) +
           kPi / rc * (2.0 * kq.c1 - std::log(4.0 * prm.c) + 4.0 * sum);
}

cplx epstein1_central(const EpsteinParams& prm, const EvalConfig& cfg) {
    prm.validate();
    const double rc = std::sqrt(prm.c);
    const KoshConstants kp = constants(prm.p, cfg), kq = constants(prm.pprime, cfg);
    int N1 = 0;
    auto seqq = rows_up_to(prm.pprime, kRowCutoff + 0.5, prm.c, N1);
    cplx sum = 0.0;
    for (int n = 1; n <= N1; ++n) sum += seqq->weight(n) * watson_integral_term(prm.p, 0.5, rc * seqq->lambda(n), cfg);
    const double bracket = 2.0 * kp.c1 + std::log(prm.c / 4.0) - 2.0 * log_ifac_gap(prm.pprime) - 2.0 * kEulerGamma -
                           2.0 * kLn2Pi;
    return prm.pprime.ifac() * bracket + 2.0 * kq.c2 + 8.0 * sum;
}

RealZero real_zero(const EpsteinParams& prm, const EvalConfig& cfg) {
    prm.validate();
    if (!prm.pprime.is_infinity()) throw DomainError("real_zero: requires p' at the infinity limit");
    RealZero out;
    out.value_at_half = epstein1_central(prm, cfg).real();
    if (!(out.value_at_half > 0.0))
        throw DomainError("real_zero: no sign change (central value is not positive; c below threshold)");
    double lo = 0.5, hi = 1.0;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double v = epstein1_continued(prm, mid, cfg).real();
        if (v > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    out.lo = lo;
    out.hi = hi;
    out.root = 0.5 * (lo + hi);
    return out;
}

std::optional<ZeroThreshold> smallest_c_with_zero(const ShapeParam& p, std::vector<double> c_grid,
                                                  const EvalConfig& cfg) {
    std::sort(c_grid.begin(), c_grid.end());
    for (double c : c_grid) {
        const EpsteinParams prm{p, ShapeParam::infinity(), c};
        if (!(epstein1_central(prm, cfg).real() > 0.0)) continue;
        return ZeroThreshold{c, real_zero(prm, cfg)};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Second analogue.
// ---------------------------------------------------------------------------
namespace {

cplx epstein2_definition(const EpsteinParams& prm, cplx s, const EvalConfig& cfg) {
    if (!(s.real() > 1.0)) throw DomainError("epstein2 (definition route): needs Re s > 1");
    const double rc = std::sqrt(prm.c);
    auto seqq0 = sequence(prm.pprime, cfg.series_N);
    const cplx zq = zeta_p(prm.pprime, 2.0 * s, *seqq0, cfg).value;
    const cplx ep = eta_p(prm.p, 2.0 * s, cfg).value;
    // Rows beyond x = sqrt(c) lambda'_n >= X contribute only the smooth part
    // of the J-integral's large-x expansion; the rest is O(e^{-2 pi lambda_1 x}).
    const double lam1 = sequence(prm.p, 1)->lambda(1);
    int N1 = 0;
    auto seqq = rows_up_to(prm.pprime, 6.6 / lam1, prm.c, N1);
    cplx rows = 0.0;
    for (int n = 1; n < N1; ++n) {
        const double ln = seqq->lambda(n);
        rows += seqq->weight(n) * std::exp((0.5 - s) * std::log(ln)) * watson2_integral_term(prm.p, s, rc * ln, cfg);
    }
    const double lpc = std::log(kPi * rc);
    rows += std::exp((0.5 - s) * lpc) * gamma(s - 0.5) * prm.p.ifac() / 4.0 *
                zeta_p_tail(prm.pprime, 2.0 * s - 1.0, N1) -
            gamma(s) * std::exp(-s * std::log(kPi) + (-0.5 * s - 0.25) * std::log(prm.c)) / 4.0 *
                zeta_p_tail(prm.pprime, 2.0 * s, N1);
    const cplx pref = 8.0 * std::exp(s * std::log(kPi) + (0.25 - 0.5 * s) * std::log(prm.c)) * rgamma(s);
    return 2.0 * std::exp(-s * std::log(prm.c)) * zq + 2.0 * prm.pprime.ifac() * ep + pref * rows;
}

cplx epstein2_selberg_chowla(const EpsteinParams& prm, cplx s, const EvalConfig& cfg) {
    check_pole(s, cfg, "epstein2");
    check_not_central(s, cfg, "epstein2");
    const cplx head = 2.0 * prm.pprime.ifac() * eta_p_any(prm.p, 2.0 * s, cfg) +
                      2.0 * std::sqrt(kPi) * std::exp((0.5 - s) * std::log(prm.c)) * rgamma(s) * prm.p.ifac() *
                          gamma_zeta_product(prm.pprime, s, cfg);
    const cplx pref = 8.0 * std::exp(s * std::log(kPi) + (0.25 - 0.5 * s) * std::log(prm.c)) * rgamma(s);
    return head + pref * double_k_sum(prm, s);
}

}  // namespace

cplx epstein2(const EpsteinParams& prm, cplx s, const EvalConfig& cfg, Epstein2Route route) {
    prm.validate();
    return route == Epstein2Route::definition ? epstein2_definition(prm, s, cfg)
                                              : epstein2_selberg_chowla(prm, s, cfg);
}

namespace {

// Lambda_{p,p'}(s) = (pi/sqrt c)^{-s} Gamma(s) zeta~_{p,p'}(s, c), assembled
// term by term so that no pole-times-zero product is formed at the negative
// integers: Gamma(s) cancels the 1/Gamma(s) of the Selberg-Chowla terms, and
// by the reflection formula
//   Gamma(s) eta_p(2s) = zeta_p(1 - 2s) Gamma(1 - 2s) (2 pi)^{2s} / Gamma(1 - s)   (Re 2s < 1).
// At s = 1/2 two genuine poles cancel; there the symmetric eps-limit is used.
cplx completed2(const EpsteinParams& prm, cplx s, const EvalConfig& cfg) {
    const double lq = std::log(kPi / std::sqrt(prm.c));
    auto lambda = [&](cplx z) -> cplx {
        check_pole(z, cfg, "epstein2");
        check_not_central(z, cfg, "epstein2");
        const cplx t = 2.0 * z;
        const cplx gamma_eta = t.real() > 1.0
                                   ? gamma(z) * eta_p(prm.p, t, cfg).value
                                   : zeta_p_em(prm.p, 1.0 - t, cfg) * gamma(1.0 - t) *
                                         std::exp(t * std::log(2.0 * kPi)) * rgamma(1.0 - z);
        const cplx sum = 2.0 * prm.pprime.ifac() * gamma_eta +
                         2.0 * std::sqrt(kPi) * std::exp((0.5 - z) * std::log(prm.c)) * prm.p.ifac() *
                             gamma_zeta_product(prm.pprime, z, cfg) +
                         8.0 * std::exp(z * std::log(kPi) + (0.25 - 0.5 * z) * std::log(prm.c)) *
                             double_k_sum(prm, z);
        return std::exp(-z * lq) * sum;
    };
    if (s.imag() == 0.0 && std::abs(s.real() - 0.5) < guard_radius(cfg))
        return laurent_extract([&](double z) { return lambda(z); }, 0.5, cfg).constant_term;
    return lambda(s);
}

}  // namespace

double epstein2_functional_eq_residual(const EpsteinParams& prm, cplx s, const EvalConfig& cfg) {
    prm.validate();
    const cplx left = completed2(prm, s, cfg);
    const cplx right = completed2(prm.swapped(), 1.0 - s, cfg);
    const double scale = std::max(std::abs(left), std::abs(right));
    return scale == 0.0 ? 0.0 : std::abs(left - right) / scale;
}

cplx kronecker2_constant(const EpsteinParams& prm, const EvalConfig& cfg) {
    prm.validate();
    const double rc = std::sqrt(prm.c);
    const KoshConstants kq = constants(prm.pprime, cfg);
    const double lam1 = sequence(prm.p, 1)->lambda(1);
    int N1 = 0;
    auto seqq = rows_up_to(prm.pprime, 44.0 / (2.0 * kPi * lam1), prm.c, N1);
    cplx sum = 0.0;
    for (int n = 1; n <= N1; ++n) {
        const double ln = seqq->lambda(n);
        sum += seqq->weight(n) / ln * sigma_p(prm.p, 2.0 * kPi * rc * ln);
    }
    return 2.0 * prm.pprime.ifac() * eta_p(prm.p, 2.0, cfg).value +
           kPi / rc * (prm.p.ifac() * (2.0 * kq.c1 - std::log(4.0 * prm.c)) + 4.0 * sum);
}

cplx epstein2_central(const EpsteinParams& prm, const EvalConfig& cfg) {
    prm.validate();
    const KoshConstants kp = constants(prm.p, cfg), kq = constants(prm.pprime, cfg);
    const double ip = prm.p.ifac(), iq = prm.pprime.ifac();
    const double bracket = std::log(prm.c / 4.0) - 2.0 * kEulerGamma - 2.0 * kLn2Pi -
                           2.0 * log_ifac_gap(prm.p) - 2.0 * log_ifac_gap(prm.pprime);
    return 2.0 * iq * kp.c2 + 2.0 * ip * kq.c2 + ip * iq * bracket + 8.0 * double_k_sum(prm, 0.5);
}

}  // namespace kosh
