#include "kosh/kernels.hpp"

#include "kosh/koshzeta.hpp"
#include "kosh/quadrature.hpp"
#include "kosh/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace kosh {

namespace {

// int_0^inf f over [0, 1] by tanh-sinh (endpoint singularity at 0) and
// [1, inf) by exp-sinh.
cplx integrate_half_line(const ComplexFn& f, const QuadratureSpec& q, double split = 1.0) {
    return integrate_ts(f, 0.0, split, q) + integrate_es(f, split, q);
}

// Fixed Gauss-Legendre over uniform panels of [a, b].
cplx integrate_uniform_panels(const ComplexFn& f, double a, double b, int panels, int nodes = 20) {
    cplx total = 0.0;
    const double h = (b - a) / panels;
    for (int k = 0; k < panels; ++k) total += gauss_legendre(f, a + k * h, a + (k + 1) * h, nodes);
    return total;
}

// L^{(1)}_{n}(y) by the three-term recurrence.
double laguerre1(int n, double y) {
    if (n == 0) return 1.0;
    double lm1 = 1.0, l = 2.0 - y;
    for (int m = 1; m < n; ++m) {
        const double next = ((2.0 * m + 2.0 - y) * l - (m + 1.0) * lm1) / (m + 1.0);
        lm1 = l;
        l = next;
    }
    return l;
}

cplx cpow_real(double base, cplx e) { return std::exp(e * std::log(base)); }

}  // namespace

// ---------------------------------------------------------------------------
// G_p(a)
// ---------------------------------------------------------------------------
double g_kernel(const ShapeParam& shape, double a) {
    if (!(a > 0) || !std::isfinite(a)) throw DomainError("g_kernel: a must be positive");
    const double q = std::sqrt(2.0 * a);
    const double r = kPi * q;
    const double e = std::exp(-r);
    const double e2 = e * e;
    const double c = std::cos(r), s = std::sin(r);
    // Scaled hyperbolic parts: cosh(r) e^{-r}, sinh(r) e^{-r}.
    const double ch = 0.5 * (1.0 + e2), sh = 0.5 * (1.0 - e2);
    if (shape.is_infinity()) {
        // Leading p^2 coefficients of numerator and denominator.
        return e * (c - s - e) / (ch - c * e);
    }
    if (shape.is_zero()) {
        return -e * (c - s + e) / (ch + c * e);
    }
    const double p = shape.p();
    const double num = (p * p - a) * (c - s) * e - e2 * (p * p - q * p + a) - q * p * (c + s) * e;
    const double den = p * p * (ch - c * e) + q * p * (sh + s * e) + a * (ch + c * e);
    return num / den;
}

double g_kernel(double p, double a) { return g_kernel(ShapeParam::finite(p), a); }

// ---------------------------------------------------------------------------
// Watson series and its right-hand sides.
// ---------------------------------------------------------------------------
SeriesValue watson_series(const KoshSequence& seq_in, cplx s, double x, const EvalConfig& cfg) {
    if (!(x > 0)) throw DomainError("watson_series: x must be positive");
    const ShapeParam& shape = seq_in.shape();
    const int N0 = std::max(cfg.series_N, static_cast<int>(std::ceil(3.0 * x)) + 1);
    std::shared_ptr<const KoshSequence> holder;
    const KoshSequence* seq = &seq_in;
    if (seq->capacity() < N0) {
        holder = sequence(shape, N0);
        seq = holder.get();
    }
    cplx sum = 0.0;
    const double x2 = x * x;
    for (int n = 1; n <= N0; ++n) {
        const double l = seq->lambda(n);
        sum += seq->weight(n) * std::exp(-s * std::log(l * l + x2));
    }
    // (lambda^2 + x^2)^{-s} = sum_m C(-s, m) x^{2m} lambda^{-2s-2m}
    cplx binom = 1.0;
    double xp = 1.0;
    double last = 0.0;
    int m = 0;
    for (; m < 200; ++m) {
        const cplx term = binom * xp * zeta_p_tail(shape, 2.0 * s + 2.0 * m, N0 + 1);
        sum += term;
        last = std::abs(term);
        if (m > 2 && last < 1e-18 * std::abs(sum)) break;
        binom *= (-s - static_cast<double>(m)) / static_cast<double>(m + 1);
        xp *= x2;
    }
    SeriesValue out;
    out.value = sum;
    out.tail_bound = last;
    out.terms_used = N0;
    out.converged = last <= cfg.quad.rel_tol * std::abs(sum) + cfg.quad.abs_tol;
    return out;
}

cplx watson_integral_term(const ShapeParam& shape, cplx s, double x, const EvalConfig& cfg) {
    if (!(s.real() < 1.0)) throw DomainError("watson integral: needs Re s < 1");
    if (!(x > 0)) throw DomainError("watson integral: x must be positive");
    auto f = [&](double y) -> cplx {
        if (y <= 0.0) return 0.0;
        return std::exp(-s * (std::log(y) + std::log1p(y))) * shape.kernel((2.0 * y + 1.0) * x);
    };
    return integrate_half_line(f, cfg.quad, std::min(1.0, 1.0 / x));
}

cplx watson_rhs_integral(const ShapeParam& shape, cplx s, double x, const EvalConfig& cfg) {
    const double lx = std::log(x);
    const cplx first = std::sqrt(kPi) * std::exp((1.0 - 2.0 * s) * lx) * gamma(s - 0.5) * rgamma(s) / 2.0;
    const cplx second = -0.5 * std::exp(-2.0 * s * lx) * shape.ifac();
    const cplx third = std::exp((2.0 - 2.0 * s) * kLn2 + (1.0 - 2.0 * s) * lx) * std::sin(kPi * s) *
                       watson_integral_term(shape, s, x, cfg);
    return first + second + third;
}

cplx watson_rhs_bessel(const ShapeParam& shape, cplx s, double x, const EvalConfig& cfg) {
    if (!(x > 0)) throw DomainError("watson_rhs_bessel: x must be positive");
    const double lx = std::log(x);
    const cplx first = std::sqrt(kPi) * std::exp((1.0 - 2.0 * s) * lx) * gamma(s - 0.5) * rgamma(s) / 2.0;
    const cplx second = -0.5 * std::exp(-2.0 * s * lx) * shape.ifac();
    return first + second + watson_bessel_sum(shape, s, x, cfg);
}

cplx watson_bessel_sum(const ShapeParam& shape, cplx s, double x, const EvalConfig& cfg) {
    (void)cfg;
    if (!(x > 0)) throw DomainError("watson_bessel_sum: x must be positive");
    const double lx = std::log(x);
    const cplx nu = s - 0.5;
    const cplx pref = 2.0 * std::exp(s * std::log(kPi) + (0.5 - s) * lx) * rgamma(s);
    const int mmax = static_cast<int>(std::ceil(44.0 / (2.0 * kPi * x))) + 2;
    cplx sum = 0.0;
    for (int m = 1; m <= mmax; ++m) {
        const double arg = 2.0 * kPi * m * x;
        const double scale = std::exp(-arg);
        if (scale == 0.0) break;
        cplx bracket = bessel_k_scaled(nu, arg);  // e^{arg} K_nu(arg)
        if (shape.is_infinity()) {
            sum += cpow_real(m, nu) * bracket * scale;
            continue;
        }
        if (shape.is_finite()) {
            const double p = shape.p();
            const double c = 4.0 * kPi * m * p;  // y = c u
            // int_0^inf (1+u)^{nu} e^{-2 pi m p u} L(c u) e^{-2 pi m x u} [e^{arg(1+u)} K(arg(1+u))] du,
            // written in y.
            auto f = [&](double y) -> cplx {
                const double u = y / c;
                return std::exp(nu * std::log1p(u) - 0.5 * y - arg * u) * laguerre1(m - 1, y) *
                       bessel_k_scaled(nu, arg * (1.0 + u));
            };
            const double yosc = 4.0 * m + 8.0;
            const double ymax = yosc + 120.0;
            const cplx integral = (integrate_uniform_panels(f, 0.0, yosc, m + 4) +
                                   integrate_uniform_panels(f, yosc, ymax, 8)) /
                                  c;
            bracket -= c * integral;
        }
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        sum += sign * cpow_real(m, nu) * bracket * scale;
    }
    return pref * sum;
}

// ---------------------------------------------------------------------------
// Second analogue.
// ---------------------------------------------------------------------------
namespace {

// y^nu times (J_nu(z) minus the first N + 1 terms of its power series);
// N = -1 subtracts nothing.  The power of y is folded into the series so
// that tiny y neither overflows nor underflows.
cplx bessel_j_minus_series(cplx nu, double z, int N, double y) {
    const double h = 0.5 * z;
    const cplx ypow_log = nu * std::log(y);
    if (N < 0 && z >= 2.0) return std::exp(ypow_log) * bessel_j(nu, z);
    if (z < 2.0 + N) {
        // Sum the series tail directly: no cancellation.
        cplx term = std::exp(ypow_log + (nu + 2.0 * (N + 1)) * std::log(h)) * rgamma(nu + 1.0);
        for (int k = 1; k <= N + 1; ++k) term *= -1.0 / (static_cast<double>(k) * (nu + static_cast<double>(k)));
        cplx sum = 0.0;
        for (int k = N + 1; k < N + 200; ++k) {
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
            term *= -h * h / (static_cast<double>(k + 1) * (nu + static_cast<double>(k + 1)));
        }
        return sum;
    }
    cplx poly = 0.0, term = std::exp(nu * std::log(h)) * rgamma(nu + 1.0);
    for (int k = 0; k <= N; ++k) {
        poly += term;
        term *= -h * h / (static_cast<double>(k + 1) * (nu + static_cast<double>(k + 1)));
    }
    return std::exp(ypow_log) * (bessel_j(nu, z) - poly);
}

}  // namespace

cplx watson2_integral_regularized(const ShapeParam& shape, cplx s, double x, int N, const EvalConfig& cfg) {
    if (N < -1) throw DomainError("watson2: subtraction order must be >= -1");
    if (!(s.real() > -static_cast<double>(N) - 0.5)) throw DomainError("watson2: needs Re s > -N - 1/2");
    if (!(x > 0)) throw DomainError("watson2: x must be positive");
    const cplx nu = s - 0.5;
    const double b = 2.0 * kPi * x;
    auto f = [&](double y) -> cplx {
        if (y <= 0.0) return 0.0;
        return bessel_j_minus_series(nu, b * y, N, y) * shape.kernel(y);
    };
    const double y0 = std::min(1.0, 0.5 / x);
    const double ymax = 8.0 + std::abs(s) + 2.0 * std::max(N, 0);
    cplx total = integrate_ts(f, 0.0, y0, cfg.quad);
    const int panels = static_cast<int>(std::ceil((ymax - y0) / std::min(0.5, 0.5 / x)));
    total += integrate_uniform_panels(f, y0, ymax, panels);
    return kPi * total;
}

cplx watson2_integral_term(const ShapeParam& shape, cplx s, double x, const EvalConfig& cfg) {
    if (!(s.real() > 0.5)) throw DomainError("watson2: needs Re s > 1/2");
    return watson2_integral_regularized(shape, s, x, -1, cfg);
}

cplx watson2_rhs_continued(const ShapeParam& shape, cplx s, double x, int N, const EvalConfig& cfg) {
    if (N < 0) throw DomainError("watson2_rhs_continued: N must be >= 0");
    const double lx = std::log(x), lp = std::log(kPi);
    const cplx a = -std::exp((0.5 - s) * (lp + lx)) * gamma(s - 0.5) * shape.ifac() / 4.0;
    const cplx b = gamma(s) * std::exp(-s * lp + (-s - 0.5) * lx) / 4.0;
    cplx sum = 0.0;
    double fact = 1.0;
    for (int k = 0; k <= N; ++k) {
        if (k > 0) fact *= k;
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        sum += sign * std::pow(x, 2.0 * k) / fact * gamma(s + static_cast<double>(k)) *
               eta_p_any(shape, 2.0 * s + 2.0 * k, cfg);
    }
    const cplx c = std::exp((s - 0.5) * lx - s * lp) / 2.0 * sum;
    return a + b + c + watson2_integral_regularized(shape, s, x, N, cfg);
}

cplx k0_series_rhs(const ShapeParam& shape, double x, const EvalConfig& cfg) {
    if (!(x > 0)) throw DomainError("k0_series_rhs: x must be positive");
    const KoshConstants k = constants(shape, cfg);
    const double ifac = shape.ifac();
    const double L = shape.is_finite() ? std::log1p(1.0 / (kPi * shape.p())) : 0.0;
    return 1.0 / (4.0 * x) + k.c2 / 2.0 - ifac * L / 2.0 + ifac * std::log(x / 2.0) / 2.0 +
           watson2_integral_regularized(shape, 0.5, x, 0, cfg);
}

cplx k0_series_lhs(const KoshSequence& seq, double x, const EvalConfig& cfg) {
    return watson2_lhs(seq, 0.5, x, cfg);
}

double sine_kernel_integral(const ShapeParam& shape, double x, const EvalConfig& cfg) {
    if (!(x > 0)) throw DomainError("sine_kernel_integral: x must be positive");
    auto f = [&](double y) -> cplx {
        if (y <= 0.0) return 0.0;
        return std::sin(2.0 * kPi * x * y) * shape.kernel(y);
    };
    const double y0 = std::min(1.0, 0.5 / x);
    const double ymax = 9.0;
    cplx total = integrate_ts(f, 0.0, y0, cfg.quad);
    const int panels = static_cast<int>(std::ceil((ymax - y0) / std::min(0.5, 0.5 / x)));
    total += integrate_uniform_panels(f, y0, ymax, panels);
    return 2.0 * total.real();
}

cplx sigma_p_integral(const ShapeParam& shape, double x, const EvalConfig& cfg) {
    return -shape.ifac() / 2.0 + 1.0 / (2.0 * kPi * x) + sine_kernel_integral(shape, x, cfg);
}

cplx watson2_rhs(const ShapeParam& shape, cplx s, double x, const EvalConfig& cfg) {
    const double lx = std::log(x), lp = std::log(kPi);
    const cplx a = -std::exp((0.5 - s) * (lp + lx)) * gamma(s - 0.5) * shape.ifac() / 4.0;
    const cplx b = gamma(s) * std::exp(-s * lp + (-s - 0.5) * lx) / 4.0;
    return a + b + watson2_integral_term(shape, s, x, cfg);
}

cplx watson2_lhs(const KoshSequence& seq_in, cplx s, double x, const EvalConfig& cfg) {
    (void)cfg;
    if (!(x > 0)) throw DomainError("watson2_lhs: x must be positive");
    const cplx nu = s - 0.5;
    const int N = static_cast<int>(std::ceil(46.0 / (2.0 * kPi * x))) + 2;
    std::shared_ptr<const KoshSequence> holder;
    const KoshSequence* seq = &seq_in;
    if (seq->capacity() < N) {
        holder = sequence(seq_in.shape(), N);
        seq = holder.get();
    }
    cplx sum = 0.0;
    for (int n = 1; n <= N; ++n) {
        const double l = seq->lambda(n);
        const double arg = 2.0 * kPi * l * x;
        sum += seq->weight(n) * std::exp(nu * std::log(l) - arg) * bessel_k_scaled(nu, arg);
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Third analogue: the double integral, with the y-contour rotated onto the
// ray where e^{-xy + i m y u} stops oscillating.
// ---------------------------------------------------------------------------
cplx watson3_term(const ShapeParam& shape, cplx s, double x, int m, const EvalConfig& cfg) {
    if (!(s.real() > 0.5)) throw DomainError("watson3: needs Re s > 1/2");
    if (!(x > 0)) throw DomainError("watson3: x must be positive");
    if (m < 1) throw DomainError("watson3: m must be positive");
    const double twopip = shape.is_finite() ? 2.0 * kPi * shape.p() : 0.0;
    // R(z)^m with R(z) = (2 pi p + i z)/(2 pi p - i z); R = 1 (p = inf), -1 (p = 0).
    auto rpow = [&](cplx z) -> cplx {
        if (shape.is_infinity()) return 1.0;
        if (shape.is_zero()) return (m % 2 == 0) ? 1.0 : -1.0;
        const cplx iz(-z.imag(), z.real());
        return std::exp(static_cast<double>(m) * (std::log(twopip + iz) - std::log(twopip - iz)));
    };
    const cplx two_s = 2.0 * s;
    auto v_integral = [&](cplx dir) -> cplx {
        // int_0^inf v^{2s-1} e^{-v} R(v dir)^m dv
        auto g = [&](double v) -> cplx {
            if (v <= 0.0) return 0.0;
            return std::exp((two_s - 1.0) * std::log(v) - v) * rpow(v * dir);
        };
        return integrate_ts(g, 0.0, 4.0, cfg.quad) + integrate_es(g, 4.0, cfg.quad);
    };
    const cplx gamma2s = gamma(two_s);
    auto f = [&](double u) -> cplx {
        if (u <= 0.0 || u >= 1.0) return 0.0;
        const double th = std::atan2(m * u, x);
        const double rho = std::hypot(x, m * u);
        const double lr = std::log(rho);
        const cplx ep = std::exp(cplx(0.0, th));
        cplx vp = gamma2s, vm = gamma2s;
        if (!shape.is_infinity() && !shape.is_zero()) {
            vp = v_integral(ep * (u / rho));
            vm = v_integral(-std::conj(ep) * (u / rho));
        } else if (shape.is_zero() && m % 2 == 1) {
            vp = vm = -gamma2s;
        }
        const cplx plus = std::exp(two_s * cplx(-lr, th)) * vp;
        const cplx minus = std::exp(two_s * cplx(-lr, -th)) * vm;
        const double one_m_u2 = (1.0 - u) * (1.0 + u);
        return std::exp((s - 1.0) * std::log(one_m_u2)) * 0.5 * (plus + minus);
    };
    const cplx pref = std::exp((1.0 - 2.0 * s) * kLn2 + (s - 0.5) * std::log(x) - s * std::log(kPi)) * rgamma(s);
    return pref * integrate_ts(f, 0.0, 1.0, cfg.quad);
}

Watson3Result watson3_lhs(const ShapeParam& shape, cplx s, double x, const EvalConfig& cfg) {
    // The m-sum decays only like m^{-2 Re s}.  Levin-u on short prefixes is
    // accurate, while high transform orders lose everything to rounding, so
    // the prefix whose estimate moves least against its predecessor wins.
    const int M = std::min(cfg.series_N, 18);
    std::vector<cplx> terms;
    terms.reserve(static_cast<std::size_t>(M));
    for (int m = 1; m <= M; ++m) terms.push_back(watson3_term(shape, s, x, m, cfg));
    Watson3Result out;
    cplx prev = levin_u(std::vector<cplx>(terms.begin(), terms.begin() + 7), nullptr);
    double best = std::numeric_limits<double>::infinity();
    for (int n = 8; n <= M; ++n) {
        const cplx v = levin_u(std::vector<cplx>(terms.begin(), terms.begin() + n), nullptr);
        const double d = std::abs(v - prev);
        if (d < best) {
            best = d;
            out.value = v;
        }
        prev = v;
    }
    out.accel_error = best;
    out.terms_used = M;
    out.converged = best <= 1e-8 * std::max(1.0, std::abs(out.value));
    return out;
}

// ---------------------------------------------------------------------------
// K_{nu,p}(x)
// ---------------------------------------------------------------------------
cplx k_kernel(const ShapeParam& shape, cplx nu, double x, const EvalConfig& cfg) {
    if (!(nu.real() < 0.5)) throw DomainError("k_kernel: needs Re nu < 1/2");
    if (!(x > 0)) throw DomainError("k_kernel: x must be positive");
    const cplx e = -nu - 0.5;
    auto f = [&](double y) -> cplx {
        if (y <= 0.0) return 0.0;
        return std::exp(e * (std::log(y) + std::log1p(y))) * shape.kernel(x * (2.0 * y + 1.0) / (2.0 * kPi));
    };
    return integrate_half_line(f, cfg.quad, std::min(1.0, 2.0 / x));
}

}  // namespace kosh
