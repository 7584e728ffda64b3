#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kosh/kernels.hpp"
#include "kosh/koshzeta.hpp"
#include "kosh/quadrature.hpp"
#include "kosh/specfun.hpp"

#include <cmath>

using namespace kosh;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

// Kernel 1/(sigma(z) e^{2 pi z} - 1) in plain complex arithmetic.
cplx naive_kernel(double p, cplx z) { return 1.0 / ((p + z) / (p - z) * std::exp(2 * kPi * z) - 1.0); }

// Classical right side of Watson's formula by the K-Bessel series, with the
// Bessel function taken from the standard library (real order only).
double watson_classical(double s, double x) {
    double ksum = 0;
    for (int n = 1; n <= 40; ++n) ksum += std::pow(n, s - 0.5) * std::cyl_bessel_k(s - 0.5, 2 * kPi * n * x);
    return -std::pow(x, -2 * s) / 2 + std::sqrt(kPi) * std::tgamma(s - 0.5) * std::pow(x, 1 - 2 * s) / (2 * std::tgamma(s)) +
           2 * std::pow(kPi, s) * std::pow(x, 0.5 - s) / std::tgamma(s) * ksum;
}

// sum_n w_n (lambda_n^2 + x^2)^{-s} by brute force over many roots; the
// remainder beyond N is estimated by its integral N^{1-2s}/(2s-1).
double watson_brute(const ShapeParam& sh, double s, double x, int N) {
    const auto seq = sequence(sh, N);
    double sum = 0;
    for (int n = N; n >= 1; --n) sum += seq->weight(n) * std::pow(seq->lambda(n) * seq->lambda(n) + x * x, -s);
    return sum + std::pow(N + 0.5, 1 - 2 * s) / (2 * s - 1);
}

}  // namespace

TEST_CASE("G_p kernel") {
    // p -> inf: the kernel of Ramanujan's Entry 8.
    for (double a : {0.1, 1.0, 3.0}) {
        const double r = kPi * std::sqrt(2 * a);
        const double classical = (std::cos(r) - std::sin(r) - std::exp(-r)) / (std::cosh(r) - std::cos(r));
        CHECK(std::abs(g_kernel(ShapeParam::infinity(), a) - classical) < 1e-14);
        CHECK(std::abs(g_kernel(1e9, a) - classical) < 1e-7);
    }
    // Complex form: G_p(a) = 2 sqrt 2 Im[e^{i pi/4} kern_p(sqrt(a) e^{i pi/4})].
    const cplx w = std::polar(1.0, kPi / 4);
    for (double p : {0.5, 1.0, 3.0})
        for (double a : {0.3, 1.0, 2.0}) {
            const double oracle = 2 * std::sqrt(2.0) * (w * naive_kernel(p, std::sqrt(a) * w)).imag();
            CHECK(std::abs(g_kernel(p, a) - oracle) < 1e-13);
        }
    // Exponential decay, and a finite value with positive denominator everywhere.
    CHECK(std::abs(g_kernel(1.0, 1e6)) < 1e-300);
    for (double la = -3; la <= 3; la += 0.25) CHECK(std::isfinite(g_kernel(1.0, std::pow(10.0, la))));
    CHECK_THROWS_AS(g_kernel(1.0, -1.0), DomainError);
}

TEST_CASE("weighted Watson series") {
    EvalConfig cfg;
    for (double x : {0.5, 1.0, 2.0}) {
        const auto inf = ShapeParam::infinity();
        const double coth = 1 / std::tanh(kPi * x);
        CHECK(rel(watson_series(*sequence(inf, 64), 1.0, x, cfg).value, kPi / (2 * x) * coth - 1 / (2 * x * x)) <
              1e-12);
        const auto zero = ShapeParam::zero();
        CHECK(rel(watson_series(*sequence(zero, 64), 1.0, x, cfg).value, watson_brute(zero, 1.0, x, 400000)) < 1e-10);
    }
    for (double p : {0.5, 1.0, 2.0}) {
        const auto sh = ShapeParam::finite(p);
        CHECK(rel(watson_series(*sequence(sh, 64), 2.0, 1.0, cfg).value, watson_brute(sh, 2.0, 1.0, 20000)) < 1e-10);
    }
}

TEST_CASE("Watson right sides: integral vs Bessel") {
    EvalConfig cfg;
    // p -> inf matches the classical K-Bessel evaluation.
    CHECK(rel(watson_rhs_integral(ShapeParam::infinity(), 0.75, 1.0, cfg), watson_classical(0.75, 1.0)) < 1e-10);
    CHECK(rel(watson_rhs_bessel(ShapeParam::infinity(), 0.75, 1.0, cfg), watson_classical(0.75, 1.0)) < 1e-10);
    // Strip consistency.
    for (double p : {0.5, 1.0, 2.0}) {
        const auto sh = ShapeParam::finite(p);
        for (double s : {0.55, 0.6, 0.75, 0.9, 0.95})
            for (double x : {0.5, 1.0, 2.0})
                CHECK(rel(watson_rhs_integral(sh, s, x, cfg), watson_rhs_bessel(sh, s, x, cfg)) < 1e-7);
    }
    // The integral term is exponentially suppressed at large x.
    const auto sh = ShapeParam::finite(1.0);
    const double x = 5;
    const cplx first_two = std::sqrt(kPi) * std::pow(x, 1 - 1.5) * kosh::gamma(0.25) / (2.0 * kosh::gamma(0.75)) -
                           std::pow(x, -1.5) / (2 * (1 + 1 / kPi));
    CHECK(std::abs(watson_integral_term(sh, 0.75, x, cfg)) < 1e-6 * std::abs(first_two));
}

TEST_CASE("Bessel right side equals the direct series and its s = 1 closed form") {
    EvalConfig cfg;
    for (double p : {0.5, 1.0, 2.0}) {
        const auto sh = ShapeParam::finite(p);
        const double ifac = 1 / (1 + 1 / (kPi * p));
        for (double x : {0.5, 1.0, 2.0}) {
            for (cplx s : {cplx(1.25), cplx(2.0), cplx(3.0), cplx(2.0, 1.0)})
                CHECK(rel(watson_series(*sequence(sh, 64), s, x, cfg).value, watson_rhs_bessel(sh, s, x, cfg)) < 1e-7);
            const double closed = kPi / x * naive_kernel(p, x).real() + kPi / (2 * x) - ifac / (2 * x * x);
            CHECK(rel(watson_rhs_bessel(sh, 1.0, x, cfg), closed) < 1e-9);
        }
    }
}

TEST_CASE("second Watson analogue") {
    EvalConfig cfg;
    // s = 1: the left side is sigma_p(2 pi x)/(2 sqrt x).
    for (double p : {0.5, 2.0})
        for (double x : {0.3, 1.0}) {
            const auto sh = ShapeParam::finite(p);
            CHECK(rel(watson2_rhs(sh, 1.0, x, cfg), sigma_p(sh, 2 * kPi * x) / (2 * std::sqrt(x))) < 1e-8);
        }
    double kint = 0, khalf = 0;
    for (int n = 1; n <= 30; ++n) {
        kint += std::pow(n, 1.5) * std::cyl_bessel_k(1.5, 2 * kPi * n);
        khalf += std::pow(2 * n - 1, 1.5) * std::cyl_bessel_k(1.5, kPi * (2 * n - 1));
    }
    CHECK(rel(watson2_rhs(ShapeParam::infinity(), 2.0, 1.0, cfg), kint) < 1e-8);
    CHECK(rel(watson2_rhs(ShapeParam::zero(), 2.0, 1.0, cfg), std::pow(2.0, -1.5) * khalf) < 1e-8);
    const auto sh = ShapeParam::finite(1.0);
    CHECK(rel(watson2_rhs(sh, cplx(1.5, 0.5), 0.7, cfg), watson2_lhs(*sequence(sh, 64), cplx(1.5, 0.5), 0.7, cfg)) <
          1e-7);
}

TEST_CASE("third Watson analogue reduces to the classical kernel at p -> inf") {
    EvalConfig cfg;
    // At p = inf the inner cosine is cos(m y u); the u-integral at s = 1 is sin(c)/c.
    const cplx gl = gauss_legendre([](double u) { return cplx(std::cos(3.0 * u)); }, 0.0, 1.0, 20);
    CHECK(std::abs(gl - std::sin(3.0) / 3.0) < 1e-15);
    const auto r = watson3_lhs(ShapeParam::finite(1.0), 1.5, 1.0, cfg);
    CHECK(r.terms_used > 0);
    CHECK(std::isfinite(r.value.real()));
    // Large p approaches the classical value.
    const auto big = watson3_lhs(ShapeParam::finite(1e6), 1.5, 1.0, cfg).value;
    const auto lim = watson3_lhs(ShapeParam::infinity(), 1.5, 1.0, cfg).value;
    CHECK(std::abs(big - lim) < 1e-5);
}

TEST_CASE("Bessel-like kernel K_{nu,p}") {
    EvalConfig cfg;
    for (double nu : {-0.25, 0.0, 0.3})
        for (double x : {0.5, 2.0}) {
            double plain = 0, alt = 0;
            for (int n = 1; n <= 200; ++n) {
                const double k = std::pow(n, nu) * std::cyl_bessel_k(std::abs(nu), x * n);  // K_{-nu} = K_nu
                plain += k;
                alt += (n % 2 ? -k : k);
            }
            const double pref = std::tgamma(0.5 - nu) * std::pow(2 * x, nu) / std::sqrt(kPi);
            CHECK(rel(k_kernel(ShapeParam::infinity(), nu, x, cfg), pref * plain) < 1e-9);
            CHECK(rel(k_kernel(ShapeParam::zero(), nu, x, cfg), pref * alt) < 1e-9);
        }
    // Refinement oracle.
    EvalConfig loose = cfg;
    loose.quad.rel_tol = 1e-10;
    const auto sh = ShapeParam::finite(1.0);
    CHECK(rel(k_kernel(sh, 0.0, 2.0, cfg), k_kernel(sh, 0.0, 2.0, loose)) < 1e-9);
    // Monotone approach to the p -> inf closed form.
    const cplx lim = k_kernel(ShapeParam::infinity(), -0.25, 1.0, cfg);
    double prev = 1e300;
    for (double p : {1.0, 10.0, 100.0, 1000.0}) {
        const double d = std::abs(k_kernel(ShapeParam::finite(p), -0.25, 1.0, cfg) - lim);
        CHECK(d < prev);
        prev = d;
    }
    CHECK_THROWS_AS(k_kernel(sh, 0.5, 1.0, cfg), DomainError);
}
