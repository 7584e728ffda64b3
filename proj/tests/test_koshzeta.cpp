#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kosh/epstein.hpp"
#include "kosh/koshzeta.hpp"
#include "kosh/specfun.hpp"

#include <cmath>

using namespace kosh;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

double zeta2_closed(double p) {
    const double r = 1 / (kPi * p);
    return kPi * kPi / 6 * (1 + 3 * r * (1 + r)) / ((1 + r) * (1 + r));
}

constexpr double kZeta3 = 1.2020569031595942854;

}  // namespace

TEST_CASE("Mellin coefficients") {
    const QuadratureSpec q;
    SUBCASE("nu -> inf leaves Gamma(s)^{-1} int x^{s-1} e^{-x} dx = 1") {
        for (cplx s : {cplx(0.5), cplx(1.5), cplx(2, 1)}) CHECK(std::abs(kosh_coeff(s, 3, 1e12, q) - 1.0) < 1e-9);
    }
    SUBCASE("k = 1, s = 1 has an elementary closed form") {
        // int_0^inf e^{-x} (nu - x)/(nu + x) dx = -1 + 2 nu e^{nu} E_1(nu)
        const double nu = 2 * kPi;
        const double oracle = -1 + 2 * nu * std::exp(nu) * (-std::expint(-nu));
        CHECK(std::abs(kosh_coeff(1.0, 1, nu, q) - oracle) < 1e-12);
        CHECK(std::abs(kosh_coeff(1.0, 1, nu, q) - kosh_coeff_fractional(1.0, 1, nu, q)) < 1e-9);
    }
    SUBCASE("Mellin and fractional-integral forms agree") {
        for (int k : {1, 2, 5, 12})
            for (cplx s : {cplx(0.75), cplx(2.5), cplx(1.5, 1.0)})
                CHECK(std::abs(kosh_coeff(s, k, 2 * kPi, q) - kosh_coeff_fractional(s, k, 2 * kPi, q)) < 1e-9);
    }
    SUBCASE("large k tends to (1 + 2/nu)^{-s}") {
        const double nu = 2 * kPi;
        const cplx s = 1.5;
        const cplx limit = std::pow(1 + 2 / nu, -s);
        const double d100 = std::abs(kosh_coeff(s, 100, nu, q) - limit);
        const double d200 = std::abs(kosh_coeff(s, 200, nu, q) - limit);
        CHECK(d200 < d100);
        CHECK(d200 < 1e-3);
        const auto c = kosh_coeff_asymptotic(s, nu, 4);
        CHECK(rel(c[0], limit) < 1e-15);
        cplx asym = 0;
        for (int r = 0; r < 4; ++r) asym += c[r] * std::pow(200.0, -2.0 * r);
        CHECK(std::abs(kosh_coeff(s, 200, nu, q) - asym) < 1e-10);
    }
    SUBCASE("distance to the limit is eventually decreasing (s = 2, p = 1)") {
        const cplx limit = std::pow(1 + 1 / kPi, -2.0);
        double prev = std::abs(kosh_coeff(2.0, 8, 2 * kPi, q) - limit);
        for (int k = 9; k <= 64; ++k) {
            const double d = std::abs(kosh_coeff(2.0, k, 2 * kPi, q) - limit);
            CHECK(d < prev);
            prev = d;
        }
    }
}

TEST_CASE("direct zeta_p") {
    EvalConfig cfg;
    const auto inf = ShapeParam::infinity();
    const auto v = zeta_p(inf, 2.0, *sequence(inf, cfg.series_N), cfg);
    CHECK(std::abs(v.value - kPi * kPi / 6) <= std::max(v.tail_bound, 1e-14));
    for (double p : {0.5, 1.0, 2.0}) {
        const auto sh = ShapeParam::finite(p);
        CHECK(rel(zeta_p(sh, 2.0, *sequence(sh, cfg.series_N), cfg).value, zeta2_closed(p)) < 1e-12);
        CHECK(rel(zeta_p_two_closed(sh), zeta2_closed(p)) < 1e-15);
    }
    const auto zero = ShapeParam::zero();
    CHECK(rel(zeta_p(zero, 3.0, *sequence(zero, cfg.series_N), cfg).value, 7 * kZeta3) < 1e-13);
    CHECK_THROWS_AS(zeta_p(inf, 1.0, *sequence(inf, 64), cfg), DomainError);
}

TEST_CASE("eta_p") {
    EvalConfig cfg;
    CHECK(rel(eta_p(ShapeParam::infinity(), 2.0, cfg).value, kPi * kPi / 6) < 1e-13);
    CHECK(rel(eta_p(ShapeParam::zero(), 2.0, cfg).value, -kPi * kPi / 12) < 1e-13);
    const auto sh = ShapeParam::finite(1.0);
    EvalConfig c2 = cfg;
    c2.series_N = 2 * cfg.series_N;
    const auto a = eta_p(sh, 2.5, cfg);
    const auto b = eta_p(sh, 2.5, c2);
    CHECK(std::abs(a.value - b.value) <= a.tail_bound + b.tail_bound + 1e-13);
    CHECK(std::abs(a.value - b.value) < 1e-10);
    CHECK_THROWS_AS(eta_p(sh, 0.5, cfg), DomainError);
}

TEST_CASE("continued zeta_p: special values and functional equation") {
    EvalConfig cfg;
    for (double p : {0.5, 1.0, 2.0}) {
        const auto sh = ShapeParam::finite(p);
        const double ifac = 1 / (1 + 1 / (kPi * p));
        CHECK(std::abs(zeta_p_continued(sh, 0.0, cfg) - (-0.5 * ifac)) < 1e-12);
        CHECK(std::abs(zeta_p_continued(sh, -2.0, cfg)) < 1e-12);
        CHECK(std::abs(zeta_p_em(sh, 0.0, cfg) - (-0.5 * ifac)) < 1e-10);
        // Euler-Maclaurin at negative s cancels terms of size lambda_N^{1 - s}.
        CHECK(std::abs(zeta_p_em(sh, -4.0, cfg)) < 1e-7);
        CHECK(std::abs(zeta_p_continued(sh, -4.0, cfg)) == 0.0);
        // zeta_p(1 - s) = 2 cos(pi s/2) Gamma(s) (2 pi)^{-s} eta_p(s): the left
        // side by Euler-Maclaurin, the right side from the coefficients.
        for (double s : {1.5, 2.0, 2.5, 3.0}) {
            const cplx lhs = zeta_p_em(sh, 1 - s, cfg);
            const cplx rhs = 2 * std::cos(kPi * s / 2) * kosh::gamma(s) * std::pow(2 * kPi, -s) * eta_p(sh, s, cfg).value;
            CHECK(std::abs(lhs - rhs) / (1 + std::abs(lhs)) < 1e-6);
        }
    }
    CHECK_THROWS_AS(zeta_p_continued(ShapeParam::finite(1.0), 0.5, cfg), DomainError);
}

TEST_CASE("zeta_p(-1/2) approaches zeta(-1/2) along the p-ladder") {
    EvalConfig cfg;
    const double classical = riemann_zeta(-0.5).real();
    CHECK(std::abs(classical - (-0.2078862249773545)) < 1e-13);
    double prev = 1e300;
    for (double p : {1.0, 10.0, 100.0, 1e3, 1e4}) {
        const double d = std::abs(zeta_p_continued(ShapeParam::finite(p), -0.5, cfg).real() - classical);
        CHECK(d < prev);
        prev = d;
    }
    CHECK(prev < 1e-4);
    CHECK(std::abs(zeta_p_continued(ShapeParam::infinity(), -0.5, cfg) - classical) < 1e-12);
}

TEST_CASE("zeta_p(s) moves monotonically toward zeta(s) along the p-ladder") {
    EvalConfig cfg;
    for (double s : {1.5, 2.0, 3.0}) {
        const double classical = riemann_zeta(s).real();
        double prev_gap = 1e300;
        for (double p : {10.0, 100.0, 1e3, 1e4}) {
            const double gap = std::abs(zeta_p_em(ShapeParam::finite(p), s, cfg).real() - classical);
            CHECK(gap < prev_gap);
            prev_gap = gap;
        }
    }
}

TEST_CASE("generalized Euler constants") {
    EvalConfig cfg;
    const auto k = constants(ShapeParam::infinity(), cfg);
    CHECK(std::abs(k.c1 - kEulerGamma) < 1e-10);
    CHECK(std::abs(k.c2 - kEulerGamma) < 1e-10);
    CHECK(std::abs(k.gamma_p - kEulerGamma) < 1e-10);
    CHECK(std::abs(k.zeta_prime0 - (-0.5 * kLn2Pi)) < 1e-10);

    const auto sh = ShapeParam::finite(1.0);
    CHECK(std::abs(c1_ladder(sh, 8, 13) - c1_ladder(sh, 9, 14)) < 1e-6);
    const auto k1 = constants(sh, cfg);
    CHECK(std::isfinite(k1.c1));
    CHECK(std::isfinite(k1.c2));
    CHECK(std::abs(k1.q0 - expint_e1(2 * kPi)) < 1e-14);

    // Laurent constant of zeta_p(2s) at s = 1/2 reproduces C^(1).
    const auto L = laurent_extract([&](double s) { return zeta_p_em(sh, 2 * s, cfg); }, 0.5, cfg);
    CHECK(std::abs(L.residue - 0.5) < 1e-8);
    CHECK(std::abs(L.constant_term - k1.c1) < 1e-5);

    const auto k0 = constants(ShapeParam::zero(), cfg);
    CHECK(std::abs(k0.c2 + kLn2) < 1e-10);
    CHECK(std::abs(k0.c1 - (kEulerGamma + 2 * kLn2)) < 1e-10);
}

TEST_CASE("sigma ratio and sigma_p series") {
    EvalConfig cfg;
    CHECK(sigma_ratio(ShapeParam::infinity(), cplx(3, 1)) == cplx(1.0));
    CHECK(sigma_ratio(ShapeParam::zero(), cplx(3, 1)) == cplx(-1.0));
    CHECK(std::abs(sigma_ratio(ShapeParam::finite(2.0), 1.0) - 3.0) < 1e-15);
    CHECK_THROWS_AS(sigma_ratio(ShapeParam::finite(2.0), 2.0), PoleError);

    const cplx z(0.7, 0.4);
    const auto inf = ShapeParam::infinity();
    const auto zero = ShapeParam::zero();
    CHECK(rel(sigma_p_series(inf, z, *sequence(inf, 200), cfg).value, std::exp(-z) / (1.0 - std::exp(-z))) < 1e-13);
    CHECK(rel(sigma_p_series(zero, z, *sequence(zero, 200), cfg).value, std::exp(-z / 2.0) / (1.0 - std::exp(-z))) <
          1e-13);
    const auto sh = ShapeParam::finite(1.0);
    const auto a = sigma_p_series(sh, 1.0, *sequence(sh, 40), cfg);
    const auto b = sigma_p_series(sh, 1.0, *sequence(sh, 80), cfg);
    CHECK(std::abs(a.value - b.value) <= a.tail_bound + 1e-15);
    CHECK(std::abs(sigma_p(sh, 1.0) - b.value) < 1e-14);
    CHECK_THROWS_AS(sigma_p_series(sh, cplx(-1.0), *sequence(sh, 40), cfg), DomainError);
}
