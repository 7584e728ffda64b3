#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kosh/epstein.hpp"
#include "kosh/koshzeta.hpp"
#include "kosh/specfun.hpp"

#include <cmath>

using namespace kosh;

namespace {

constexpr double kCatalan = 0.91596559417721901505;

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

EpsteinParams make(double p, double pp, double c) {
    return {ShapeParam::from_double(p), ShapeParam::from_double(pp), c};
}

// Brute-force sum over the box |m|, |n| <= M of (a_m^2 + c b_n^2)^{-s}
// with a_m, b_n on the integer or half-integer lattice.
double lattice_brute(bool half_m, bool half_n, double s, double c, int M) {
    double sum = 0;
    for (int m = -M; m <= M; ++m)
        for (int n = -M; n <= M; ++n) {
            const double a = half_m ? m - 0.5 : m;
            const double b = half_n ? n - 0.5 : n;
            const double q = a * a + c * b * b;
            if (q > 0) sum += std::pow(q, -s);
        }
    return sum;
}

// log|eta(i)| from the Dedekind product e^{-pi/12} prod (1 - e^{-2 pi n}).
double log_eta_i_product() {
    double acc = -kPi / 12;
    for (int n = 1; n < 30; ++n) acc += std::log1p(-std::exp(-2 * kPi * n));
    return acc;
}

}  // namespace

TEST_CASE("first analogue: direct lattice sums") {
    EvalConfig cfg;
    const auto classical = epstein1_direct(make(INFINITY, INFINITY, 1), 2.0, cfg);
    // sum'(m^2 + n^2)^{-2} = 4 zeta(2) beta(2)
    CHECK(rel(classical.value, 4 * kPi * kPi / 6 * kCatalan) < 1e-12);
    CHECK(rel(classical.value, lattice_brute(false, false, 2.0, 1.0, 1500)) < 1e-5);
    // Integer x half-integer lattice: p = inf, p' = 0.
    CHECK(rel(epstein1_direct(make(INFINITY, 0, 2), 2.0, cfg).value, lattice_brute(false, true, 2.0, 2.0, 1500)) <
          1e-5);
    EvalConfig wide = cfg;
    wide.series_N = 2 * cfg.series_N;
    const auto a = epstein1_direct(make(1, 1, 2), 1.5, cfg);
    const auto b = epstein1_direct(make(1, 1, 2), 1.5, wide);
    CHECK(rel(a.value, b.value) < 1e-9);
    CHECK_THROWS_AS(epstein1_direct(make(1, 1, 2), 0.8, cfg), DomainError);
}

TEST_CASE("first analogue: continuation") {
    EvalConfig cfg;
    // Swap symmetry c^{-s} zeta_{p',p}(s, 1/c) = zeta_{p,p'}(s, c).
    for (cplx s : {cplx(0.25), cplx(-0.7, 0.4)}) {
        const auto prm = make(1, 2, 2);
        const cplx lhs = std::pow(2.0, -s) * epstein1_continued(make(2, 1, 0.5), s, cfg);
        CHECK(rel(lhs, epstein1_continued(prm, s, cfg)) < 1e-8);
    }
    CHECK(rel(epstein1_continued(make(INFINITY, INFINITY, 1), 0.25, cfg),
              epstein1_bessel(make(INFINITY, INFINITY, 1), 0.25, cfg)) < 1e-9);
    CHECK(rel(epstein1_continued(make(1, 1, 1), 0.52, cfg), epstein1_bessel(make(1, 1, 1), 0.52, cfg)) < 1e-8);
    // Direct and Bessel forms overlap for Re s > 1.
    CHECK(rel(epstein1_direct(make(1, 2, 3), 1.5, cfg).value, epstein1_bessel(make(1, 2, 3), 1.5, cfg)) < 1e-9);
    CHECK_THROWS_AS(epstein1_bessel(make(1, 2, 3), 1.0, cfg), PoleError);
}

TEST_CASE("Laurent extraction") {
    EvalConfig cfg;
    const auto L = laurent_extract([](double s) { return cplx(1 / (s - 1) + kEulerGamma); }, 1.0, cfg);
    CHECK(std::abs(L.residue - 1.0) < 1e-12);
    CHECK(std::abs(L.constant_term - kEulerGamma) < 1e-10);
    CHECK(L.eps_used == cfg.pole_eps);
}

TEST_CASE("residues of both analogues") {
    EvalConfig cfg;
    for (double p : {0.5, 1.0, 2.0})
        for (double pp : {0.5, 1.0, 2.0})
            for (double c : {1.0, 2.0, 4.0}) {
                const auto prm = make(p, pp, c);
                const auto L1 = laurent_extract([&](double s) { return epstein1_bessel(prm, s, cfg); }, 1.0, cfg);
                CHECK(std::abs(L1.residue - kPi / std::sqrt(c)) < 1e-4);
                const auto L2 = laurent_extract(
                    [&](double s) { return epstein2(prm, s, cfg, Epstein2Route::selberg_chowla); }, 1.0, cfg);
                CHECK(std::abs(L2.residue - kPi / (std::sqrt(c) * (1 + 1 / (kPi * p)))) < 1e-4);
            }
}

TEST_CASE("Kronecker constants: closed form vs extraction") {
    EvalConfig cfg;
    for (double p : {0.5, 1.0, 2.0})
        for (double pp : {0.5, 1.0, 2.0})
            for (double c : {1.0, 2.0, 4.0}) {
                const auto prm = make(p, pp, c);
                const auto L1 = laurent_extract([&](double s) { return epstein1_bessel(prm, s, cfg); }, 1.0, cfg);
                CHECK(std::abs(L1.constant_term - kronecker1_constant(prm, cfg)) < 1e-5);
                const auto L2 = laurent_extract(
                    [&](double s) { return epstein2(prm, s, cfg, Epstein2Route::selberg_chowla); }, 1.0, cfg);
                CHECK(std::abs(L2.constant_term - kronecker2_constant(prm, cfg)) < 1e-5);
            }
}

TEST_CASE("classical Kronecker limit constant at c = 1") {
    EvalConfig cfg;
    const double log_eta = std::log(std::tgamma(0.25) / (2 * std::pow(kPi, 0.75)));
    CHECK(std::abs(log_eta - log_eta_i_product()) < 1e-14);
    const double oracle = kPi * (2 * kEulerGamma - std::log(4.0) - 4 * log_eta);
    const auto prm = make(INFINITY, INFINITY, 1);
    CHECK(std::abs(kronecker1_constant(prm, cfg) - oracle) < 1e-6);
    const auto L = laurent_extract([&](double s) { return epstein1_bessel(prm, s, cfg); }, 1.0, cfg);
    CHECK(std::abs(L.constant_term - oracle) < 1e-6);
}

TEST_CASE("central value of the first analogue") {
    EvalConfig cfg;
    // p' -> inf and large c: 2 C^(1) + log(c/4) - 2 log(2 pi) up to O(e^{-pi sqrt c}).
    for (double p : {1.0, double(INFINITY)}) {
        const auto sh = ShapeParam::from_double(p);
        const double c1 = constants(sh, cfg).c1;
        const double c = 100;
        CHECK(std::abs(epstein1_central({sh, ShapeParam::infinity(), c}, cfg) -
                       (2 * c1 + std::log(c / 4) - 2 * std::log(2 * kPi))) < 1e-8);
    }
    for (auto prm : {make(INFINITY, INFINITY, 1), make(1, 2, 3), make(0, INFINITY, 1)}) {
        const auto L = laurent_extract([&](double s) { return epstein1_bessel(prm, s, cfg); }, 0.5, cfg);
        CHECK(std::abs(L.constant_term - epstein1_central(prm, cfg)) < 1e-5);
    }
}

TEST_CASE("real zero on (1/2, 1)") {
    EvalConfig cfg;
    const auto z = real_zero(make(INFINITY, INFINITY, 100), cfg);
    CHECK(z.root > 0.5);
    CHECK(z.root < 1.0);
    CHECK(z.hi - z.lo <= 1e-8);
    CHECK(z.value_at_half > 0);
    const auto prm = make(INFINITY, INFINITY, 100);
    CHECK(epstein1_continued(prm, z.lo, cfg).real() * epstein1_continued(prm, z.hi, cfg).real() <= 0);
    CHECK_THROWS_AS(real_zero(make(1, INFINITY, 1), cfg), DomainError);

    std::vector<double> grid;
    for (int c = 10; c <= 200; c += 10) grid.push_back(c);
    const auto t = smallest_c_with_zero(ShapeParam::infinity(), grid, cfg);
    REQUIRE(t.has_value());
    // Classical threshold: sqrt(c) > 7.0174...
    CHECK(t->c == 50.0);
    CHECK(!smallest_c_with_zero(ShapeParam::infinity(), {1.0, 2.0}, cfg).has_value());
}

TEST_CASE("second analogue") {
    EvalConfig cfg;
    const double classical = 4 * kPi * kPi / 6 * kCatalan;
    const auto ii = make(INFINITY, INFINITY, 1);
    CHECK(rel(epstein2(ii, 2.0, cfg, Epstein2Route::definition), classical) < 1e-10);
    CHECK(rel(epstein2(ii, 2.0, cfg, Epstein2Route::selberg_chowla), classical) < 1e-10);
    const auto prm = make(1, 2, 3);
    CHECK(rel(epstein2(prm, 1.5, cfg, Epstein2Route::definition), epstein2(prm, 1.5, cfg, Epstein2Route::selberg_chowla)) <
          1e-6);
    CHECK_THROWS_AS(epstein2(prm, 0.5, cfg, Epstein2Route::definition), DomainError);
}

TEST_CASE("functional equation of the second analogue") {
    EvalConfig cfg;
    CHECK(epstein2_functional_eq_residual(make(1, 1, 2), 0.5, cfg) < 1e-14);
    CHECK(epstein2_functional_eq_residual(make(INFINITY, INFINITY, 1), 2.0, cfg) < 1e-8);
    for (double s : {1.3, 1.7, 2.5}) CHECK(epstein2_functional_eq_residual(make(1, 0.5, 2), s, cfg) < 1e-6);
}

TEST_CASE("central value of the second analogue") {
    EvalConfig cfg;
    for (auto prm : {make(INFINITY, INFINITY, 1), make(1, 2, 4)}) {
        const auto L = laurent_extract(
            [&](double s) { return epstein2(prm, s, cfg, Epstein2Route::selberg_chowla); }, 0.5, cfg);
        CHECK(std::abs(L.constant_term - epstein2_central(prm, cfg)) < 1e-5);
    }
}
