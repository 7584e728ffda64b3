#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kosh/sequence.hpp"

#include <cmath>
#include <thread>
#include <vector>

using namespace kosh;

namespace {

// Plain bisection on p sin(pi y) + y cos(pi y) over (n - 1/2, n), used as an
// oracle independent of the offset formulation in the library.
double bisect_root(double p, int n, int steps) {
    auto f = [p](double y) { return p * std::sin(kPi * y) + y * std::cos(kPi * y); };
    double lo = n - 0.5, hi = static_cast<double>(n);
    const double flo = f(lo);
    for (int i = 0; i < steps; ++i) {
        const double mid = 0.5 * (lo + hi);
        if ((f(mid) > 0) == (flo > 0))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("roots are bracketed and solve the transcendental equation") {
    for (double p : {0.1, 0.5, 1.0, 2.0, 10.0, 100.0}) {
        const auto shape = ShapeParam::finite(p);
        const auto seq = build_sequence(shape, 200);
        REQUIRE(seq.capacity() >= 200);
        for (int n = 1; n <= 200; ++n) {
            const double l = seq.lambda(n);
            CHECK(l > n - 0.5);
            CHECK(l < n);
            CHECK(root_residual(shape, n, seq.offset(n)) < 1e-12);
        }
    }
}

TEST_CASE("limit shapes give the integer and half-integer lattices") {
    CHECK(solve_lambda(ShapeParam::infinity(), 7) == 7.0);
    CHECK(solve_lambda(ShapeParam::zero(), 3) == 2.5);
    CHECK(weight(ShapeParam::infinity(), 3.0) == 1.0);
    CHECK(weight(ShapeParam::zero(), 2.5) == 1.0);
}

TEST_CASE("first root at p = 1 agrees with plain bisection") {
    const double oracle = bisect_root(1.0, 1, 200);
    CHECK(std::abs(solve_lambda(ShapeParam::finite(1.0), 1) - oracle) < 1e-13);
    for (int n : {2, 17, 150}) {
        CHECK(std::abs(solve_lambda(ShapeParam::finite(1.0), n) - bisect_root(1.0, n, 200)) < 1e-12);
    }
}

TEST_CASE("large p approaches the integers") {
    const double p = 1e4;
    for (int n = 1; n <= 20; ++n) CHECK(std::abs(solve_lambda(ShapeParam::finite(p), n) - n) < 1e-3);
}

TEST_CASE("small p approaches the half-integers") {
    const double p = 1e-4;
    for (int n = 1; n <= 20; ++n)
        CHECK(std::abs(solve_lambda(ShapeParam::finite(p), n) - (n - 0.5)) < 1e-3);
}

TEST_CASE("weights match their defining ratio and tend to one") {
    const double p = 2.0;
    const auto seq = build_sequence(ShapeParam::finite(p), 100);
    for (int n : {1, 5, 50, 100}) {
        const double l = seq.lambda(n);
        const double w = (p * p + l * l) / (p * (p + 1.0 / kPi) + l * l);
        CHECK(seq.weight(n) == doctest::Approx(w).epsilon(1e-15));
        CHECK(seq.weight(n) < 1.0);
    }
    CHECK(std::abs(seq.weight(100) - 1.0) < 1e-4);
    CHECK(seq.weight_bound() >= 1.0);
}

TEST_CASE("lambda_n(p) increases monotonically along the p-ladder") {
    for (int n : {1, 3, 10}) {
        double prev = n - 0.5;
        for (double p : {1e-3, 1e-1, 1.0, 10.0, 1e3}) {
            const double l = solve_lambda(ShapeParam::finite(p), n);
            CHECK(l > prev);
            prev = l;
        }
        CHECK(prev < n);
    }
}

TEST_CASE("sequence cache grows and is safe under concurrent access") {
    const auto shape = ShapeParam::finite(0.5);
    const auto a = sequence(shape, 10);
    const auto b = sequence(shape, 500);
    REQUIRE(b->capacity() >= 500);
    CHECK(a->lambda(10) == b->lambda(10));

    std::vector<std::thread> pool;
    std::vector<double> seen(8);
    for (int t = 0; t < 8; ++t)
        pool.emplace_back([&, t] { seen[t] = sequence(ShapeParam::finite(3.0), 100 + 50 * t)->lambda(100); });
    for (auto& th : pool) th.join();
    for (double v : seen) CHECK(v == seen[0]);
}

TEST_CASE("shape parsing") {
    CHECK(ShapeParam::parse("inf").is_infinity());
    CHECK(ShapeParam::parse("0").is_zero());
    CHECK(ShapeParam::parse("2.5").p() == 2.5);
    CHECK_THROWS(ShapeParam::parse("-1"));
    CHECK_THROWS(ShapeParam::parse("abc"));
    CHECK(ShapeParam::finite(2.0).sigma(1.0) == doctest::Approx(3.0));
    CHECK_THROWS_AS(ShapeParam::finite(2.0).sigma(2.0), PoleError);
}
