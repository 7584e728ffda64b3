#include "kosh/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace kosh {

namespace {

// k(eps) = p cos(pi eps) - (n - 1/2 + eps) sin(pi eps) equals (-1)^{n+1} h(y)
// at y = n - 1/2 + eps, so its zero on (0, 1/2) is the n-th root.
struct OffsetEquation {
    double p;
    double base;  // n - 1/2
    double value(double e) const {
        return p * std::cos(kPi * e) - (base + e) * std::sin(kPi * e);
    }
    double derivative(double e) const {
        const double s = std::sin(kPi * e), c = std::cos(kPi * e);
        return -kPi * p * s - s - kPi * (base + e) * c;
    }
};

constexpr int kIterationCap = 200;

}  // namespace

double root_residual(const ShapeParam& shape, int n, double eps) {
    if (!shape.is_finite()) return 0.0;
    const long double pi = 3.141592653589793238462643383279502884L;
    const long double y = (static_cast<long double>(n) - 0.5L) + static_cast<long double>(eps);
    const long double p = shape.p();
    // Reduce pi*y exactly: y = n - 1/2 + eps, so sin/cos follow from pi*eps.
    const long double se = std::sin(pi * static_cast<long double>(eps));
    const long double ce = std::cos(pi * static_cast<long double>(eps));
    const long double sgn = (n % 2 == 1) ? 1.0L : -1.0L;  // (-1)^{n+1}
    const long double sin_py = sgn * ce;
    const long double cos_py = -sgn * se;
    return static_cast<double>(std::fabs(p * sin_py + y * cos_py));
}

double solve_offset(const ShapeParam& shape, int n, double tol) {
    if (n < 1) throw std::invalid_argument("solve_lambda: n must be >= 1");
    if (!(tol > 0)) throw std::invalid_argument("solve_lambda: tol must be > 0");
    if (shape.is_infinity()) return 0.5;
    if (shape.is_zero()) return 0.0;

    const OffsetEquation eq{shape.p(), n - 0.5};
    // Open the bracket slightly so an exact endpoint zero cannot fool the sign test.
    double lo = 1e-15 * n, hi = 0.5 - 1e-15 * n;
    double flo = eq.value(lo), fhi = eq.value(hi);
    if (!(flo > 0 && fhi < 0)) {
        lo = 0.0;
        hi = 0.5;
        flo = eq.value(lo);
        fhi = eq.value(hi);
        if (!(flo > 0 && fhi < 0))
            throw ConvergenceError("solve_lambda: bracket failure at n = " + std::to_string(n));
    }

    // A few bisection steps shrink the bracket, then safeguarded Newton.
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < kIterationCap; ++it) {
        const double f = eq.value(x);
        if (f > 0) lo = x; else hi = x;
        if (f == 0.0 || hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() * std::max(x, 1e-300))
            break;
        double next = 0.5 * (lo + hi);
        if (it >= 3) {
            const double d = eq.derivative(x);
            const double newton = x - f / d;
            if (d != 0.0 && newton > lo && newton < hi) next = newton;
        }
        if (next == x) break;
        x = next;
    }
    // The residual is accepted relative to the size p + y of the equation's
    // coefficients: for large p one ulp of the offset already moves
    // p sin(pi y) + y cos(pi y) by about pi p * 2^-53.
    const double scale = std::max(1.0, shape.p() + n);
    if (root_residual(shape, n, x) >= tol * scale) {
        // Polish by one more bisection sweep before giving up.
        for (int it = 0; it < 64 && hi > lo; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            if (eq.value(mid) > 0) lo = mid; else hi = mid;
        }
        x = std::fabs(eq.value(lo)) < std::fabs(eq.value(hi)) ? lo : hi;
        if (root_residual(shape, n, x) >= tol * scale)
            throw ConvergenceError("solve_lambda: residual above tolerance at n = " + std::to_string(n));
    }
    return x;
}

double solve_lambda(const ShapeParam& shape, int n, double tol) {
    if (shape.is_infinity()) {
        if (n < 1) throw std::invalid_argument("solve_lambda: n must be >= 1");
        return static_cast<double>(n);
    }
    return (n - 0.5) + solve_offset(shape, n, tol);
}

double weight(const ShapeParam& shape, double lambda) {
    if (!(lambda > 0)) throw std::invalid_argument("weight: lambda must be > 0");
    if (!shape.is_finite()) return 1.0;
    const double p = shape.p();
    const double l2 = lambda * lambda;
    return (p * p + l2) / (p * (p + 1.0 / kPi) + l2);
}

KoshSequence::KoshSequence(ShapeParam shape, std::vector<double> offsets)
    : shape_(shape), offsets_(std::move(offsets)) {
    roots_.reserve(offsets_.size());
    weights_.reserve(offsets_.size());
    for (std::size_t k = 0; k < offsets_.size(); ++k) {
        const double lam = (static_cast<double>(k) + 0.5) + offsets_[k];
        roots_.push_back(lam);
        weights_.push_back(kosh::weight(shape_, lam));
        weight_bound_ = std::max(weight_bound_, weights_.back());
    }
}

KoshSequence build_sequence(const ShapeParam& shape, int N, double tol) {
    if (N < 1) throw std::invalid_argument("build_sequence: N must be >= 1");
    std::vector<double> offsets;
    offsets.reserve(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n) {
        try {
            offsets.push_back(solve_offset(shape, n, tol));
        } catch (const ConvergenceError& e) {
            throw ConvergenceError(std::string("build_sequence: root ") + std::to_string(n) + ": " + e.what());
        }
    }
    return KoshSequence(shape, std::move(offsets));
}

std::shared_ptr<const KoshSequence> SequenceCache::get(const ShapeParam& shape, int N) {
    const auto key = std::make_pair(static_cast<int>(shape.kind()), shape.is_finite() ? shape.p() : 0.0);
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = entries_.find(key);
    if (it != entries_.end() && it->second->capacity() >= N) return it->second;
    int cap = N;
    if (it != entries_.end()) cap = 2 * N;
    auto seq = std::make_shared<const KoshSequence>(build_sequence(shape, cap, 1e-12));
    entries_[key] = seq;
    return seq;
}

void SequenceCache::clear() {
    std::lock_guard<std::mutex> lock(mutex_);
    entries_.clear();
}

SequenceCache& global_sequence_cache() {
    static SequenceCache cache;
    return cache;
}

std::shared_ptr<const KoshSequence> sequence(const ShapeParam& shape, int N) {
    return global_sequence_cache().get(shape, N);
}

}  // namespace kosh
