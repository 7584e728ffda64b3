#include "kosh/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <map>
#include <mutex>

namespace kosh {

namespace bq = boost::math::quadrature;

cplx integrate_gk(const ComplexFn& f, double a, double b, const QuadratureSpec& q, double* error) {
    double err = 0.0;
    const cplx v = bq::gauss_kronrod<double, 31>::integrate(f, a, b, static_cast<unsigned>(q.max_depth),
                                                            q.rel_tol, &err);
    if (error) *error = err;
    return v;
}

double integrate_gk_real(const RealFn& f, double a, double b, const QuadratureSpec& q, double* error) {
    double err = 0.0;
    const double v = bq::gauss_kronrod<double, 31>::integrate(f, a, b, static_cast<unsigned>(q.max_depth),
                                                              q.rel_tol, &err);
    if (error) *error = err;
    return v;
}

cplx integrate_ts(const ComplexFn& f, double a, double b, const QuadratureSpec& q, double* error) {
    thread_local bq::tanh_sinh<double> rule(15);
    double err = 0.0, l1 = 0.0;
    std::size_t levels = 0;
    const cplx v = rule.integrate(f, a, b, q.rel_tol, &err, &l1, &levels);
    if (error) *error = err;
    return v;
}

cplx integrate_es(const ComplexFn& f, double a, const QuadratureSpec& q, double* error) {
    thread_local bq::exp_sinh<double> rule(12);
    double err = 0.0, l1 = 0.0;
    std::size_t levels = 0;
    const cplx v = rule.integrate(f, a, std::numeric_limits<double>::infinity(), q.rel_tol, &err, &l1, &levels);
    if (error) *error = err;
    return v;
}

cplx integrate_panels(const ComplexFn& f, const std::vector<double>& breaks, const QuadratureSpec& q,
                      double* error) {
    cplx total = 0.0;
    double err_total = 0.0;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
        double err = 0.0;
        total += integrate_gk(f, breaks[k], breaks[k + 1], q, &err);
        err_total += err;
    }
    if (error) *error = err_total;
    return total;
}

namespace {

struct GLRule {
    std::vector<double> x, w;
};

GLRule make_gauss_legendre(int n) {
    GLRule r;
    r.x.resize(static_cast<std::size_t>(n));
    r.w.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
            }
            const double dp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::fabs(dz) < 1e-16) {
                r.x[static_cast<std::size_t>(i)] = z;
                r.w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
                break;
            }
        }
        if (r.w[static_cast<std::size_t>(i)] == 0.0) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
            }
            const double dp = n * (z * p0 - p1) / (z * z - 1.0);
            r.x[static_cast<std::size_t>(i)] = z;
            r.w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
    }
    return r;
}

const GLRule& gl_rule(int n) {
    static std::mutex mutex;
    static std::map<int, GLRule> rules;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = rules.find(n);
    if (it == rules.end()) it = rules.emplace(n, make_gauss_legendre(n)).first;
    return it->second;
}

}  // namespace

cplx gauss_legendre(const ComplexFn& f, double a, double b, int n) {
    const GLRule& r = gl_rule(n);
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    cplx s = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(mid + half * r.x[i]);
    return half * s;
}

cplx levin_u(const std::vector<cplx>& terms, double* error) {
    const std::size_t n = terms.size();
    if (n == 0) {
        if (error) *error = 0.0;
        return 0.0;
    }
    const double beta = 1.0;
    std::vector<cplx> num(n), den(n);
    cplx partial = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        partial += terms[j];
        const cplx omega = (beta + static_cast<double>(j)) * terms[j];
        if (std::abs(omega) == 0.0) {
            // Exact termination: the partial sum is the answer.
            if (error) *error = 0.0;
            return partial;
        }
        num[j] = partial / omega;
        den[j] = 1.0 / omega;
    }
    cplx prev = num[0] / den[0], last = prev;
    // Transform order k consumes one entry per step; keep the top-level value.
    for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t j = 0; j + k < n; ++j) {
            const double bj = beta + static_cast<double>(j);
            const double ratio = bj * std::pow((bj + k - 1.0) / (bj + k), static_cast<double>(k) - 2.0) / (bj + k);
            num[j] = num[j + 1] - ratio * num[j];
            den[j] = den[j + 1] - ratio * den[j];
        }
        prev = last;
        last = num[0] / den[0];
    }
    if (error) *error = std::abs(last - prev);
    return last;
}

cplx richardson(const std::vector<cplx>& values, double ratio, double order) {
    std::vector<cplx> t = values;
    for (std::size_t k = 1; k < t.size(); ++k) {
        const double f = std::pow(ratio, order * static_cast<double>(k));
        for (std::size_t j = 0; j + k < t.size(); ++j) t[j] = t[j + 1] + (t[j + 1] - t[j]) / (f - 1.0);
    }
    return t.empty() ? cplx(0.0) : t[0];
}

}  // namespace kosh
