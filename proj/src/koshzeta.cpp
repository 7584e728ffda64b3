#include "kosh/koshzeta.hpp"

#include "kosh/quadrature.hpp"
#include "kosh/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace kosh {

namespace {

using Jet = std::vector<cplx>;  // Taylor coefficients in u = lambda - lambda_N

Jet jet_mul(const Jet& a, const Jet& b, std::size_t len) {
    Jet r(len, 0.0);
    for (std::size_t i = 0; i < len && i < a.size(); ++i)
        for (std::size_t j = 0; i + j < len && j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

Jet jet_div(const Jet& a, const Jet& b, std::size_t len) {
    Jet r(len, 0.0);
    for (std::size_t i = 0; i < len; ++i) {
        cplx acc = i < a.size() ? a[i] : 0.0;
        for (std::size_t j = 1; j <= i && j < b.size(); ++j) acc -= b[j] * r[i - j];
        r[i] = acc / b[0];
    }
    return r;
}

Jet jet_deriv(const Jet& a) {
    Jet r(a.size() > 1 ? a.size() - 1 : 1, 0.0);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = static_cast<double>(i) * a[i];
    return r;
}

constexpr int kEmTerms = 12;

// Euler-Maclaurin tail sum_{n >= N} w(lambda(n)) lambda(n)^{-s}, given
// lambda_N.  When `regular` is set the term 1/(s-1) is left out.
// `last_term` receives the magnitude of the final Bernoulli correction.
cplx em_tail(const ShapeParam& shape, cplx s, double lamN, bool regular, double* last_term) {
    const std::size_t len = 2 * kEmTerms + 1;
    Jet w(len, 0.0);
    if (shape.is_finite()) {
        const double p = shape.p();
        Jet num(len, 0.0), den(len, 0.0);
        num[0] = p * p + lamN * lamN;
        num[1] = 2.0 * lamN;
        num[2] = 1.0;
        den = num;
        den[0] += p / kPi;
        w = jet_div(num, den, len);
    } else {
        w[0] = 1.0;
    }
    const double logl = std::log(lamN);
    const cplx lam_s = std::exp(-s * logl);
    Jet pw(len, 0.0);  // lambda^{-s} = lamN^{-s} (1 + u/lamN)^{-s}
    cplx binom = 1.0;
    double inv = 1.0;
    for (std::size_t i = 0; i < len; ++i) {
        pw[i] = lam_s * binom * inv;
        binom *= (-s - static_cast<double>(i)) / static_cast<double>(i + 1);
        inv /= lamN;
    }
    Jet g = jet_mul(w, pw, len);  // f(t) as a jet in lambda
    cplx total = regular ? -logl * expm1_over((1.0 - s) * logl) : lamN * lam_s / (s - 1.0);
    total += 0.5 * g[0];
    double fact = 2.0;  // (2k)!
    double last = 0.0;
    for (int j = 1; j <= 2 * kEmTerms - 1; ++j) {
        g = jet_mul(w, jet_deriv(g), g.size() - 1);  // d/dt = w d/dlambda
        if (j % 2 == 1) {
            const int k = (j + 1) / 2;
            const cplx term = bernoulli_b2k(k) / fact * g[0];
            total -= term;
            last = std::abs(term);
            fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
        }
    }
    if (last_term) *last_term = last;
    return total;
}

int em_cutoff(cplx s, const EvalConfig& cfg) {
    return std::max(32, cfg.series_N / 2) + static_cast<int>(std::ceil(2.0 * std::abs(s)));
}

cplx em_value(const ShapeParam& shape, cplx s, const EvalConfig& cfg, bool regular) {
    const int N = em_cutoff(s, cfg);
    const auto seq = sequence(shape, N);
    cplx sum = 0.0;
    for (int n = 1; n < N; ++n) sum += seq->weight(n) * std::exp(-s * std::log(seq->lambda(n)));
    return sum + em_tail(shape, s, seq->lambda(N), regular, nullptr);
}

bool is_nonpositive_even_integer(cplx s) {
    return s.imag() == 0.0 && s.real() < 0.0 && std::fmod(-s.real(), 2.0) == 0.0;
}

// -2 k atanh(r) written to stay finite at r = 1.
double log_ratio_power(int k, double r) {
    if (r >= 1.0) return -std::numeric_limits<double>::infinity();
    return -2.0 * k * std::atanh(r);
}

constexpr int kEtaDirectTerms = 30;
constexpr int kEtaAsymptoticOrder = 8;

}  // namespace

// ---------------------------------------------------------------------------
// Coefficients.
// ---------------------------------------------------------------------------
cplx kosh_coeff(cplx s, int k, double nu, const QuadratureSpec& q) {
    if (!(s.real() > 0)) throw DomainError("kosh_coeff: Re s must be positive");
    if (k < 1 || !(nu > 0)) throw DomainError("kosh_coeff: need k >= 1 and nu > 0");
    const double a = k * nu;
    const double cut = 60.0 + 4.0 * std::abs(s);
    const cplx sm1 = s - 1.0;
    auto inner = [&](double x) -> cplx {
        if (x <= 0.0) return 0.0;
        return std::exp(sm1 * std::log(x) - x + log_ratio_power(k, x / a));
    };
    cplx total = integrate_ts(inner, 0.0, std::min(a, cut), q);
    if (a < cut) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        auto outer = [&](double x) -> cplx {
            if (x <= a) return 0.0;
            return sign * std::exp(sm1 * std::log(x) - x + log_ratio_power(k, a / x));
        };
        total += integrate_es(outer, a, q);
    }
    return total * rgamma(s);
}

cplx kosh_coeff_fractional(cplx s, int k, double nu, const QuadratureSpec& q) {
    if (k < 1 || !(nu > 0)) throw DomainError("kosh_coeff_fractional: need k >= 1 and nu > 0");
    const double a = k * nu;
    auto integrand = [&](double u) -> cplx {
        const double y = 2.0 * a * u;
        // Generalized Laguerre L^{(1)}_{k-1}(y) by the three-term recurrence.
        double lm1 = 1.0, l = 1.0;
        if (k > 1) {
            l = 2.0 - y;
            for (int m = 1; m < k - 1; ++m) {
                const double next = ((2.0 * m + 2.0 - y) * l - (m + 1.0) * lm1) / (m + 1.0);
                lm1 = l;
                l = next;
            }
        }
        return std::exp(-s * std::log1p(u) - a * u) * l;
    };
    const double umax = (8.0 * k + 90.0) / (2.0 * a);
    std::vector<double> breaks;
    const int panels = 4 * k + 8;
    for (int i = 0; i <= panels; ++i) breaks.push_back(umax * i / panels);
    cplx integral = integrate_panels(integrand, breaks, q);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return sign * (1.0 - 2.0 * a * integral);
}

std::vector<cplx> kosh_coeff_asymptotic(cplx s, double nu, int R) {
    // ((k nu - x)/(k nu + x))^k = e^{-2x/nu} exp(sum_j g_j k^{-2j}),
    // g_j = -2 x^{2j+1}/((2j+1) nu^{2j+1}).  E_n (polynomials in x) are the
    // coefficients of exp(sum_j g_j t^j); integrating x^q against
    // x^{s-1} e^{-b x}/Gamma(s) gives (s)_q b^{-s-q} with b = 1 + 2/nu.
    std::vector<std::vector<double>> E(static_cast<std::size_t>(R + 1));
    E[0] = {1.0};
    for (int n = 1; n <= R; ++n) {
        std::vector<double> poly(static_cast<std::size_t>(3 * n + 1), 0.0);
        for (int j = 1; j <= n; ++j) {
            const double gj = -2.0 / ((2.0 * j + 1.0) * std::pow(nu, 2 * j + 1));
            const auto& prev = E[static_cast<std::size_t>(n - j)];
            for (std::size_t q = 0; q < prev.size(); ++q)
                poly[q + static_cast<std::size_t>(2 * j + 1)] += j * gj * prev[q];
        }
        for (double& c : poly) c /= n;
        E[static_cast<std::size_t>(n)] = std::move(poly);
    }
    const double b = 1.0 + 2.0 / nu;
    const double lb = std::log(b);
    const std::size_t qmax = static_cast<std::size_t>(3 * R + 1);
    std::vector<cplx> moment(qmax);  // (s)_q b^{-s-q}
    cplx poch = 1.0;
    for (std::size_t q = 0; q < qmax; ++q) {
        moment[q] = poch * std::exp(-(s + static_cast<double>(q)) * lb);
        poch *= s + static_cast<double>(q);
    }
    std::vector<cplx> c(static_cast<std::size_t>(R + 1), 0.0);
    for (int r = 0; r <= R; ++r) {
        const auto& poly = E[static_cast<std::size_t>(r)];
        for (std::size_t q = 0; q < poly.size(); ++q) c[static_cast<std::size_t>(r)] += poly[q] * moment[q];
    }
    return c;
}

// ---------------------------------------------------------------------------
// zeta_p.
// ---------------------------------------------------------------------------
SeriesValue zeta_p(const ShapeParam& shape, cplx s, const KoshSequence& seq, const EvalConfig& cfg) {
    if (!(s.real() > 1.0)) throw DomainError("zeta_p: direct series needs Re s > 1 (use zeta_p_continued)");
    if (!(seq.shape() == shape)) throw std::invalid_argument("zeta_p: sequence built for another shape");
    const int N = std::min(seq.capacity(), std::max(cfg.series_N, em_cutoff(s, cfg)));
    if (N < 2) throw std::invalid_argument("zeta_p: sequence too short");
    SeriesValue out;
    cplx sum = 0.0;
    for (int n = 1; n < N; ++n) sum += seq.weight(n) * std::exp(-s * std::log(seq.lambda(n)));
    double last = 0.0;
    sum += em_tail(shape, s, seq.lambda(N), false, &last);
    out.value = sum;
    out.tail_bound = last;
    out.terms_used = N;
    out.converged = last <= cfg.quad.rel_tol * std::abs(sum) + cfg.quad.abs_tol;
    return out;
}

cplx zeta_p_em(const ShapeParam& shape, cplx s, const EvalConfig& cfg) {
    if (s == cplx(1.0, 0.0)) throw PoleError("zeta_p has a pole at s = 1");
    return em_value(shape, s, cfg, false);
}

cplx zeta_p_tail(const ShapeParam& shape, cplx s, int N) {
    if (N < 1) throw std::invalid_argument("zeta_p_tail: N must be >= 1");
    // Euler-Maclaurin needs lambda_N well away from the origin; sum the first
    // few terms explicitly when N is small.
    const int M = std::max(N, 24 + static_cast<int>(std::ceil(2.0 * std::abs(s))));
    const auto seq = sequence(shape, M);
    cplx sum = 0.0;
    for (int n = N; n < M; ++n) sum += seq->weight(n) * std::exp(-s * std::log(seq->lambda(n)));
    if (s == cplx(1.0, 0.0)) throw PoleError("zeta_p_tail: divergent at s = 1");
    return sum + em_tail(shape, s, seq->lambda(M), false, nullptr);
}

cplx zeta_p_regular(const ShapeParam& shape, cplx s, const EvalConfig& cfg) {
    return em_value(shape, s, cfg, true);
}

cplx zeta_p_continued(const ShapeParam& shape, cplx s, const EvalConfig& cfg) {
    if (s == cplx(0.0, 0.0)) return -0.5 * shape.ifac();
    if (is_nonpositive_even_integer(s)) return 0.0;
    if (!(s.real() < 0.0))
        throw DomainError("zeta_p_continued: critical-strip evaluation is not provided (Re s must be < 0)");
    const cplx t = 1.0 - s;
    // zeta_p(s) = 2 cos(pi t/2) Gamma(t) (2 pi)^{-t} eta_p(t)
    const cplx factor = 2.0 * std::cos(0.5 * kPi * t) * gamma(t) * std::exp(-t * std::log(2.0 * kPi));
    return factor * eta_p(shape, t, cfg).value;
}

// ---------------------------------------------------------------------------
// eta_p.
// ---------------------------------------------------------------------------
SeriesValue eta_p(const ShapeParam& shape, cplx s, const EvalConfig& cfg) {
    if (!(s.real() > 1.0)) throw DomainError("eta_p: direct series needs Re s > 1");
    SeriesValue out;
    out.converged = true;
    if (shape.is_infinity()) {
        out.value = riemann_zeta(s);
        return out;
    }
    if (shape.is_zero()) {
        out.value = (std::exp((1.0 - s) * kLn2) - 1.0) * riemann_zeta(s);
        return out;
    }
    const double nu = 2.0 * kPi * shape.p();
    const int K = kEtaDirectTerms;
    cplx sum = 0.0;
    for (int k = 1; k <= K; ++k) sum += kosh_coeff(s, k, nu, cfg.quad) * std::exp(-s * std::log(double(k)));
    const auto c = kosh_coeff_asymptotic(s, nu, kEtaAsymptoticOrder);
    double last = 0.0;
    for (int r = 0; r <= kEtaAsymptoticOrder; ++r) {
        const cplx term = c[static_cast<std::size_t>(r)] * hurwitz_zeta(s + 2.0 * r, K + 1.0);
        sum += term;
        last = std::abs(term);
    }
    out.value = sum;
    out.tail_bound = last;
    out.terms_used = K;
    out.converged = last <= 1e-10 * std::abs(sum) + cfg.quad.abs_tol;
    return out;
}

cplx eta_p_any(const ShapeParam& shape, cplx s, const EvalConfig& cfg) {
    if (s == cplx(1.0, 0.0)) throw PoleError("eta_p has a pole at s = 1");
    if (s.real() > 1.0) return eta_p(shape, s, cfg).value;
    if (s == cplx(0.0, 0.0)) return -0.5;
    // eta_p(s) = zeta_p(1 - s) sin(pi s/2) Gamma(1 - s) (2 pi)^s / pi
    return zeta_p_em(shape, 1.0 - s, cfg) * std::sin(0.5 * kPi * s) * gamma(1.0 - s) *
           std::exp(s * std::log(2.0 * kPi)) / kPi;
}

// ---------------------------------------------------------------------------
// Constants.
// ---------------------------------------------------------------------------
double c1_ladder(const ShapeParam& shape, int log2_lo, int log2_hi) {
    if (log2_lo < 1 || log2_hi <= log2_lo || log2_hi > 20) throw std::invalid_argument("c1_ladder: bad ladder");
    const int Nmax = 1 << log2_hi;
    const auto seq = sequence(shape, Nmax);
    std::vector<cplx> values;
    double partial = 0.0;
    int next = 1 << log2_lo;
    for (int n = 1; n <= Nmax; ++n) {
        if (n == next) {
            values.emplace_back(partial - std::log(seq->lambda(n)));
            next *= 2;
        }
        partial += seq->weight(n) / seq->lambda(n);
    }
    return richardson(values, 2.0, 1.0).real();
}

namespace {

double c2_exact(const ShapeParam& shape, const EvalConfig& cfg) {
    if (shape.is_infinity()) return kEulerGamma;
    if (shape.is_zero()) return -kLn2;
    const double nu = 2.0 * kPi * shape.p();
    const int K = kEtaDirectTerms;
    const auto c = kosh_coeff_asymptotic(1.0, nu, kEtaAsymptoticOrder);
    const double c0 = c[0].real();
    double sum = 0.0;
    for (int k = 1; k <= K; ++k) sum += (kosh_coeff(1.0, k, nu, cfg.quad).real() - c0) / k;
    sum += c0 * kEulerGamma;
    for (int r = 1; r <= kEtaAsymptoticOrder; ++r)
        sum += c[static_cast<std::size_t>(r)].real() * hurwitz_zeta(1.0 + 2.0 * r, K + 1.0).real();
    return sum;
}

std::mutex g_const_mutex;
std::map<std::pair<int, double>, KoshConstants> g_const_cache;

}  // namespace

KoshConstants constants(const ShapeParam& shape, const EvalConfig& cfg) {
    const auto key = std::make_pair(static_cast<int>(shape.kind()), shape.as_double());
    {
        std::lock_guard<std::mutex> lock(g_const_mutex);
        auto it = g_const_cache.find(key);
        if (it != g_const_cache.end()) return it->second;
    }
    KoshConstants k;
    const double ifac = shape.ifac();
    // log(1 + 1/(pi p)), which vanishes at p = inf and only enters multiplied
    // by ifac (so its divergence at p = 0 is harmless).
    const double L = shape.is_finite() ? std::log1p(1.0 / (kPi * shape.p())) : 0.0;
    k.c1 = zeta_p_regular(shape, 1.0, cfg).real();
    k.c2 = c2_exact(shape, cfg);
    k.q0 = shape.is_finite() ? expint_e1(2.0 * kPi * shape.p()) : 0.0;
    k.eta_laurent_const = k.c2 - ifac * L;
    k.zeta_prime0 = 0.5 * k.c2 - 0.5 * ifac * (kEulerGamma + kLn2Pi + L);
    k.gamma_p = k.c2 + ifac * (k.c1 - kEulerGamma - L);
    std::lock_guard<std::mutex> lock(g_const_mutex);
    g_const_cache.emplace(key, k);
    return k;
}

// ---------------------------------------------------------------------------
// sigma.
// ---------------------------------------------------------------------------
cplx sigma_ratio(const ShapeParam& shape, cplx t) { return shape.sigma(t); }

SeriesValue sigma_p_series(const ShapeParam& shape, cplx z, const KoshSequence& seq, const EvalConfig& cfg) {
    if (!(z.real() > 0)) throw DomainError("sigma_p: series diverges for Re z <= 0");
    if (!(seq.shape() == shape)) throw std::invalid_argument("sigma_p: sequence built for another shape");
    SeriesValue out;
    cplx sum = 0.0;
    const int N = seq.capacity();
    for (int n = 1; n <= N; ++n) sum += seq.weight(n) * std::exp(-seq.lambda(n) * z);
    const double x = z.real();
    out.value = sum;
    out.tail_bound = seq.weight_bound() * std::exp(-(N + 0.5) * x) / -std::expm1(-x);
    out.terms_used = N;
    out.converged = out.tail_bound <= cfg.quad.rel_tol * std::abs(sum) + cfg.quad.abs_tol;
    return out;
}

cplx sigma_p(const ShapeParam& shape, cplx z) {
    if (!(z.real() > 0)) throw DomainError("sigma_p: series diverges for Re z <= 0");
    const int N = static_cast<int>(std::ceil(42.0 / z.real())) + 2;
    EvalConfig cfg;
    return sigma_p_series(shape, z, *sequence(shape, N), cfg).value;
}

double zeta_p_two_closed(const ShapeParam& shape) {
    const double z2 = kPi * kPi / 6.0;
    if (shape.is_infinity()) return z2;
    if (shape.is_zero()) return 3.0 * z2;
    const double u = 1.0 / (kPi * shape.p());
    return z2 * (1.0 + 3.0 * u * (1.0 + u)) / ((1.0 + u) * (1.0 + u));
}

}  // namespace kosh
