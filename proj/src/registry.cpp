#include "kosh/registry.hpp"

#include "kosh/epstein.hpp"
#include "kosh/kernels.hpp"
#include "kosh/koshzeta.hpp"
#include "kosh/quadrature.hpp"
#include "kosh/sequence.hpp"
#include "kosh/specfun.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace kosh {

namespace {

// ---------------------------------------------------------------------------
// Parameter plumbing.
// ---------------------------------------------------------------------------
std::string shortest(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string shortest(cplx z) {
    if (z.imag() == 0.0) return shortest(z.real());
    std::string im = shortest(z.imag());
    if (im[0] != '-') im = "+" + im;
    if (z.real() == 0.0) return shortest(z.imag()) + "i";
    return shortest(z.real()) + im + "i";
}

double parse_real(const std::string& text) {
    if (text == "pi") return kPi;
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid real value '" + text + "'");
    }
    if (pos != text.size()) throw std::invalid_argument("invalid real value '" + text + "'");
    return v;
}

enum class ParamKind { shape, complex_value, integer, real, word };

ParamKind kind_of(const std::string& name) {
    if (name == "p" || name == "pprime") return ParamKind::shape;
    if (name == "s" || name == "nu") return ParamKind::complex_value;
    if (name == "N" || name == "k") return ParamKind::integer;
    if (name == "variant") return ParamKind::word;
    return ParamKind::real;
}

std::string canonical_value(const std::string& name, const std::string& value) {
    switch (kind_of(name)) {
    case ParamKind::shape: return ShapeParam::parse(value).label();
    case ParamKind::complex_value: return shortest(parse_complex(value));
    case ParamKind::integer: {
        std::size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("invalid integer '" + value + "'");
        return std::to_string(v);
    }
    case ParamKind::real: return shortest(parse_real(value));
    case ParamKind::word: return value;
    }
    return value;
}

ShapeParam shape_of(const ParamMap& m, const std::string& key) { return ShapeParam::parse(m.at(key)); }
double real_of(const ParamMap& m, const std::string& key) { return parse_real(m.at(key)); }
cplx cplx_of(const ParamMap& m, const std::string& key) { return parse_complex(m.at(key)); }
int int_of(const ParamMap& m, const std::string& key) { return std::stoi(m.at(key)); }

const std::string kPiText = shortest(kPi);

// ---------------------------------------------------------------------------
// Numerical helpers shared by several entries.
// ---------------------------------------------------------------------------
cplx cpow(double base, cplx e) { return std::exp(e * std::log(base)); }

// sum_n w_n f(lambda_n) over the rows with lambda_n <= lam_max (at least one).
template <class F>
cplx weighted_rows(const ShapeParam& shape, double lam_max, F&& f) {
    const int N = static_cast<int>(std::ceil(std::max(lam_max, 1.0))) + 2;
    const auto seq = sequence(shape, N);
    cplx sum = 0.0;
    for (int n = 1; n <= N; ++n) {
        const double l = seq->lambda(n);
        if (n > 1 && l > lam_max) break;
        sum += seq->weight(n) * f(l);
    }
    return sum;
}

// kappa(p) ifac(p)^2 = (1 + 3u + 3u^2)/(1 + u)^2 with u = 1/(pi p): the
// factor attached to pi^2/6 in the closed form of zeta_p(2).
double m2(const ShapeParam& sh) { return zeta_p_two_closed(sh) * 6.0 / (kPi * kPi); }

bool is_integer(cplx s) { return s.imag() == 0.0 && s.real() == std::round(s.real()); }
bool is_even_integer(cplx s) { return is_integer(s) && std::fmod(std::abs(s.real()), 2.0) == 0.0; }

// zeta(s) (b^{(1-s)/2} - a^{(1-s)/2}), finite at s = 1 where the pole meets a
// simple zero: the limit is -log(b/a)/2.
cplx zeta_times_gap(cplx s, double a, double b) {
    if (s == cplx(1.0, 0.0)) return -0.5 * std::log(b / a);
    return riemann_zeta(s) * (cpow(b, 0.5 * (1.0 - s)) - cpow(a, 0.5 * (1.0 - s)));
}

// The factor 2^{-s} sqrt(pi)/Gamma((1-s)/2) x^{(1-s)/2} of the K_{nu,p} sums.
cplx guinand_prefactor(cplx s, double x) {
    return std::exp(-s * kLn2) * std::sqrt(kPi) * rgamma(0.5 * (1.0 - s)) * cpow(x, 0.5 * (1.0 - s));
}

// sum_n w_n lambda_n^{-s} K_{s/2,p}(2 lambda_n a) over the rows of `rows`.
cplx k_kernel_sum(const ShapeParam& p, const ShapeParam& rows, cplx s, double a, const EvalConfig& cfg) {
    return weighted_rows(rows, 48.0 / (2.0 * a), [&](double l) {
        return cpow(l, -s) * k_kernel(p, 0.5 * s, 2.0 * l * a, cfg);
    });
}

// sum_{m,n >= 1} (+-1)^m (m/b_n)^{s/2} K_{s/2}(2 m b_n a), with b_n the rows of
// `rows` carrying their weights; `alternate` selects (-1)^m.
cplx bessel_double_sum(const ShapeParam& rows, cplx s, double a, bool alternate) {
    const cplx nu = 0.5 * s;
    return weighted_rows(rows, 48.0 / (2.0 * a), [&](double b) {
        cplx inner = 0.0;
        for (int m = 1;; ++m) {
            const double arg = 2.0 * m * b * a;
            if (arg > 48.0 + std::abs(nu)) break;
            const cplx t = cpow(m / b, nu) * bessel_k(nu, arg);
            inner += (alternate && (m % 2 == 1)) ? -t : t;
        }
        return inner;
    });
}

// Elementary form of G_p used by the Ramanujan-type entries: theta = pi sqrt(2a),
// every hyperbolic function scaled by e^{-theta}.  Limit shapes keep the
// leading coefficients (p^2 for p = inf, a for p = 0).
double g_explicit(const ShapeParam& sh, double theta) {
    const double c = std::cos(theta), sn = std::sin(theta), e = std::exp(-theta);
    const double ch = 0.5 * (1.0 + e * e), shh = 0.5 * (1.0 - e * e);  // cosh, sinh times e^{-theta}
    if (sh.is_infinity()) return e * (c - sn - e) / (ch - c * e);
    if (sh.is_zero()) return -e * (c - sn + e) / (ch + c * e);
    const double p = sh.p();
    const double r = theta / kPi;  // sqrt(2a)
    const double a = 0.5 * r * r;
    const double num = e * ((p * p - a) * (c - sn) - e * (p * p - r * p + a) - r * p * (c + sn));
    const double den = p * p * (ch - c * e) + r * p * (shh + sn * e) + a * (ch + c * e);
    return num / den;
}

// sum_{n >= 1} sigma_{k}(n) f(n) for n <= nmax, with sigma_k the divisor sum.
template <class F>
cplx divisor_series(cplx k, int nmax, F&& f) {
    std::vector<cplx> sig(static_cast<std::size_t>(nmax + 1), 0.0);
    for (int d = 1; d <= nmax; ++d) {
        const cplx dk = cpow(d, k);
        for (int n = d; n <= nmax; n += d) sig[static_cast<std::size_t>(n)] += dk;
    }
    cplx sum = 0.0;
    for (int n = 1; n <= nmax; ++n) sum += sig[static_cast<std::size_t>(n)] * f(n);
    return sum;
}

// Classical Watson series sum_n (n^2 + x^2)^{-s} through the limit shape.
cplx watson_classical_series(cplx s, double x, const EvalConfig& cfg) {
    return watson_series(*sequence(ShapeParam::infinity(), cfg.series_N), s, x, cfg).value;
}

// log |eta(i t)| from the product, t > 0.
double log_dedekind_eta_imag(double t) {
    double sum = -kPi * t / 12.0;
    for (int k = 1;; ++k) {
        const double q = std::exp(-2.0 * kPi * t * k);
        sum += std::log1p(-q);
        if (q < 1e-18) break;
    }
    return sum;
}

// sum_{m in Z} 1/(m^2 + a^2)^2 and sum_{m in Z} (-1)^m/(m^2 + a^2)^2, a > 0.
double row_sq(double a) {
    const double e = std::exp(-2.0 * kPi * a);
    const double coth = (1.0 + e) / (1.0 - e);
    const double csch2 = 4.0 * e / ((1.0 - e) * (1.0 - e));
    return kPi / (2.0 * a * a * a) * coth + kPi * kPi / (2.0 * a * a) * csch2;
}
double row_sq_alt(double a) {
    const double e = std::exp(-2.0 * kPi * a);
    const double csch = 2.0 * std::exp(-kPi * a) / (1.0 - e);
    const double coth = (1.0 + e) / (1.0 - e);
    return kPi / (2.0 * a * a * a) * csch + kPi * kPi / (2.0 * a * a) * csch * coth;
}

// ---------------------------------------------------------------------------
// Registry assembly.
// ---------------------------------------------------------------------------
using Eval = std::function<std::pair<cplx, cplx>(const ParamMap&, const EvalConfig&)>;
using Domain = std::function<std::optional<std::string>(const ParamMap&)>;

const std::vector<std::string> kSGrid = {"0.75", "1.5", "2.5", "0.6+0.3i", "2+1i"};
const std::vector<std::string> kLGrid = {"-0.5", "0", "0.5", "-0.5+0.5i", "0.5i"};
const std::vector<std::string> kAlphaGrid = {"1", kPiText, "4"};
const std::vector<std::string> kXGrid = {"0.5", "1", "2"};
const std::vector<std::string> kPGrid = {"0.5", "1", "2"};

Domain no_domain() {
    return [](const ParamMap&) -> std::optional<std::string> { return std::nullopt; };
}

Domain re_s_above(double lo) {
    return [lo](const ParamMap& m) -> std::optional<std::string> {
        if (!(cplx_of(m, "s").real() > lo)) return "domain: Re s must exceed " + shortest(lo);
        return std::nullopt;
    };
}

Domain re_s_between(double lo, double hi) {
    return [lo, hi](const ParamMap& m) -> std::optional<std::string> {
        const double r = cplx_of(m, "s").real();
        if (!(r > lo && r < hi)) return "domain: Re s must lie in (" + shortest(lo) + ", " + shortest(hi) + ")";
        return std::nullopt;
    };
}

// Domain of the modular-type identities: Re s < 1 (when `strip`) and no
// Gamma(+-s/2) pole, i.e. s not an even integer.
Domain guinand_domain(bool strip) {
    return [strip](const ParamMap& m) -> std::optional<std::string> {
        const cplx s = cplx_of(m, "s");
        if (strip && !(s.real() < 1.0)) return "domain: Re s must be < 1";
        if (is_even_integer(s)) return "gamma pole";
        return std::nullopt;
    };
}

Domain all_of(Domain a, Domain b) {
    return [a, b](const ParamMap& m) -> std::optional<std::string> {
        if (auto r = a(m)) return r;
        return b(m);
    };
}

Domain positive(const std::vector<std::string>& keys) {
    return [keys](const ParamMap& m) -> std::optional<std::string> {
        for (const auto& k : keys)
            if (!(real_of(m, k) > 0)) return "domain: " + k + " must be positive";
        return std::nullopt;
    };
}

Domain finite_shape(const std::string& key) {
    return [key](const ParamMap& m) -> std::optional<std::string> {
        if (!shape_of(m, key).is_finite()) return "domain: " + key + " must be a finite shape";
        return std::nullopt;
    };
}

double beta_of(double alpha) { return kPi * kPi / alpha; }

struct Builder {
    std::vector<IdentityEntry> entries;

    IdentityEntry& add(std::string id, std::string anchor, std::string description, ToleranceClass tc,
                       Independence ind, std::vector<std::string> lhs, std::vector<std::string> rhs,
                       ParamMap defaults, ParamGrid grid, Domain domain, Eval eval) {
        IdentityEntry e;
        e.id = std::move(id);
        e.anchor = std::move(anchor);
        e.description = std::move(description);
        e.tolerance_class = tc;
        e.independence = ind;
        e.lhs_routines = std::move(lhs);
        e.rhs_routines = std::move(rhs);
        e.defaults = std::move(defaults);
        e.grids = {std::move(grid)};
        e.domain = std::move(domain);
        e.evaluate = std::move(eval);
        entries.push_back(std::move(e));
        return entries.back();
    }
};

// ---------------------------------------------------------------------------
// Ramanujan-type identities (kernel G_p).
// ---------------------------------------------------------------------------
void add_ramanujan(Builder& b) {
    b.add("R1", "generalized Entry 8: weighted Lambert-type series in lambda_n^2 x with kernel G_p",
          "sum w_n/(sigma'(lambda_n^2 x/2pi) e^{lambda_n^2 x} - 1) vs G_p series over lambda'_n",
          ToleranceClass::series, Independence::distinct_modules, {"ShapeParam::kernel"},
          {"g_kernel", "zeta_p_em"}, {{"p", "1"}, {"pprime", "2"}, {"x", "1"}},
          {{"p", {"0.5", "2", "inf", "0"}}, {"pprime", {"1", "inf"}}, {"x", {"0.5", "2"}}}, positive({"x"}),
          [](const ParamMap& m, const EvalConfig& cfg) {
              const auto p = shape_of(m, "p"), q = shape_of(m, "pprime");
              const double x = real_of(m, "x");
              const cplx lhs = weighted_rows(p, std::sqrt(42.0 / x) + 1.0,
                                             [&](double l) { return q.kernel(l * l * x / (2.0 * kPi)); });
              const double lam_max = std::pow(45.0 / kPi, 2) * x / (4.0 * kPi) + 2.0;
              const cplx tail = weighted_rows(q, lam_max, [&](double l) {
                  return g_kernel(p, 2.0 * kPi * l / x) / std::sqrt(l);
              });
              const double h = 0.5 * std::sqrt(kPi / x);
              const cplx rhs = p.ifac() / 4.0 + kPi * kPi / (6.0 * x) * m2(p) * q.ifac() +
                               h * zeta_p_em(q, 0.5, cfg) + h * tail;
              return std::make_pair(lhs, rhs);
          });

    b.add("R2", "representations of zeta(1/2); Entry 8 (p = inf) and its odd-square companion (p = 0)",
          "sum w_n/(e^{lambda_n^2 x} - 1) vs zeta(1/2) and the elementary G_p series",
          ToleranceClass::series, Independence::closed_form, {"sequence rows"},
          {"g_explicit", "riemann_zeta"}, {{"p", "inf"}, {"x", "1"}},
          {{"p", {"inf", "0", "0.5", "2"}}, {"x", {"0.5", "1", "2"}}}, positive({"x"}),
          [](const ParamMap& m, const EvalConfig&) {
              const auto p = shape_of(m, "p");
              const double x = real_of(m, "x");
              const cplx lhs = weighted_rows(p, std::sqrt(42.0 / x) + 1.0, [&](double l) {
                  return 1.0 / std::expm1(l * l * x);
              });
              const double h = 0.5 * std::sqrt(kPi / x);
              cplx tail = 0.0;
              for (int n = 1;; ++n) {
                  const double theta = 2.0 * kPi * std::sqrt(kPi * n / x);
                  if (theta > 45.0) break;
                  tail += g_explicit(p, theta) / std::sqrt(double(n));
              }
              const cplx rhs = p.ifac() / 4.0 + h * riemann_zeta(0.5) + kPi * kPi / (6.0 * x) * m2(p) + h * tail;
              return std::make_pair(lhs, rhs);
          });

    b.add("R3", "identity of Ramanujan type over the integers with kernel sigma'",
          "sum 1/(sigma'(n^2 x/2pi) e^{n^2 x} - 1) vs zeta_p'(1/2) and an elementary series over lambda'_n",
          ToleranceClass::series, Independence::closed_form, {"ShapeParam::kernel"},
          {"g_explicit", "zeta_p_em"}, {{"pprime", "1"}, {"x", "1"}},
          {{"pprime", {"0.5", "2", "0"}}, {"x", {"0.5", "1", "2"}}}, positive({"x"}),
          [](const ParamMap& m, const EvalConfig& cfg) {
              const auto q = shape_of(m, "pprime");
              const double x = real_of(m, "x");
              cplx lhs = 0.0;
              for (int n = 1; double(n) * n * x < 42.0 || n == 1; ++n)
                  lhs += q.kernel(double(n) * n * x / (2.0 * kPi));
              const double lam_max = std::pow(45.0 / (2.0 * kPi), 2) * x / kPi + 2.0;
              const cplx tail = weighted_rows(q, lam_max, [&](double l) {
                  return g_explicit(ShapeParam::infinity(), 2.0 * kPi * std::sqrt(kPi * l / x)) / std::sqrt(l);
              });
              const double h = 0.5 * std::sqrt(kPi / x);
              const cplx rhs = 0.25 + h * zeta_p_em(q, 0.5, cfg) + kPi * kPi / (6.0 * x) * q.ifac() + h * tail;
              return std::make_pair(lhs, rhs);
          });

    b.add("R4", "representations of zeta(1/2) through the alternating Lambert-type series",
          "-sum w_n/(e^{lambda_n^2 x} + 1) vs (sqrt 2 - 1) zeta(1/2) and G_p over odd integers",
          ToleranceClass::series, Independence::distinct_modules, {"sequence rows"},
          {"g_kernel", "riemann_zeta"}, {{"p", "1"}, {"x", "1"}},
          {{"p", {"0.5", "2", "inf", "0"}}, {"x", {"0.5", "1", "2"}}}, positive({"x"}),
          [](const ParamMap& m, const EvalConfig&) {
              const auto p = shape_of(m, "p");
              const double x = real_of(m, "x");
              const cplx lhs = -weighted_rows(p, std::sqrt(42.0 / x) + 1.0, [&](double l) {
                  const double e = std::exp(-l * l * x);
                  return e / (1.0 + e);
              });
              cplx tail = 0.0;
              for (int n = 1;; ++n) {
                  const double a = kPi * (2.0 * n - 1.0) / x;
                  if (kPi * std::sqrt(2.0 * a) > 45.0) break;
                  tail += g_kernel(p, a) / std::sqrt(2.0 * n - 1.0);
              }
              const cplx rhs = p.ifac() / 4.0 + 0.5 * std::sqrt(kPi / x) * (std::sqrt(2.0) - 1.0) * riemann_zeta(0.5) +
                               std::sqrt(kPi / (2.0 * x)) * tail;
              return std::make_pair(lhs, rhs);
          });

    b.add("R5", "odd-square analogue with kernel sigma'",
          "sum 1/(sigma'((2n-1)^2 x/2pi) e^{(2n-1)^2 x} - 1) vs zeta_p'(1/2) and an elementary series",
          ToleranceClass::series, Independence::closed_form, {"ShapeParam::kernel"},
          {"g_explicit", "zeta_p_em"}, {{"pprime", "1"}, {"x", "1"}},
          {{"pprime", {"0.5", "2", "inf"}}, {"x", {"0.5", "1", "2"}}}, positive({"x"}),
          [](const ParamMap& m, const EvalConfig& cfg) {
              const auto q = shape_of(m, "pprime");
              const double x = real_of(m, "x");
              cplx lhs = 0.0;
              for (int n = 1;; ++n) {
                  const double k = 2.0 * n - 1.0;
                  if (k * k * x > 42.0 && n > 1) break;
                  lhs += q.kernel(k * k * x / (2.0 * kPi));
              }
              const double lam_max = std::pow(45.0 / kPi, 2) * x / kPi + 2.0;
              const cplx tail = weighted_rows(q, lam_max, [&](double l) {
                  // (sin - cos - e^{-theta})/(cosh + cos) is G at the zero shape.
                  return g_explicit(ShapeParam::zero(), kPi * std::sqrt(kPi * l / x)) / std::sqrt(l);
              });
              const double h = 0.25 * std::sqrt(kPi / x);
              const cplx rhs = kPi * kPi / (8.0 * x) * q.ifac() + h * zeta_p_em(q, 0.5, cfg) + h * tail;
              return std::make_pair(lhs, rhs);
          });
}

// ---------------------------------------------------------------------------
// Watson-type identities and the zeta pair.
// ---------------------------------------------------------------------------
cplx binom_neg(cplx s, int m) {  // binomial(-s, m)
    cplx b = 1.0;
    for (int j = 0; j < m; ++j) b *= (-s - double(j)) / double(j + 1);
    return b;
}

void add_watson(Builder& b) {
    const ParamMap pxs = {{"p", "1"}, {"s", "0.75"}, {"x", "1"}};
    const ParamGrid g_pxs = {{"p", kPGrid}, {"s", kSGrid}, {"x", kXGrid}};

    b.add("W1", "generalized Watson formula, K-Bessel form",
          "sum w_n (lambda_n^2 + x^2)^{-s} vs Gamma terms plus K-Bessel double series",
          ToleranceClass::series, Independence::distinct_representations, {"watson_series"},
          {"watson_rhs_bessel"}, pxs, g_pxs, all_of(re_s_above(0.5), positive({"x"})),
          [](const ParamMap& m, const EvalConfig& cfg) {
              const auto p = shape_of(m, "p");
              const cplx s = cplx_of(m, "s");
              const double x = real_of(m, "x");
              return std::make_pair(watson_series(*sequence(p, cfg.series_N), s, x, cfg).value,
                                    watson_rhs_bessel(p, s, x, cfg));
          });

    b.add("W2", "generalized Watson formula, integral form on the strip 1/2 < Re s < 1",
          "sum w_n (lambda_n^2 + x^2)^{-s} vs the y^{-s}(y+1)^{-s} kernel integral",
          ToleranceClass::series, Independence::distinct_representations, {"watson_series"},
          {"watson_rhs_integral"}, pxs,
          {{"p", kPGrid}, {"s", {"0.6", "0.75", "0.9", "0.6+0.3i"}}, {"x", kXGrid}},
          all_of(re_s_between(0.5, 1.0), positive({"x"})), [](const ParamMap& m, const EvalConfig& cfg) {
              const auto p = shape_of(m, "p");
              const cplx s = cplx_of(m, "s");
              const double x = real_of(m, "x");
              return std::make_pair(watson_series(*sequence(p, cfg.series_N), s, x, cfg).value,
                                    watson_rhs_integral(p, s, x, cfg));
          });

    auto& w3 = b.add(
        "W3", "classical Watson formula (finite p: the generalized series on the p-ladder)",
        "sum w_n(p) (lambda_n^2 + x^2)^{-s} vs the classical K-Bessel right side",
        ToleranceClass::series, Independence::distinct_modules, {"watson_series"}, {"bessel_k", "gamma"},
        {{"p", "inf"}, {"s", "0.75"}, {"x", "1"}}, {{"p", {"inf"}}, {"s", kSGrid}, {"x", kXGrid}},
        all_of(re_s_above(0.5), positive({"x"})), [](const ParamMap& m, const EvalConfig& cfg) {
            const auto p = shape_of(m, "p");
            const cplx s = cplx_of(m, "s");
            const double x = real_of(m, "x");
            const cplx lhs = watson_series(*sequence(p, cfg.series_N), s, x, cfg).value;
            cplx ks = 0.0;
            for (int n = 1; 2.0 * kPi * n * x < 50.0 + std::abs(s) || n == 1; ++n)
                ks += cpow(n, s - 0.5) * bessel_k(s - 0.5, 2.0 * kPi * n * x);
            const cplx rhs = std::sqrt(kPi) * cpow(x, 1.0 - 2.0 * s) * gamma(s - 0.5) * rgamma(s) / 2.0 -
                             cpow(x, -2.0 * s) / 2.0 + 2.0 * cpow(kPi, s) * cpow(x, 0.5 - s) * rgamma(s) * ks;
            return std::make_pair(lhs, rhs);
        });
    // On the p-ladder the comparison measures the O(1/p) limit rate.
    w3.tolerance_override = [](const ParamMap& m) -> std::optional<double> {
        if (shape_of(m, "p").is_infinity()) return std::nullopt;
        return 1e-3;
    };

    b.add("W4", "odd companion of Watson's formula",
          "sum ((2n-1)^2 + x^2)^{-s} vs Gamma term plus alternating K-Bessel series",
          ToleranceClass::series, Independence::distinct_modules, {"watson_series"}, {"bessel_k", "gamma"},
          {{"s", "0.75"}, {"x", "1"}}, {{"s", kSGrid}, {"x", kXGrid}}, all_of(re_s_above(0.5), positive({"x"})),
          [](const ParamMap& m, const EvalConfig& cfg) {
              const cplx s = cplx_of(m, "s");
              const double x = real_of(m, "x");
              // lambda_n = n - 1/2 for the zero shape: ((2n-1)^2 + x^2)^{-s} = 4^{-s}((n-1/2)^2 + (x/2)^2)^{-s}.
              const cplx lhs = cpow(4.0, -s) *
                               watson_series(*sequence(ShapeParam::zero(), cfg.series_N), s, 0.5 * x, cfg).value;
              cplx ks = 0.0;
              for (int n = 1; kPi * n * x < 50.0 + std::abs(s) || n == 1; ++n) {
                  const cplx t = cpow(n, s - 0.5) * bessel_k(s - 0.5, kPi * n * x);
                  ks += (n % 2 == 1) ? -t : t;
              }
              const cplx rhs = std::sqrt(kPi) * cpow(x, 1.0 - 2.0 * s) * gamma(s - 0.5) * rgamma(s) / 4.0 +
                               cpow(2.0, 0.5 - s) * cpow(x, 0.5 - s) * cpow(kPi, s) * rgamma(s) * ks;
              return std::make_pair(lhs, rhs);
          });

    auto& w5 = b.add("W5", "N-term continuation of the generalized Watson series, -N + 1/2 < Re s < 1",
          "regularized weighted series plus restored zeta_p terms vs the integral form",
          ToleranceClass::series, Independence::distinct_modules, {"zeta_p_em", "zeta_p_tail"},
          {"watson_rhs_integral"}, {{"p", "1"}, {"N", "1"}, {"s", "0.25"}, {"x", "1"}},
          {{"p", kPGrid}, {"N", {"1", "2"}}, {"s", {"0.25", "-0.3+0.4i", "0.75"}}, {"x", {"0.5", "2"}}},
          all_of(positive({"x"}),
                 [](const ParamMap& m) -> std::optional<std::string> {
                     const cplx s = cplx_of(m, "s");
                     const int N = int_of(m, "N");
                     if (N < 1) return "domain: N must be >= 1";
                     if (!(s.real() > 0.5 - N && s.real() < 1.0)) return "domain: need -N + 1/2 < Re s < 1";
                     for (int k = 0; k < N + 40; ++k)
                         if (2.0 * s + 2.0 * k == cplx(1.0, 0.0)) return "zeta pole";
                     return std::nullopt;
                 }),
          [](const ParamMap& m, const EvalConfig& cfg) {
              const auto p = shape_of(m, "p");
              const cplx s = cplx_of(m, "s");
              const double x = real_of(m, "x");
              const int N = int_of(m, "N");
              const int M = std::max(cfg.series_N, static_cast<int>(std::ceil(2.0 * x)) + 2);
              const auto seq = sequence(p, M);
              cplx lhs = 0.0;
              for (int n = 1; n <= M; ++n) {
                  const double l = seq->lambda(n);
                  cplx t = std::exp(-s * std::log(l * l + x * x));
                  for (int j = 0; j < N; ++j) t -= binom_neg(s, j) * std::pow(x, 2 * j) * cpow(l, -2.0 * s - 2.0 * j);
                  lhs += seq->weight(n) * t;
              }
              // Rows beyond M: the binomial terms j >= N.
              const double ratio = x * x / (seq->lambda(M) * seq->lambda(M));
              for (int j = N;; ++j) {
                  const cplx t = binom_neg(s, j) * std::pow(x, 2 * j) * zeta_p_tail(p, 2.0 * s + 2.0 * j, M + 1);
                  lhs += t;
                  if (std::abs(t) < 1e-18 * (1.0 + std::abs(lhs)) || std::pow(ratio, j) < 1e-18 || j > N + 60) break;
              }
              for (int j = 0; j < N; ++j) lhs += binom_neg(s, j) * std::pow(x, 2 * j) * zeta_p_em(p, 2.0 * s + 2.0 * j, cfg);
              return std::make_pair(lhs, watson_rhs_integral(p, s, x, cfg));
          });

    w5.grids.push_back({{"p", kPGrid}, {"N", {"2"}}, {"s", {"-1.2"}}, {"x", {"0.5", "2"}}});

    b.add("W6", "Koshliakov's generalization of Euler's constant C_p^(1) in the Watson series at s = 1/2",
          "sum w_n(1/sqrt(lambda_n^2 + x^2) - 1/lambda_n) + C_p^(1) + log(x/2) + ... vs 2 int kern/sqrt(y^2+y)",
          ToleranceClass::series, Independence::distinct_modules, {"zeta_p_tail", "constants"},
          {"watson_integral_term"}, {{"p", "1"}, {"x", "1"}}, {{"p", {"0.5", "1", "2", "inf"}}, {"x", kXGrid}},
          positive({"x"}), [](const ParamMap& m, const EvalConfig& cfg) {
              const auto p = shape_of(m, "p");
              const double x = real_of(m, "x");
              const int M = std::max(cfg.series_N, static_cast<int>(std::ceil(2.0 * x)) + 2);
              const auto seq = sequence(p, M);
              cplx lhs = 0.0;
              for (int n = 1; n <= M; ++n) {
                  const double l = seq->lambda(n);
                  lhs += seq->weight(n) * (1.0 / std::sqrt(l * l + x * x) - 1.0 / l);
              }
              for (int j = 1; j < 60; ++j) {
                  const cplx t = binom_neg(0.5, j) * std::pow(x, 2 * j) * zeta_p_tail(p, 1.0 + 2.0 * j, M + 1);
                  lhs += t;
                  if (std::abs(t) < 1e-18) break;
              }
              lhs += constants(p, cfg).c1 + std::log(0.5 * x) + p.ifac() / (2.0 * x);
              return std::make_pair(lhs, 2.0 * watson_integral_term(p, 0.5, x, cfg));
          });

    b.add("W7", "classical continuations of Watson's formula at s = 1/2 (integer and odd lattices)",
          "sum (1/sqrt(n^2 + x^2) - 1/n) + ... vs K_0 series", ToleranceClass::series,
          Independence::distinct_modules, {"hurwitz_zeta"}, {"bessel_k"}, {{"variant", "integer"}, {"x", "1"}},
          {{"variant", {"integer", "odd"}}, {"x", kXGrid}},
          all_of(positive({"x"}),
                 [](const ParamMap& m) -> std::optional<std::string> {
                     const auto& v = m.at("variant");
                     if (v != "integer" && v != "odd") return "domain: variant must be integer or odd";
                     return std::nullopt;
                 }),
          [](const ParamMap& m, const EvalConfig&) {
              const double x = real_of(m, "x");
              const bool odd = m.at("variant") == "odd";
              const int M = 64 + static_cast<int>(std::ceil(2.0 * x));
              cplx lhs = 0.0;
              for (int n = 1; n <= M; ++n) {
                  const double k = odd ? 2.0 * n - 1.0 : double(n);
                  lhs += 1.0 / std::sqrt(k * k + x * x) - 1.0 / k;
              }
              for (int j = 1; j < 60; ++j) {
                  // sum_{n > M} k^{-1-2j}
                  const cplx tailz = odd ? std::pow(2.0, -1.0 - 2.0 * j) * hurwitz_zeta(1.0 + 2.0 * j, M + 0.5)
                                         : hurwitz_zeta(1.0 + 2.0 * j, M + 1.0);
                  const cplx t = binom_neg(0.5, j) * std::pow(x, 2 * j) * tailz;
                  lhs += t;
                  if (std::abs(t) < 1e-18) break;
              }
              cplx rhs = 0.0;
              if (!odd) {
                  lhs += 1.0 / (2.0 * x) + kEulerGamma + std::log(0.5 * x);
                  for (int n = 1; 2.0 * kPi * n * x < 50.0; ++n) rhs += 2.0 * bessel_k(0.0, 2.0 * kPi * n * x);
              } else {
                  lhs += 0.5 * kEulerGamma + 0.5 * std::log(x);
                  for (int n = 1; kPi * n * x < 50.0; ++n) {
                      const cplx t = bessel_k(0.0, kPi * n * x);
                      rhs += (n % 2 == 1) ? -t : t;
                  }
              }
              return std::make_pair(lhs, rhs);
          });

    b.add("W8", "closed form of the weighted Watson series at s = 1",
          "sum w_n/(x^2 + lambda_n^2) vs pi/(2x) - ifac/(2x^2) + (pi/x) kern_p(x)", ToleranceClass::series,
          Independence::closed_form, {"watson_series"}, {"ShapeParam::kernel"}, {{"p", "1"}, {"x", "1"}},
          {{"p", {"0.5", "1", "2", "inf", "0"}}, {"x", kXGrid}}, positive({"x"}),
          [](const ParamMap& m, const EvalConfig& cfg) {
              const auto p = shape_of(m, "p");
              const double x = real_of(m, "x");
              const cplx lhs = watson_series(*sequence(p, cfg.series_N), 1.0, x, cfg).value;
              const cplx rhs = kPi / (2.0 * x) - p.ifac() / (2.0 * x * x) + kPi / x * p.kernel(x);
              return std::make_pair(lhs, rhs);
          });

    b.add("W9", "closed form of the weighted Watson series at s = 2",
          "sum w_n/(x^2 + lambda_n^2)^2 vs its elementary closed form", ToleranceClass::series,
          Independence::closed_form, {"watson_series"}, {"ShapeParam::kernel"}, {{"p", "1"}, {"x", "1"}},
          {{"p", {"0.5", "1", "2", "inf", "0"}}, {"x", kXGrid}}, positive({"x"}),
          [](const ParamMap& m, const EvalConfig& cfg) {
              const auto p = shape_of(m, "p");
              const double x = real_of(m, "x");
              const cplx lhs = watson_series(*sequence(p, cfg.series_N), 2.0, x, cfg).value;
              const double K = p.kernel(x);
              // T = K p/(pi (p^2 - x^2)), simplified so that x = p is regular.
              double T = 0.0;
              if (p.is_finite()) {
                  const double pp = p.p();
                  T = pp / (kPi * (pp + x) * ((pp + x) * std::exp(2.0 * kPi * x) - (pp - x)));
              }
              const cplx rhs = kPi / (4.0 * x * x * x) - p.ifac() / (2.0 * x * x * x * x) +
                               kPi * kPi / (x * x) * (K / (2.0 * kPi * x) + (K + T) * (1.0 + K));
              return std::make_pair(lhs, rhs);
          });

    b.add("W10", "second generalization of Watson's formula: J-Bessel integral side",
          "sum w_n lambda_n^{s-1/2} K_{s-1/2}(2 pi lambda_n x) vs Gamma terms plus J-Bessel integral",
          ToleranceClass::series, Independence::distinct_representations, {"watson2_lhs"}, {"watson2_rhs"}, pxs,
          {{"p", kPGrid}, {"s", {"1.5", "2.5", "2+1i"}}, {"x", kXGrid}}, all_of(re_s_above(1.0), positive({"x"})),
          [](const ParamMap& m, const EvalConfig& cfg) {
              const auto p = shape_of(m, "p");
              const cplx s = cplx_of(m, "s");
              const double x = real_of(m, "x");
              return std::make_pair(watson2_lhs(*sequence(p, cfg.series_N), s, x, cfg), watson2_rhs(p, s, x, cfg));
          });

    b.add("W11", "alternating analogue of Watson's formula",
          "sum (-1)^n (x^2 + n^2)^{-s} vs -x^{-2s}/2 plus K-Bessel series over odd integers",
          ToleranceClass::series, Independence::distinct_modules, {"watson_series"}, {"bessel_k", "gamma"},
          {{"s", "0.75"}, {"x", "1"}}, {{"s", kSGrid}, {"x", kXGrid}}, all_of(re_s_above(0.5), positive({"x"})),
          [](const ParamMap& m, const EvalConfig& cfg) {
              const cplx s = cplx_of(m, "s");
              const double x = real_of(m, "x");
              // sum (-1)^n a_n = 2 sum a_{2n} - sum a_n with a_{2n} = 4^{-s}(n^2 + x^2/4)^{-s}.
              const cplx lhs = 2.0 * cpow(4.0, -s) * watson_classical_series(s, 0.5 * x, cfg) -
                               watson_classical_series(s, x, cfg);
              cplx ks = 0.0;
              for (int n = 1;; ++n) {
                  const double k = 2.0 * n - 1.0;
                  if (kPi * k * x > 50.0 + std::abs(s) && n > 1) break;
                  ks += cpow(k, s - 0.5) * bessel_k(s - 0.5, kPi * k * x);
              }
              const cplx rhs = -cpow(x, -2.0 * s) / 2.0 +
                               cpow(2.0, 1.5 - s) * cpow(kPi, s) * cpow(x, 0.5 - s) * rgamma(s) * ks;
              return std::make_pair(lhs, rhs);
          });

    auto& w12 = b.add("W12", "continuation of the second Watson analogue to Re s > -N - 1/2",
          "sum w_n lambda_n^{s-1/2} K_{s-1/2}(2 pi lambda_n x) vs regularized J integral plus eta_p terms",
          ToleranceClass::series, Independence::distinct_representations, {"watson2_lhs"},
          {"watson2_rhs_continued", "eta_p_any"}, {{"p", "1"}, {"N", "0"}, {"s", "0.3"}, {"x", "1"}},
          {{"p", kPGrid}, {"N", {"0", "1"}}, {"s", {"0.3", "-0.4+0.5i"}}, {"x", {"0.3", "1", "2.5"}}},
          all_of(positive({"x"}),
                 [](const ParamMap& m) -> std::optional<std::string> {
                     const cplx s = cplx_of(m, "s");
                     const int N = int_of(m, "N");
                     if (N < 0) return "domain: N must be >= 0";
                     if (!(s.real() > -N - 0.5)) return "domain: need Re s > -N - 1/2";
                     for (int k = 0; k <= N; ++k) {
                         const cplx z = s + double(k);
                         if (is_integer(z) && z.real() <= 0) return "gamma pole";
                         if (2.0 * s + 2.0 * k == cplx(1.0, 0.0)) return "zeta pole";
                     }
                     return std::nullopt;
                 }),
          [](const ParamMap& m, const EvalConfig& cfg) {
              const auto p = shape_of(m, "p");
              const cplx s = cplx_of(m, "s");
              const double x = real_of(m, "x");
              return std::make_pair(watson2_lhs(*sequence(p, cfg.series_N), s, x, cfg),
                                    watson2_rhs_continued(p, s, x, int_of(m, "N"), cfg));
          });

    w12.grids.push_back({{"p", kPGrid}, {"N", {"1"}}, {"s", {"-1.2"}}, {"x", {"0.3", "1", "2.5"}}});

    b.add("W13", "weighted K_0 series in closed form with C_p^(2)",
          "sum w_n K_0(2 pi lambda_n x) vs 1/(4x) + C_p^(2)/2 + log terms + J_0 integral",
          ToleranceClass::series, Independence::distinct_representations, {"k0_series_lhs"},
          {"k0_series_rhs", "constants"}, {{"p", "1"}, {"x", "1"}},
          {{"p", {"0.5", "1", "2", "inf", "0"}}, {"x", {"0.3", "1", "2.5"}}}, positive({"x"}),
          [](const ParamMap& m, const EvalConfig& cfg) {
              const auto p = shape_of(m, "p");
              const double x = real_of(m, "x");
              return std::make_pair(k0_series_lhs(*sequence(p, cfg.series_N), x, cfg), k0_series_rhs(p, x, cfg));
          });

    b.add("W14", "alternating analogue of Watson's formula at s = 1/2",
          "sum (-1)^n/sqrt(x^2 + n^2) vs -1/(2x) + 2 sum K_0(pi (2n-1) x)", ToleranceClass::series,
          Independence::distinct_modules, {"levin_u"}, {"bessel_k"}, {{"x", "1"}}, {{"x", kXGrid}},
          positive({"x"}), [](const ParamMap& m, const EvalConfig&) {
              const double x = real_of(m, "x");
              std::vector<cplx> terms;
              for (int n = 1; n <= 40; ++n) terms.push_back(((n % 2) ? -1.0 : 1.0) / std::sqrt(x * x + double(n) * n));
              const cplx lhs = levin_u(terms);
              cplx rhs = -1.0 / (2.0 * x);
              for (int n = 1;; ++n) {
                  const double a = kPi * (2.0 * n - 1.0) * x;
                  if (a > 50.0 && n > 1) break;
                  rhs += 2.0 * bessel_k(0.0, a);
              }
              return std::make_pair(lhs, rhs);
          });

    b.add("W15", "Abel-Plana type formula for sigma_p",
          "sigma_p(2 pi x) = sum w_n e^{-2 pi lambda_n x} vs -ifac/2 + 1/(2 pi x) + 2 int sin(2 pi x y) kern_p(y) dy",
          ToleranceClass::series, Independence::distinct_modules, {"sigma_p"}, {"sigma_p_integral"},
          {{"p", "1"}, {"x", "1"}}, {{"p", {"0.5", "1", "2", "inf", "0"}}, {"x", {"0.3", "1", "2.5"}}},
          positive({"x"}), [](const ParamMap& m, const EvalConfig& cfg) {
              const auto p = shape_of(m, "p");
              const double x = real_of(m, "x");
              return std::make_pair(sigma_p(p, 2.0 * kPi * x), sigma_p_integral(p, x, cfg));
          });

    b.add("W16", "third generalization of Watson's formula (double integral side)",
          "sum over m of the (y, u) double integrals vs the second analogue's series plus Gamma terms",
          ToleranceClass::series, Independence::distinct_representations, {"watson3_lhs"}, {"watson2_lhs"},
          {{"p", "1"}, {"s", "0.75"}, {"x", "1"}}, {{"p", {"0.5", "1"}}, {"s", {"0.75", "1.5"}}, {"x", {"1"}}},
          all_of(re_s_above(0.5), all_of(positive({"x"}), finite_shape("p"))),
          [](const ParamMap& m, const EvalConfig& cfg) {
              const auto p = shape_of(m, "p");
              const cplx s = cplx_of(m, "s");
              const double x = real_of(m, "x");
              const auto w = watson3_lhs(p, s, x, cfg);
              const cplx rhs = watson2_lhs(*sequence(p, cfg.series_N), s, x, cfg) +
                               cpow(kPi * x, 0.5 - s) / 4.0 * gamma(s - 0.5) * p.ifac() -
                               cpow(kPi, -s) * cpow(x, -s - 0.5) * gamma(s) / 4.0;
              return std::make_pair(w.value, rhs);
          });

    b.add("F1", "functional equation between zeta_p and eta_p",
          "zeta_p(1-s) (Euler-Maclaurin) vs 2 cos(pi s/2) Gamma(s) (2 pi)^{-s} eta_p(s) (coefficient series)",
          ToleranceClass::series, Independence::distinct_modules, {"zeta_p_em"}, {"eta_p"},
          {{"p", "1"}, {"s", "2"}}, {{"p", {"0.5", "1", "2", "inf"}}, {"s", {"1.5", "2", "2.5", "2+1i"}}},
          re_s_above(1.0), [](const ParamMap& m, const EvalConfig& cfg) {
              const auto p = shape_of(m, "p");
              const cplx s = cplx_of(m, "s");
              const cplx rhs = 2.0 * std::cos(0.5 * kPi * s) * gamma(s) * std::exp(-s * std::log(2.0 * kPi)) *
                               eta_p(p, s, cfg).value;
              return std::make_pair(zeta_p_em(p, 1.0 - s, cfg), rhs);
          });

    b.add("F2", "large-k behaviour of the Mellin coefficients (s, nu k)_k -> (1 + 2/nu)^{-s}",
          "(s, 2 pi p k)_k by Mellin quadrature vs its asymptotic expansion led by (1 + 2/(2 pi p))^{-s}",
          ToleranceClass::series, Independence::distinct_representations, {"kosh_coeff"},
          {"kosh_coeff_asymptotic"}, {{"p", "1"}, {"s", "1.5"}, {"k", "40"}},
          {{"p", {"0.5", "1", "2"}}, {"s", {"0.75", "1.5", "2+1i"}}, {"k", {"40", "80"}}},
          all_of(re_s_above(0.0), finite_shape("p")), [](const ParamMap& m, const EvalConfig& cfg) {
              const double nu = 2.0 * kPi * shape_of(m, "p").p();
              const cplx s = cplx_of(m, "s");
              const int k = int_of(m, "k");
              if (k < 1) throw DomainError("domain: k must be >= 1");
              const auto c = kosh_coeff_asymptotic(s, nu, 8);
              cplx rhs = 0.0;
              for (std::size_t r = 0; r < c.size(); ++r) rhs += c[r] * std::pow(double(k), -2.0 * double(r));
              return std::make_pair(kosh_coeff(s, k, nu, cfg.quad), rhs);
          });
}

// ---------------------------------------------------------------------------
// Epstein-type identities.
// ---------------------------------------------------------------------------
EpsteinParams epstein_of(const ParamMap& m) {
    EpsteinParams prm;
    prm.p = shape_of(m, "p");
    prm.pprime = shape_of(m, "pprime");
    prm.c = real_of(m, "c");
    return prm;
}

void add_epstein(Builder& b) {
    const Domain cpos = positive({"c"});

    b.add("E1", "first Epstein analogue: direct lattice sum vs Bessel continuation for Re s > 1",
          "zeta_{p,p'}(s,c) by rows of the Watson series vs K-Bessel continuation", ToleranceClass::series,
          Independence::distinct_representations, {"epstein1_direct", "watson_series"},
          {"epstein1_bessel", "watson_bessel_sum"}, {{"p", "1"}, {"pprime", "2"}, {"c", "1"}, {"s", "1.5"}},
          {{"p", {"1", "inf"}}, {"pprime", {"2", "0"}}, {"c", {"1", "3"}}, {"s", {"1.1", "1.5", "2.5", "2+1i"}}},
          all_of(cpos, re_s_above(1.0)), [](const ParamMap& m, const EvalConfig& cfg) {
              const auto prm = epstein_of(m);
              const cplx s = cplx_of(m, "s");
              return std::make_pair(epstein1_direct(prm, s, cfg).value, epstein1_bessel(prm, s, cfg));
          });

    const ParamMap ppc = {{"p", "1"}, {"pprime", "1"}, {"c", "1"}};
    const ParamGrid g_res = {{"p", {"0.5", "2"}}, {"pprime", {"1", "inf"}}, {"c", {"1", "4"}}};

    b.add("E2", "residue of the first Epstein analogue at s = 1",
          "epsilon-extrapolated residue vs pi/sqrt(c)", ToleranceClass::laurent, Independence::closed_form,
          {"laurent_extract", "epstein1_bessel"}, {"elementary"}, ppc, g_res, cpos,
          [](const ParamMap& m, const EvalConfig& cfg) {
              const auto prm = epstein_of(m);
              const auto L = laurent_extract([&](double s) { return epstein1_bessel(prm, s, cfg); }, 1.0, cfg);
              return std::make_pair(L.residue, cplx(kPi / std::sqrt(prm.c), 0.0));
          });

    b.add("E3", "Kronecker limit formula for the first Epstein analogue",
          "constant term by extrapolation vs closed form with C_p'^(1) and the kern_p series",
          ToleranceClass::laurent, Independence::distinct_representations,
          {"laurent_extract", "epstein1_bessel"}, {"kronecker1_constant"}, ppc,
          {{"p", {"0.5", "2", "inf"}}, {"pprime", {"1", "inf"}}, {"c", {"1", "4"}}}, cpos,
          [](const ParamMap& m, const EvalConfig& cfg) {
              const auto prm = epstein_of(m);
              const auto L = laurent_extract([&](double s) { return epstein1_bessel(prm, s, cfg); }, 1.0, cfg);
              return std::make_pair(L.constant_term, kronecker1_constant(prm, cfg));
          });

    // Constant terms of the four particular lattices, written out row by row.
    auto kron_entry = [&](const std::string& id, const std::string& anchor, const std::string& fixed_key,
                          const std::string& fixed_value, const std::string& free_key,
                          std::vector<std::string> free_grid,
                          std::function<cplx(const ShapeParam&, double, const EvalConfig&)> closed) {
        ParamMap defaults = {{"c", "1"}, {fixed_key, fixed_value}, {free_key, "1"}};
        ParamGrid grid = {{free_key, std::move(free_grid)}, {"c", {"1", "4"}}};
        b.add(id, anchor, "constant term by extrapolation vs the written-out Kronecker-type closed form",
              ToleranceClass::laurent, Independence::closed_form, {"laurent_extract", "epstein1_bessel"},
              {"constants", "ShapeParam::kernel"}, defaults, grid,
              all_of(cpos,
                     [fixed_key, fixed_value](const ParamMap& m) -> std::optional<std::string> {
                         if (m.at(fixed_key) != ShapeParam::parse(fixed_value).label())
                             return "domain: " + fixed_key + " is fixed to " + fixed_value + " for this entry";
                         return std::nullopt;
                     }),
              [free_key, closed](const ParamMap& m, const EvalConfig& cfg) {
                  const auto prm = epstein_of(m);
                  const auto L = laurent_extract([&](double s) { return epstein1_bessel(prm, s, cfg); }, 1.0, cfg);
                  return std::make_pair(L.constant_term, closed(shape_of(m, free_key), prm.c, cfg));
              });
    };

    kron_entry("E4", "Kronecker-type expansion of zeta_{p,0} (half-integer second index)", "pprime", "0", "p",
               {"0.5", "2", "0"}, [](const ShapeParam& p, double c, const EvalConfig&) -> cplx {
                   const double rc = std::sqrt(c);
                   double sum = 0.0;
                   for (int n = 1; kPi * rc * (2.0 * n - 1.0) < 45.0 || n == 1; ++n)
                       sum += p.kernel(rc * (n - 0.5)) / (2.0 * n - 1.0);
                   return kPi / rc * (2.0 * kEulerGamma - std::log(c / 4.0) + 8.0 * sum);
               });
    kron_entry("E5", "Kronecker-type expansion of zeta_{p,inf}; p = inf is the usual Kronecker limit formula",
               "pprime", "inf", "p", {"0.5", "2", "inf", "0"},
               [](const ShapeParam& p, double c, const EvalConfig&) -> cplx {
                   const double rc = std::sqrt(c);
                   if (p.is_infinity())  // through the Dedekind eta function
                       return kPi / rc * (2.0 * kEulerGamma - std::log(4.0 * c) - 4.0 * log_dedekind_eta_imag(rc));
                   double sum = 0.0;
                   for (int n = 1; 2.0 * kPi * rc * n < 45.0 || n == 1; ++n) sum += p.kernel(rc * n) / n;
                   return kPi * kPi / 3.0 * m2(p) + kPi / rc * (2.0 * kEulerGamma - std::log(4.0 * c) + 4.0 * sum);
               });
    kron_entry("E6", "Laurent expansion of zeta_{inf,p'} around s = 1", "p", "inf", "pprime",
               {"0.5", "2", "0"}, [](const ShapeParam& q, double c, const EvalConfig& cfg) -> cplx {
                   const double rc = std::sqrt(c);
                   const cplx sum = weighted_rows(q, 45.0 / (2.0 * kPi * rc) + 1.0, [&](double l) {
                       return 1.0 / (l * std::expm1(2.0 * kPi * rc * l));
                   });
                   return kPi * kPi / 3.0 * q.ifac() +
                          kPi / rc * (2.0 * constants(q, cfg).c1 - std::log(4.0 * c) + 4.0 * sum);
               });
    kron_entry("E7", "meromorphic expansion of zeta_{0,p'} around s = 1", "p", "0", "pprime", {"0.5", "2", "inf"},
               [](const ShapeParam& q, double c, const EvalConfig& cfg) -> cplx {
                   const double rc = std::sqrt(c);
                   const cplx sum = weighted_rows(q, 45.0 / (2.0 * kPi * rc) + 1.0, [&](double l) {
                       const double e = std::exp(-2.0 * kPi * rc * l);
                       return e / (l * (1.0 + e));
                   });
                   return kPi * kPi * q.ifac() +
                          kPi / rc * (2.0 * constants(q, cfg).c1 - std::log(4.0 * c) - 4.0 * sum);
               });

    b.add("E8", "central value of the first Epstein analogue (second analogue of Euler's constant)",
          "constant term at s = 1/2 by extrapolation vs closed form with C_p^(1), C_p'^(2) and kernel integrals",
          ToleranceClass::laurent, Independence::distinct_representations,
          {"laurent_extract", "epstein1_bessel"}, {"epstein1_central", "watson_integral_term"},
          {{"p", "1"}, {"pprime", "2"}, {"c", "3"}},
          {{"p", {"1", "0"}}, {"pprime", {"2", "inf"}}, {"c", {"1", "3"}}}, cpos,
          [](const ParamMap& m, const EvalConfig& cfg) {
              const auto prm = epstein_of(m);
              const auto L = laurent_extract([&](double s) { return epstein1_bessel(prm, s, cfg); }, 0.5, cfg);
              return std::make_pair(L.constant_term, epstein1_central(prm, cfg));
          });

    b.add("E9", "real zero of zeta_{p,inf}(s, c) on (1/2, 1) for large c",
          "value of the continued Epstein function at the bisected root vs 0 (sign change verified)",
          ToleranceClass::series, Independence::closed_form, {"real_zero", "epstein1_continued"},
          {"elementary"}, {{"p", "1"}, {"c", "200"}}, {{"p", {"1", "inf"}}, {"c", {"200"}}}, cpos,
          [](const ParamMap& m, const EvalConfig& cfg) {
              EpsteinParams prm{shape_of(m, "p"), ShapeParam::infinity(), real_of(m, "c")};
              const auto z = real_zero(prm, cfg);
              const double flo = epstein1_continued(prm, z.lo, cfg).real();
              const double fhi = epstein1_continued(prm, z.hi, cfg).real();
              if (!(z.hi - z.lo <= 1e-8) || !(flo * fhi <= 0.0) || !(z.root > 0.5 && z.root < 1.0))
                  throw ConvergenceError("real zero: no verified sign change inside (1/2, 1)");
              return std::make_pair(epstein1_continued(prm, z.root, cfg), cplx(0.0, 0.0));
          });

    b.add("E10", "limiting lattices of the second Epstein analogue (shapes at 0 and inf), s = 2",
          "tilde-zeta at limit shapes vs row-wise coth/csch closed forms of the classical lattice sums",
          ToleranceClass::series, Independence::closed_form, {"epstein2"}, {"row_sq", "riemann_zeta"},
          {{"p", "inf"}, {"pprime", "inf"}, {"c", "1"}, {"s", "2"}},
          {{"p", {"inf", "0"}}, {"pprime", {"inf", "0"}}, {"c", {"1", "2"}}, {"s", {"2"}}},
          all_of(cpos,
                 [](const ParamMap& m) -> std::optional<std::string> {
                     if (shape_of(m, "p").is_finite() || shape_of(m, "pprime").is_finite())
                         return "domain: both shapes must be limit shapes";
                     if (cplx_of(m, "s") != cplx(2.0, 0.0)) return "domain: closed-form rows are for s = 2";
                     return std::nullopt;
                 }),
          [](const ParamMap& m, const EvalConfig& cfg) {
              const auto prm = epstein_of(m);
              const double rc = std::sqrt(prm.c);
              const bool alt = prm.p.is_zero();         // (-1)^m in the first index
              const bool half = prm.pprime.is_zero();   // n - 1/2 in the second index
              const double z4 = std::pow(kPi, 4) / 90.0;
              double rhs = 0.0;
              if (!half) rhs += alt ? -2.0 * (1.0 - 0.125) * z4 : 2.0 * z4;  // the n = 0 row
              for (int n = 1;; ++n) {
                  const double a = rc * (half ? n - 0.5 : double(n));
                  const double t = 2.0 * (alt ? row_sq_alt(a) : row_sq(a));
                  rhs += t;
                  if (std::abs(t) < 1e-18 * std::abs(rhs)) break;
              }
              return std::make_pair(epstein2(prm, 2.0, cfg, Epstein2Route::selberg_chowla), cplx(rhs, 0.0));
          });

    b.add("E11", "generalized Selberg-Chowla formula for the second Epstein analogue",
          "tilde-zeta by rows of the J-Bessel Watson analogue vs the double K-Bessel series",
          ToleranceClass::series, Independence::distinct_representations,
          {"epstein2(definition)", "watson2_integral_term"}, {"epstein2(selberg_chowla)", "bessel_k"},
          {{"p", "1"}, {"pprime", "2"}, {"c", "1"}, {"s", "1.5"}},
          {{"p", {"1", "inf", "0"}}, {"pprime", {"2", "0"}}, {"c", {"1", "2"}}, {"s", {"1.5", "2.5", "2+1i"}}},
          all_of(cpos, re_s_above(1.0)), [](const ParamMap& m, const EvalConfig& cfg) {
              const auto prm = epstein_of(m);
              const cplx s = cplx_of(m, "s");
              return std::make_pair(epstein2(prm, s, cfg, Epstein2Route::definition),
                                    epstein2(prm, s, cfg, Epstein2Route::selberg_chowla));
          });

    b.add("E12", "residue of the second Epstein analogue at s = 1",
          "epsilon-extrapolated residue vs pi/(sqrt(c)(1 + 1/(pi p)))", ToleranceClass::laurent,
          Independence::closed_form, {"laurent_extract", "epstein2(selberg_chowla)"}, {"elementary"}, ppc, g_res,
          cpos, [](const ParamMap& m, const EvalConfig& cfg) {
              const auto prm = epstein_of(m);
              const auto L = laurent_extract(
                  [&](double s) { return epstein2(prm, s, cfg, Epstein2Route::selberg_chowla); }, 1.0, cfg);
              return std::make_pair(L.residue, cplx(kPi / std::sqrt(prm.c) * prm.p.ifac(), 0.0));
          });

    b.add("E13", "Kronecker limit formula for the second Epstein analogue",
          "constant term by extrapolation vs closed form with eta_p(2), C_p'^(1) and sigma_p",
          ToleranceClass::laurent, Independence::distinct_representations,
          {"laurent_extract", "epstein2(selberg_chowla)"}, {"kronecker2_constant", "sigma_p"}, ppc,
          {{"p", {"0.5", "2", "inf"}}, {"pprime", {"1", "inf"}}, {"c", {"1", "4"}}}, cpos,
          [](const ParamMap& m, const EvalConfig& cfg) {
              const auto prm = epstein_of(m);
              const auto L = laurent_extract(
                  [&](double s) { return epstein2(prm, s, cfg, Epstein2Route::selberg_chowla); }, 1.0, cfg);
              return std::make_pair(L.constant_term, kronecker2_constant(prm, cfg));
          });

    const Domain fe_domain = [](const ParamMap& m) -> std::optional<std::string> {
        const cplx s = cplx_of(m, "s");
        if (is_integer(s)) return "gamma pole";
        return std::nullopt;
    };

    b.add("E14", "functional equation of the second Epstein analogue (shapes swap under s -> 1 - s)",
          "(pi/sqrt c)^{-s} Gamma(s) tilde-zeta_{p,p'}(s) by its definition vs the same for (p', p) at 1 - s "
          "by the Selberg-Chowla form",
          ToleranceClass::series, Independence::distinct_representations,
          {"epstein2(definition)", "watson2_integral_term"}, {"epstein2(selberg_chowla)", "bessel_k"},
          {{"p", "1"}, {"pprime", "0.5"}, {"c", "2"}, {"s", "1.3"}},
          {{"p", {"1"}}, {"pprime", {"0.5", "inf"}}, {"c", {"2"}}, {"s", {"1.3", "1.7", "2.5", "1.5+0.5i"}}},
          all_of(cpos, all_of(re_s_above(1.0), fe_domain)), [](const ParamMap& m, const EvalConfig& cfg) {
              const auto prm = epstein_of(m);
              const cplx s = cplx_of(m, "s");
              const double lq = std::log(kPi / std::sqrt(prm.c));
              const cplx lhs =
                  std::exp(-s * lq) * gamma(s) * epstein2(prm, s, cfg, Epstein2Route::definition);
              const cplx rhs = std::exp(-(1.0 - s) * lq) * gamma(1.0 - s) *
                               epstein2(prm.swapped(), 1.0 - s, cfg, Epstein2Route::selberg_chowla);
              return std::make_pair(lhs, rhs);
          });

    b.add("E15", "functional equation linking zeta_{inf,p'} with tilde-zeta_{p',inf}",
          "(pi/sqrt c)^{-s} Gamma(s) zeta_{inf,p'}(s) vs (pi/sqrt c)^{s-1} Gamma(1-s) tilde-zeta_{p',inf}(1-s)",
          ToleranceClass::series, Independence::distinct_modules, {"epstein1_direct"},
          {"epstein2(selberg_chowla)"}, {{"pprime", "1"}, {"c", "2"}, {"s", "1.3"}},
          {{"pprime", {"1", "0.5", "inf"}}, {"c", {"2"}}, {"s", {"1.3", "2.5", "1.5+0.5i"}}},
          all_of(cpos, all_of(re_s_above(1.0), fe_domain)), [](const ParamMap& m, const EvalConfig& cfg) {
              EpsteinParams prm{ShapeParam::infinity(), shape_of(m, "pprime"), real_of(m, "c")};
              const cplx s = cplx_of(m, "s");
              const double lq = std::log(kPi / std::sqrt(prm.c));
              const cplx lhs = std::exp(-s * lq) * gamma(s) * epstein1_direct(prm, s, cfg).value;
              const cplx rhs = std::exp(-(1.0 - s) * lq) * gamma(1.0 - s) *
                               epstein2(prm.swapped(), 1.0 - s, cfg, Epstein2Route::selberg_chowla);
              return std::make_pair(lhs, rhs);
          });

    b.add("E16", "central value of the second Epstein analogue",
          "constant term at s = 1/2 by extrapolation vs closed form with C^(2) constants and K_0 double series",
          ToleranceClass::laurent, Independence::distinct_representations,
          {"laurent_extract", "epstein2(selberg_chowla)"}, {"epstein2_central"},
          {{"p", "1"}, {"pprime", "2"}, {"c", "4"}},
          {{"p", {"1", "inf", "0"}}, {"pprime", {"2", "inf"}}, {"c", {"1", "4"}}}, cpos,
          [](const ParamMap& m, const EvalConfig& cfg) {
              const auto prm = epstein_of(m);
              const auto L = laurent_extract(
                  [&](double s) { return epstein2(prm, s, cfg, Epstein2Route::selberg_chowla); }, 0.5, cfg);
              return std::make_pair(L.constant_term, epstein2_central(prm, cfg));
          });
}

// ---------------------------------------------------------------------------
// Modular-type (Ramanujan-Guinand, Koshliakov, Dedekind) identities.
// ---------------------------------------------------------------------------
void add_modular(Builder& b) {
    b.add("L1", "limiting cases of K_{nu,p}(x) at the limit shapes",
          "K_{nu,p}(x) by quadrature vs Gamma(1/2 - nu)(2x)^nu/sqrt(pi) sum (+-1)^n n^nu K_nu(x n)",
          ToleranceClass::series, Independence::distinct_modules, {"k_kernel"}, {"bessel_k"},
          {{"p", "inf"}, {"nu", "-0.25"}, {"x", "1"}},
          {{"p", {"inf", "0"}}, {"nu", {"-0.25", "0", "0.2+0.3i", "-1.5"}}, {"x", {"0.5", "1", "2"}}},
          all_of(positive({"x"}),
                 [](const ParamMap& m) -> std::optional<std::string> {
                     if (shape_of(m, "p").is_finite()) return "domain: p must be a limit shape";
                     if (!(cplx_of(m, "nu").real() < 0.5)) return "domain: Re nu must be < 1/2";
                     return std::nullopt;
                 }),
          [](const ParamMap& m, const EvalConfig& cfg) {
              const auto p = shape_of(m, "p");
              const cplx nu = cplx_of(m, "nu");
              const double x = real_of(m, "x");
              cplx sum = 0.0;
              for (int n = 1; x * n < 48.0 + std::abs(nu) || n == 1; ++n) {
                  const cplx t = cpow(n, nu) * bessel_k(nu, x * n);
                  sum += (p.is_zero() && n % 2 == 1) ? -t : t;
              }
              const cplx rhs = gamma(0.5 - nu) * cpow(2.0 * x, nu) / std::sqrt(kPi) * sum;
              return std::make_pair(k_kernel(p, nu, x, cfg), rhs);
          });

    const Domain alpha_ok = positive({"alpha"});
    const ParamMap pas = {{"p", "1"}, {"alpha", "1"}, {"s", "-0.5"}};

    b.add("L2", "generalized Ramanujan-Guinand formula with K_{nu,p}",
          "difference of weighted K_{s/2,p} sums at alpha and beta = pi^2/alpha vs eta_p(-s), zeta_p(s) terms",
          ToleranceClass::series, Independence::distinct_modules, {"k_kernel"}, {"eta_p_any", "zeta_p_em"}, pas,
          {{"p", kPGrid}, {"alpha", kAlphaGrid}, {"s", kLGrid}}, all_of(alpha_ok, guinand_domain(true)),
          [](const ParamMap& m, const EvalConfig& cfg) {
              const auto p = shape_of(m, "p");
              const double a = real_of(m, "alpha"), bt = beta_of(a);
              const cplx s = cplx_of(m, "s");
              const cplx lhs = guinand_prefactor(s, a) * k_kernel_sum(p, p, s, a, cfg) -
                               guinand_prefactor(s, bt) * k_kernel_sum(p, p, s, bt, cfg);
              const cplx rhs =
                  gamma(-0.5 * s) * eta_p_any(p, -s, cfg) * p.ifac() / 4.0 *
                      (cpow(bt, 0.5 * (1.0 + s)) - cpow(a, 0.5 * (1.0 + s))) +
                  gamma(0.5 * s) * zeta_p_em(p, s, cfg) / 4.0 * (cpow(bt, 0.5 * (1.0 - s)) - cpow(a, 0.5 * (1.0 - s)));
              return std::make_pair(lhs, rhs);
          });

    b.add("L3", "generalization of Entry 3.3.3 (Koshliakov's formula) with gamma_p",
          "sqrt(alpha)(gamma_p/4 - ifac log(4 beta)/4 + sum w K_{0,p}(2 alpha lambda)) vs the alpha <-> beta image",
          ToleranceClass::series, Independence::transformation_pair, {"k_kernel", "constants"},
          {"k_kernel", "constants"}, {{"p", "1"}, {"alpha", "1"}}, {{"p", kPGrid}, {"alpha", kAlphaGrid}},
          alpha_ok, [](const ParamMap& m, const EvalConfig& cfg) {
              const auto p = shape_of(m, "p");
              const double a = real_of(m, "alpha"), bt = beta_of(a);
              const double gp = constants(p, cfg).gamma_p;
              auto side = [&](double u, double v) {
                  const cplx sum = weighted_rows(p, 48.0 / (2.0 * u), [&](double l) {
                      return k_kernel(p, 0.0, 2.0 * u * l, cfg);
                  });
                  return std::sqrt(u) * (gp / 4.0 - p.ifac() * std::log(4.0 * v) / 4.0 + sum);
              };
              return std::make_pair(side(a, bt), side(bt, a));
          });

    auto& l4 = b.add("L4", "classical Ramanujan-Guinand and Koshliakov formulas (integer and odd lattices)",
          "difference of double K-Bessel sums at alpha and beta vs zeta(s) terms (elementary terms at s = 0)",
          ToleranceClass::series, Independence::distinct_modules, {"bessel_k"}, {"riemann_zeta", "elementary"},
          {{"variant", "guinand"}, {"alpha", "1"}, {"s", "0.5"}},
          {{"variant", {"guinand", "guinand_odd"}}, {"alpha", kAlphaGrid}, {"s", {"-0.5", "0", "0.5", "1", "1.5+1i"}}},
          all_of(alpha_ok,
                 [](const ParamMap& m) -> std::optional<std::string> {
                     const auto& v = m.at("variant");
                     if (v == "koshliakov" || v == "koshliakov_odd") {
                         if (m.at("s") != "0") return "domain: the Koshliakov variants take s = 0";
                         return std::nullopt;
                     }
                     if (v != "guinand" && v != "guinand_odd") return "domain: unknown variant";
                     if (is_even_integer(cplx_of(m, "s"))) return "gamma pole";
                     if (v == "guinand" && cplx_of(m, "s") == cplx(-1.0, 0.0)) return "zeta pole";
                     return std::nullopt;
                 }),
          [](const ParamMap& m, const EvalConfig&) {
              const double a = real_of(m, "alpha"), bt = beta_of(a);
              const cplx s = cplx_of(m, "s");
              const auto& v = m.at("variant");
              const auto inf = ShapeParam::infinity(), zero = ShapeParam::zero();
              if (v == "guinand") {
                  const cplx lhs = std::sqrt(a) * bessel_double_sum(inf, s, a, false) -
                                   std::sqrt(bt) * bessel_double_sum(inf, s, bt, false);
                  const cplx rhs = gamma(-0.5 * s) * riemann_zeta(-s) / 4.0 *
                                       (cpow(bt, 0.5 * (1.0 + s)) - cpow(a, 0.5 * (1.0 + s))) +
                                   gamma(0.5 * s) / 4.0 * zeta_times_gap(s, a, bt);
                  return std::make_pair(lhs, rhs);
              }
              if (v == "guinand_odd") {
                  // rows b_n = n - 1/2: (m/b_n)^{s/2} K(2 m b_n a) = 2^{s/2}(m/(2n-1))^{s/2} K((2n-1) m a)
                  const cplx f = cpow(2.0, -0.5 * s);
                  const cplx lhs = f * (std::sqrt(a) * bessel_double_sum(zero, s, a, true) -
                                        std::sqrt(bt) * bessel_double_sum(zero, s, bt, true));
                  const cplx rhs =
                      gamma(0.5 * s) * (cpow(2.0, 0.5 * s) - cpow(2.0, -0.5 * s)) / 4.0 * zeta_times_gap(s, a, bt);
                  return std::make_pair(lhs, rhs);
              }
              // Koshliakov's formula and its odd-lattice form, written as a
              // difference of the Bessel sums at alpha and beta against the
              // elementary remainder.
              if (v == "koshliakov") {
                  const cplx lhs = std::sqrt(a) * bessel_double_sum(inf, 0.0, a, false) -
                                   std::sqrt(bt) * bessel_double_sum(inf, 0.0, bt, false);
                  const double rhs = std::sqrt(bt) * (kEulerGamma - std::log(4.0 * a)) / 4.0 -
                                     std::sqrt(a) * (kEulerGamma - std::log(4.0 * bt)) / 4.0;
                  return std::make_pair(lhs, cplx(rhs, 0.0));
              }
              // (-1)^m K_0((2n-1) m u) with rows n - 1/2
              const cplx lhs = std::sqrt(a) * bessel_double_sum(zero, 0.0, a, true) -
                               std::sqrt(bt) * bessel_double_sum(zero, 0.0, bt, true);
              return std::make_pair(lhs, cplx(kLn2 / 4.0 * (std::sqrt(a) - std::sqrt(bt)), 0.0));
          });

    l4.grids.push_back({{"variant", {"koshliakov", "koshliakov_odd"}}, {"alpha", kAlphaGrid}, {"s", {"0"}}});

    b.add("L5", "two-parameter generalization of the Ramanujan-Guinand formula",
          "eta_p, eta_p', zeta_p, zeta_p' combination vs K_{s/2,p} and K_{s/2,p'} sums at alpha and beta",
          ToleranceClass::series, Independence::distinct_modules, {"eta_p_any", "zeta_p_em"}, {"k_kernel"},
          {{"p", "0.5"}, {"pprime", "1"}, {"alpha", "1"}, {"s", "-0.5"}},
          {{"p", {"0.5", "2"}}, {"pprime", {"1"}}, {"alpha", kAlphaGrid}, {"s", kLGrid}},
          all_of(alpha_ok, guinand_domain(true)), [](const ParamMap& m, const EvalConfig& cfg) {
              const auto p = shape_of(m, "p"), q = shape_of(m, "pprime");
              const double a = real_of(m, "alpha"), bt = beta_of(a);
              const cplx s = cplx_of(m, "s");
              const cplx lhs = gamma(-0.5 * s) / 4.0 *
                                   (cpow(bt, 0.5 * (s + 1.0)) * p.ifac() * eta_p_any(q, -s, cfg) -
                                    cpow(a, 0.5 * (s + 1.0)) * q.ifac() * eta_p_any(p, -s, cfg)) +
                               gamma(0.5 * s) / 4.0 *
                                   (cpow(bt, 0.5 * (1.0 - s)) * zeta_p_em(p, s, cfg) -
                                    cpow(a, 0.5 * (1.0 - s)) * zeta_p_em(q, s, cfg));
              const cplx rhs = guinand_prefactor(s, a) * k_kernel_sum(p, q, s, a, cfg) -
                               guinand_prefactor(s, bt) * k_kernel_sum(q, p, s, bt, cfg);
              return std::make_pair(lhs, rhs);
          });

    b.add("L6", "Ramanujan-Guinand analogue with one integer lattice (p' -> inf); p = 0 is the odd companion",
          "zeta, eta_p, zeta_p combination vs sum n^{-s} K_{s/2,p}(2 n alpha) and a weighted double K-Bessel sum",
          ToleranceClass::series, Independence::distinct_modules, {"riemann_zeta", "eta_p_any", "zeta_p_em"},
          {"k_kernel", "bessel_k"}, pas, {{"p", {"0.5", "2", "0"}}, {"alpha", kAlphaGrid}, {"s", kLGrid}},
          all_of(alpha_ok,
                 [](const ParamMap& m) -> std::optional<std::string> {
                     // The odd companion (p = 0) holds for every s.
                     return guinand_domain(!shape_of(m, "p").is_zero())(m);
                 }),
          [](const ParamMap& m, const EvalConfig& cfg) {
              const auto p = shape_of(m, "p");
              const double a = real_of(m, "alpha"), bt = beta_of(a);
              const cplx s = cplx_of(m, "s");
              const auto inf = ShapeParam::infinity();
              if (p.is_zero()) {
                  const cplx lhs = gamma(-0.5 * s) * riemann_zeta(-s) / 4.0 * cpow(a, 0.5 * (s + 1.0)) *
                                       (1.0 - cpow(2.0, 1.0 + s)) +
                                   gamma(0.5 * s) * riemann_zeta(s) / 4.0 *
                                       (cpow(bt, 0.5 * (1.0 - s)) * (cpow(2.0, s) - 1.0) - cpow(a, 0.5 * (1.0 - s)));
                  // sqrt(a) sum (-1)^n (n/m)^{s/2} K(2 m n a), relabelled m <-> n.
                  const cplx first = std::sqrt(a) * bessel_double_sum(inf, s, a, true);
                  const cplx second = std::sqrt(bt) * bessel_double_sum(ShapeParam::zero(), s, bt, false);
                  return std::make_pair(lhs, first - second);
              }
              const cplx lhs = gamma(-0.5 * s) / 4.0 *
                                   (cpow(bt, 0.5 * (s + 1.0)) * p.ifac() * riemann_zeta(-s) -
                                    cpow(a, 0.5 * (s + 1.0)) * eta_p_any(p, -s, cfg)) +
                               gamma(0.5 * s) / 4.0 *
                                   (cpow(bt, 0.5 * (1.0 - s)) * zeta_p_em(p, s, cfg) -
                                    cpow(a, 0.5 * (1.0 - s)) * riemann_zeta(s));
              const cplx rhs = guinand_prefactor(s, a) * k_kernel_sum(p, inf, s, a, cfg) -
                               std::sqrt(bt) * bessel_double_sum(p, s, bt, false);
              return std::make_pair(lhs, rhs);
          });

    b.add("L7", "Ramanujan-Guinand analogue with one half-integer lattice (p' -> 0)",
          "zeta, zeta_p combination vs sum (2n-1)^{-s} K_{s/2,p}((2n-1) alpha) and an alternating double sum",
          ToleranceClass::series, Independence::distinct_modules, {"riemann_zeta", "zeta_p_em"},
          {"k_kernel", "bessel_k"}, pas, {{"p", {"0.5", "2", "inf"}}, {"alpha", kAlphaGrid}, {"s", kLGrid}},
          all_of(alpha_ok, guinand_domain(true)), [](const ParamMap& m, const EvalConfig& cfg) {
              const auto p = shape_of(m, "p");
              const double a = real_of(m, "alpha"), bt = beta_of(a);
              const cplx s = cplx_of(m, "s");
              const cplx lhs = gamma(-0.5 * s) * riemann_zeta(-s) / 4.0 * cpow(bt, 0.5 * (s + 1.0)) * p.ifac() *
                                   (cpow(2.0, 1.0 + s) - 1.0) +
                               gamma(0.5 * s) / 4.0 *
                                   (cpow(bt, 0.5 * (1.0 - s)) * zeta_p_em(p, s, cfg) -
                                    cpow(a, 0.5 * (1.0 - s)) * (cpow(2.0, s) - 1.0) * riemann_zeta(s));
              cplx first = 0.0;
              for (int n = 1;; ++n) {
                  const double k = 2.0 * n - 1.0;
                  if (k * a > 48.0 && n > 1) break;
                  first += cpow(k, -s) * k_kernel(p, 0.5 * s, k * a, cfg);
              }
              const cplx rhs = std::sqrt(kPi) * rgamma(0.5 * (1.0 - s)) * cpow(a, 0.5 * (1.0 - s)) * first -
                               std::sqrt(bt) * bessel_double_sum(p, s, bt, true);
              return std::make_pair(lhs, rhs);
          });

    b.add("L8", "generalization of Entry 3.3.2 (Dedekind eta transformation) for two shapes",
          "difference of weighted Lambert-type series at alpha and beta vs elementary terms with C^(1) constants",
          ToleranceClass::series, Independence::closed_form, {"ShapeParam::kernel"},
          {"constants", "zeta_p_two_closed"}, {{"p", "0.5"}, {"pprime", "1"}, {"alpha", "1"}},
          {{"p", {"0.5", "2", "inf"}}, {"pprime", {"0.5", "1", "0"}}, {"alpha", kAlphaGrid}}, alpha_ok,
          [](const ParamMap& m, const EvalConfig& cfg) {
              const auto p = shape_of(m, "p"), q = shape_of(m, "pprime");
              const double a = real_of(m, "alpha"), bt = beta_of(a);
              const cplx first = weighted_rows(q, 45.0 / (2.0 * a) + 1.0,
                                               [&](double l) { return p.kernel(l * a / kPi) / l; });
              const cplx second = weighted_rows(p, 45.0 / (2.0 * bt) + 1.0,
                                                [&](double l) { return q.kernel(l * bt / kPi) / l; });
              const cplx rhs = (bt * p.ifac() * m2(q) - a * q.ifac() * m2(p)) / 12.0 +
                               (constants(p, cfg).c1 - constants(q, cfg).c1) / 2.0 + 0.25 * std::log(a / bt);
              return std::make_pair(first - second, rhs);
          });

    b.add("L9", "mixed Lambert-series identity pairing the integer and odd lattices",
          "sum 1/(n(e^{2 alpha n} + 1)) + 2 sum 1/((2n-1)(e^{beta(2n-1)} - 1)) vs alpha/4 - log 2 - log(alpha/beta)/4",
          ToleranceClass::series, Independence::closed_form, {"elementary series"}, {"elementary"},
          {{"alpha", "1"}}, {{"alpha", kAlphaGrid}}, alpha_ok, [](const ParamMap& m, const EvalConfig&) {
              const double a = real_of(m, "alpha"), bt = beta_of(a);
              double lhs = 0.0;
              for (int n = 1; 2.0 * a * n < 45.0 || n == 1; ++n) {
                  const double e = std::exp(-2.0 * a * n);
                  lhs += e / (n * (1.0 + e));
              }
              for (int n = 1; bt * (2.0 * n - 1.0) < 45.0 || n == 1; ++n)
                  lhs += 2.0 / ((2.0 * n - 1.0) * std::expm1(bt * (2.0 * n - 1.0)));
              return std::make_pair(cplx(lhs, 0.0), cplx(a / 4.0 - kLn2 - 0.25 * std::log(a / bt), 0.0));
          });

    b.add("L10", "generalized Schlomilch-type series at the self-dual point",
          "sum w_n e^{2 pi lambda}/(sigma e^{2 pi lambda} - 1)^2 (pi sigma + p/(p - lambda)^2) vs pi kappa/24 - 1/8",
          ToleranceClass::series, Independence::closed_form, {"sequence rows"}, {"zeta_p_two_closed"},
          {{"p", "1"}}, {{"p", {"0.5", "1", "2", "inf", "0"}}}, no_domain(),
          [](const ParamMap& m, const EvalConfig&) {
              const auto p = shape_of(m, "p");
              const cplx lhs = weighted_rows(p, 45.0 / (2.0 * kPi) + 1.0, [&](double l) {
                  const double e = std::exp(-2.0 * kPi * l);
                  if (p.is_infinity()) return kPi * e / ((1.0 - e) * (1.0 - e));
                  if (p.is_zero()) return -kPi * e / ((1.0 + e) * (1.0 + e));
                  // multiplied through by (p - lambda)^2 e^{-4 pi lambda}
                  const double pp = p.p();
                  const double den = (pp + l) - (pp - l) * e;
                  return e * (kPi * (pp + l) * (pp - l) + pp) / (den * den);
              });
              return std::make_pair(lhs, cplx(kPi / 24.0 * m2(p) * p.ifac() - 0.125, 0.0));
          });

    auto& l11 = b.add(
        "L11", "Schlomilch's formula and its companion", "elementary Lambert-type series vs 1/24 - 1/(8 pi) and 1/(8 pi)",
        ToleranceClass::elementary, Independence::closed_form, {"elementary series"}, {"elementary"},
        {{"variant", "schlomilch"}}, {{"variant", {"schlomilch", "companion"}}},
        [](const ParamMap& m) -> std::optional<std::string> {
            const auto& v = m.at("variant");
            if (v != "schlomilch" && v != "companion") return "domain: variant must be schlomilch or companion";
            return std::nullopt;
        },
        [](const ParamMap& m, const EvalConfig&) {
            double lhs = 0.0;
            if (m.at("variant") == "schlomilch") {
                for (int n = 1; n < 8; ++n) {
                    const double e = std::exp(-2.0 * kPi * n);
                    lhs += e / ((1.0 - e) * (1.0 - e));
                }
                return std::make_pair(cplx(lhs, 0.0), cplx(1.0 / 24.0 - 1.0 / (8.0 * kPi), 0.0));
            }
            for (int n = 1; n < 14; ++n) {
                const double e = std::exp(-kPi * (2.0 * n - 1.0));
                lhs += e / ((1.0 + e) * (1.0 + e));
            }
            return std::make_pair(cplx(lhs, 0.0), cplx(1.0 / (8.0 * kPi), 0.0));
        });
    (void)l11;

    // Ramanujan's three classical entries on page 253 of the lost notebook.
    const std::vector<std::string> c_alpha = {"1", "2", kPiText, "4"};

    b.add("C1", "Ramanujan-Guinand formula (lost notebook Entry 3.3.1)",
          "divisor-function K-Bessel series at alpha and beta vs zeta(s) and zeta(-s) terms",
          ToleranceClass::series, Independence::distinct_modules, {"bessel_k", "divisor sums"}, {"riemann_zeta"},
          {{"alpha", kPiText}, {"s", "1"}}, {{"alpha", c_alpha}, {"s", {"0", "1", "1+1i", "-0.5", "0.5"}}},
          all_of(alpha_ok,
                 [](const ParamMap& m) -> std::optional<std::string> {
                     const cplx s = cplx_of(m, "s");
                     if (is_even_integer(s)) return "gamma pole";
                     if (s == cplx(-1.0, 0.0)) return "zeta pole";
                     return std::nullopt;
                 }),
          [](const ParamMap& m, const EvalConfig&) {
              const double a = real_of(m, "alpha"), bt = beta_of(a);
              const cplx s = cplx_of(m, "s");
              auto side = [&](double u) {
                  const int nmax = static_cast<int>(std::ceil((48.0 + std::abs(s)) / (2.0 * u))) + 1;
                  return std::sqrt(u) * divisor_series(-s, nmax, [&](int n) {
                             return cpow(n, 0.5 * s) * bessel_k(0.5 * s, 2.0 * n * u);
                         });
              };
              const cplx rhs = gamma(-0.5 * s) * riemann_zeta(-s) / 4.0 *
                                   (cpow(bt, 0.5 * (1.0 + s)) - cpow(a, 0.5 * (1.0 + s))) +
                               gamma(0.5 * s) / 4.0 * zeta_times_gap(s, a, bt);
              return std::make_pair(side(a) - side(bt), rhs);
          });

    b.add("C2", "transformation formula for the logarithm of the Dedekind eta function (Entry 3.3.2)",
          "sum sigma_{-1}(n) e^{-2 n alpha} - (same at beta) vs (beta - alpha)/12 + log(alpha/beta)/4",
          ToleranceClass::elementary, Independence::closed_form, {"divisor sums"}, {"elementary"},
          {{"alpha", kPiText}}, {{"alpha", c_alpha}},
          [](const ParamMap& m) -> std::optional<std::string> {
              if (!(real_of(m, "alpha") > 0)) return "domain: alpha must be positive";
              return std::nullopt;
          },
          [](const ParamMap& m, const EvalConfig&) {
              const double a = real_of(m, "alpha"), bt = beta_of(a);
              auto side = [&](double u) {
                  const int nmax = static_cast<int>(std::ceil(42.0 / (2.0 * u))) + 1;
                  return divisor_series(-1.0, nmax, [&](int n) { return cplx(std::exp(-2.0 * n * u), 0.0); });
              };
              return std::make_pair(side(a) - side(bt), cplx((bt - a) / 12.0 + 0.25 * std::log(a / bt), 0.0));
          });

    b.add("C3", "Koshliakov's formula (Entry 3.3.3)",
          "sqrt(alpha)(gamma/4 - log(4 beta)/4 + sum d(n) K_0(2 n alpha)) vs the alpha <-> beta image",
          ToleranceClass::series, Independence::transformation_pair, {"bessel_k", "divisor sums"},
          {"bessel_k", "divisor sums"}, {{"alpha", kPiText}}, {{"alpha", c_alpha}}, alpha_ok,
          [](const ParamMap& m, const EvalConfig&) {
              const double a = real_of(m, "alpha"), bt = beta_of(a);
              auto side = [&](double u, double w) {
                  const int nmax = static_cast<int>(std::ceil(48.0 / (2.0 * u))) + 1;
                  const cplx sum = divisor_series(0.0, nmax, [&](int n) { return bessel_k(0.0, 2.0 * n * u); });
                  return std::sqrt(u) * (kEulerGamma / 4.0 - std::log(4.0 * w) / 4.0 + sum);
              };
              return std::make_pair(side(a, bt), side(bt, a));
          });
}

std::vector<IdentityEntry> build_registry() {
    Builder b;
    add_ramanujan(b);
    add_watson(b);
    add_epstein(b);
    add_modular(b);
    std::sort(b.entries.begin(), b.entries.end(),
              [](const IdentityEntry& x, const IdentityEntry& y) { return natural_id_less(x.id, y.id); });
    return std::move(b.entries);
}

// Natural comparison of parameter values: numerically when both parse as
// reals, otherwise as strings.
bool value_less(const std::string& a, const std::string& b) {
    double x = 0, y = 0;
    auto rx = std::from_chars(a.data(), a.data() + a.size(), x);
    auto ry = std::from_chars(b.data(), b.data() + b.size(), y);
    const bool nx = rx.ec == std::errc() && rx.ptr == a.data() + a.size();
    const bool ny = ry.ec == std::errc() && ry.ptr == b.data() + b.size();
    if (nx && ny && x != y) return x < y;
    if (nx != ny) return nx;  // numbers before words
    return a < b;
}

bool params_less(const ParamMap& a, const ParamMap& b) {
    auto ia = a.begin(), ib = b.begin();
    for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first;
        if (ia->second != ib->second) return value_less(ia->second, ib->second);
    }
    return ia == a.end() && ib != b.end();
}

}  // namespace

// ---------------------------------------------------------------------------
// Public interface.
// ---------------------------------------------------------------------------
double default_tolerance(ToleranceClass tc) {
    switch (tc) {
    case ToleranceClass::series: return 1e-7;
    case ToleranceClass::laurent: return 1e-5;
    case ToleranceClass::elementary: return 1e-12;
    }
    return 1e-7;
}

std::string to_string(Independence ind) {
    switch (ind) {
    case Independence::distinct_modules: return "distinct_modules";
    case Independence::distinct_representations: return "distinct_representations";
    case Independence::transformation_pair: return "transformation_pair";
    case Independence::closed_form: return "closed_form";
    }
    return "?";
}

std::string IdentityCase::status_string() const {
    switch (status) {
    case CaseStatus::pass: return "pass";
    case CaseStatus::fail: return "fail";
    case CaseStatus::skipped: return "skipped(" + reason + ")";
    }
    return "?";
}

std::pair<CaseStatus, std::string> parse_status(const std::string& text) {
    if (text == "pass") return {CaseStatus::pass, ""};
    if (text == "fail") return {CaseStatus::fail, ""};
    const std::string head = "skipped(";
    if (text.size() > head.size() && text.compare(0, head.size(), head) == 0 && text.back() == ')')
        return {CaseStatus::skipped, text.substr(head.size(), text.size() - head.size() - 1)};
    throw std::invalid_argument("invalid case status '" + text + "'");
}

std::vector<std::string> IdentityEntry::param_names() const {
    std::vector<std::string> names;
    for (const auto& kv : defaults) names.push_back(kv.first);
    return names;
}

double identity_residual(cplx lhs, cplx rhs) {
    return std::abs(lhs - rhs) / (1.0 + std::abs(lhs) + std::abs(rhs));
}

bool natural_id_less(const std::string& a, const std::string& b) {
    auto split = [](const std::string& s) {
        std::size_t k = 0;
        while (k < s.size() && !std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
        const long num = k < s.size() ? std::stol(s.substr(k)) : -1;
        return std::make_pair(s.substr(0, k), num);
    };
    const auto x = split(a), y = split(b);
    if (x != y) return x < y;
    return a < b;
}

namespace {
std::vector<IdentityEntry>& mutable_registry() {
    static std::vector<IdentityEntry> registry = build_registry();
    return registry;
}
}  // namespace

const std::vector<IdentityEntry>& identity_registry() { return mutable_registry(); }

void register_identity(IdentityEntry entry) {
    auto& reg = mutable_registry();
    for (const auto& e : reg)
        if (e.id == entry.id) throw std::invalid_argument("identity id '" + entry.id + "' already registered");
    if (!entry.domain) entry.domain = no_domain();
    if (!entry.evaluate) throw std::invalid_argument("identity '" + entry.id + "' has no evaluator");
    reg.push_back(std::move(entry));
    std::stable_sort(reg.begin(), reg.end(),
                     [](const IdentityEntry& x, const IdentityEntry& y) { return natural_id_less(x.id, y.id); });
}

double case_tolerance(const std::string& id, const ParamMap& params) {
    const IdentityEntry& entry = find_identity(id);
    if (entry.tolerance_override)
        if (auto t = entry.tolerance_override(params)) return *t;
    return default_tolerance(entry.tolerance_class);
}

const IdentityEntry& find_identity(const std::string& id) {
    for (const auto& e : identity_registry())
        if (e.id == id) return e;
    throw std::invalid_argument("unknown identity id '" + id + "'");
}

IdentityCase evaluate_identity(const std::string& id, const ParamMap& params, const EvalConfig& cfg) {
    const IdentityEntry& entry = find_identity(id);
    IdentityCase out;
    out.id = id;

    // Canonical parameter map: defaults, then the request.  beta is derived
    // from alpha and only checked when supplied.
    ParamMap merged = entry.defaults;
    std::optional<double> beta_given;
    for (const auto& [k, v] : params) {
        if (k == "beta" && entry.defaults.count("alpha")) {
            beta_given = parse_real(v);
            continue;
        }
        if (!entry.defaults.count(k))
            throw std::invalid_argument("identity " + id + " has no parameter '" + k + "'");
        merged[k] = v;
    }
    for (auto& [k, v] : merged) v = canonical_value(k, v);
    out.params = merged;
    if (beta_given) out.params["beta"] = shortest(*beta_given);

    out.tolerance = case_tolerance(id, merged);

    try {
        if (beta_given) {
            const double a = parse_real(merged.at("alpha"));
            if (std::abs(a * *beta_given - kPi * kPi) > 1e-12 * kPi * kPi) {
                out.status = CaseStatus::skipped;
                out.reason = "domain: alpha * beta must equal pi^2";
                return out;
            }
        }
        if (auto why = entry.domain(merged)) {
            out.status = CaseStatus::skipped;
            out.reason = *why;
            return out;
        }
        const auto [l, r] = entry.evaluate(merged, cfg);
        out.lhs = l;
        out.rhs = r;
        out.residual = identity_residual(l, r);
        const bool ok = std::isfinite(out.residual) && out.residual < out.tolerance;
        out.status = ok ? CaseStatus::pass : CaseStatus::fail;
        if (!ok) out.reason = std::isfinite(out.residual) ? "residual above tolerance" : "non-finite value";
    } catch (const DomainError& e) {
        out.status = CaseStatus::skipped;
        out.reason = e.what();
    } catch (const std::invalid_argument& e) {
        throw;
    } catch (const std::exception& e) {
        out.status = CaseStatus::fail;
        out.reason = e.what();
        out.residual = std::numeric_limits<double>::infinity();
    }
    return out;
}

bool id_matches(const std::string& pattern, const std::string& id) {
    if (pattern.empty()) return true;
    // Iterative glob with backtracking on the last '*'.
    std::size_t p = 0, s = 0, star = std::string::npos, mark = 0;
    while (s < id.size()) {
        if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == id[s])) {
            ++p;
            ++s;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = s;
        } else if (star != std::string::npos) {
            p = star + 1;
            s = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

SuiteSummary summarize(const std::vector<IdentityCase>& cases) {
    SuiteSummary s;
    for (const auto& c : cases) {
        switch (c.status) {
        case CaseStatus::pass: ++s.pass; break;
        case CaseStatus::fail: ++s.fail; break;
        case CaseStatus::skipped: ++s.skipped; break;
        }
        if (c.status == CaseStatus::skipped) {
            s.worst_residual_by_id.emplace(c.id, 0.0);
            continue;
        }
        auto [it, fresh] = s.worst_residual_by_id.emplace(c.id, c.residual);
        if (!fresh && !(it->second >= c.residual)) it->second = c.residual;
    }
    return s;
}

VerificationReport run_suite(const std::string& filter, const ParamGrid& grid, const EvalConfig& cfg, int threads) {
    cfg.validate();
    struct Job {
        std::string id;
        ParamMap params;
    };
    std::vector<Job> jobs;
    for (const auto& entry : identity_registry()) {
        // Patterns may list several globs separated by commas.
        bool hit = filter.empty();
        std::size_t start = 0;
        while (!hit && start <= filter.size()) {
            const std::size_t comma = filter.find(',', start);
            const std::string pat = filter.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            if (!pat.empty() && id_matches(pat, entry.id)) hit = true;
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (!hit) continue;
        std::vector<ParamMap> points;
        for (ParamGrid g : entry.grids) {
            for (const auto& [k, vals] : grid)
                if (entry.defaults.count(k)) g[k] = vals;
            // Cartesian product in key order.
            std::vector<ParamMap> product = {ParamMap{}};
            for (const auto& [k, vals] : g) {
                std::vector<ParamMap> next;
                for (const auto& pt : product)
                    for (const auto& v : vals) {
                        ParamMap q = pt;
                        q[k] = canonical_value(k, v);
                        next.push_back(std::move(q));
                    }
                product = std::move(next);
            }
            points.insert(points.end(), product.begin(), product.end());
        }
        for (auto& pt : points) {
            // Complete with defaults so the sort key is the full canonical map.
            for (const auto& [k, v] : entry.defaults)
                if (!pt.count(k)) pt[k] = canonical_value(k, v);
            jobs.push_back({entry.id, std::move(pt)});
        }
    }
    std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
        if (a.id != b.id) return natural_id_less(a.id, b.id);
        return params_less(a.params, b.params);
    });
    jobs.erase(std::unique(jobs.begin(), jobs.end(),
                           [](const Job& a, const Job& b) { return a.id == b.id && a.params == b.params; }),
               jobs.end());

    VerificationReport report;
    report.config_fingerprint = cfg.fingerprint();
    report.tool_version = kToolVersion;
    report.cases.resize(jobs.size());

    int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    nthreads = std::max(1, std::min<int>(nthreads, static_cast<int>(jobs.size())));
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < jobs.size(); i = next++)
            report.cases[i] = evaluate_identity(jobs[i].id, jobs[i].params, cfg);
    };
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    report.summary = summarize(report.cases);
    return report;
}

}  // namespace kosh
