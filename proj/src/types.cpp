#include "kosh/types.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace kosh {

ShapeParam ShapeParam::finite(double p) {
    if (!(p > 0.0) || !std::isfinite(p))
        throw std::invalid_argument("ShapeParam::finite requires 0 < p < inf");
    return ShapeParam(Kind::finite, p);
}

ShapeParam ShapeParam::from_double(double v) {
    if (std::isinf(v) && v > 0) return infinity();
    if (v == 0.0) return zero();
    return finite(v);
}

ShapeParam ShapeParam::parse(const std::string& token) {
    if (token == "inf" || token == "infinity" || token == "Inf" || token == "oo")
        return infinity();
    if (token == "zero") return zero();
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(token, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid shape parameter '" + token + "'");
    }
    if (pos != token.size())
        throw std::invalid_argument("invalid shape parameter '" + token + "'");
    if (v < 0.0) throw std::invalid_argument("shape parameter must be nonnegative");
    return from_double(v);
}

double ShapeParam::p() const {
    if (kind_ != Kind::finite) throw DomainError("p() requested for a limit shape");
    return p_;
}

double ShapeParam::as_double() const {
    switch (kind_) {
    case Kind::finite: return p_;
    case Kind::zero_limit: return 0.0;
    case Kind::infinity_limit: return std::numeric_limits<double>::infinity();
    }
    return 0.0;
}

double ShapeParam::ifac() const {
    switch (kind_) {
    case Kind::finite: return 1.0 / (1.0 + 1.0 / (kPi * p_));
    case Kind::zero_limit: return 0.0;
    case Kind::infinity_limit: return 1.0;
    }
    return 0.0;
}

double ShapeParam::sigma(double t) const {
    switch (kind_) {
    case Kind::finite:
        if (t == p_) throw PoleError("sigma(t) has a pole at t = p");
        return (p_ + t) / (p_ - t);
    case Kind::zero_limit: return -1.0;
    case Kind::infinity_limit: return 1.0;
    }
    return 0.0;
}

cplx ShapeParam::sigma(cplx t) const {
    switch (kind_) {
    case Kind::finite:
        if (t == cplx(p_, 0.0)) throw PoleError("sigma(t) has a pole at t = p");
        return (p_ + t) / (p_ - t);
    case Kind::zero_limit: return -1.0;
    case Kind::infinity_limit: return 1.0;
    }
    return 0.0;
}

double ShapeParam::kernel(double z) const {
    const double a = 2.0 * kPi * z;
    switch (kind_) {
    case Kind::infinity_limit: return 1.0 / std::expm1(a);
    case Kind::zero_limit:
        if (a > 0) { const double e = std::exp(-a); return -e / (1.0 + e); }
        return -1.0 / (std::exp(a) + 1.0);
    case Kind::finite: {
        if (a > 0) {
            // (p + z) - (p - z) e^{-a}, written to avoid cancellation as z -> 0.
            const double e = std::exp(-a);
            return (p_ - z) * e / (-p_ * std::expm1(-a) + z * (1.0 + e));
        }
        return (p_ - z) / ((p_ + z) * std::exp(a) - (p_ - z));
    }
    }
    return 0.0;
}

cplx ShapeParam::kernel(cplx z) const {
    const cplx a = 2.0 * kPi * z;
    switch (kind_) {
    case Kind::infinity_limit:
        if (a.real() > 0) { const cplx e = std::exp(-a); return e / (1.0 - e); }
        return 1.0 / (std::exp(a) - 1.0);
    case Kind::zero_limit:
        if (a.real() > 0) { const cplx e = std::exp(-a); return -e / (1.0 + e); }
        return -1.0 / (std::exp(a) + 1.0);
    case Kind::finite: {
        if (a.real() > 0) {
            const cplx e = std::exp(-a);
            return (p_ - z) * e / (-p_ * (e - 1.0) + z * (1.0 + e));
        }
        return (p_ - z) / ((p_ + z) * std::exp(a) - (p_ - z));
    }
    }
    return 0.0;
}

std::string ShapeParam::label() const {
    switch (kind_) {
    case Kind::finite: {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", p_);
        return buf;
    }
    case Kind::zero_limit: return "0";
    case Kind::infinity_limit: return "inf";
    }
    return "?";
}

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0 && rel_tol < 1)) throw std::invalid_argument("quad.rel_tol must lie in (0,1)");
    if (!(abs_tol > 0 && abs_tol < 1)) throw std::invalid_argument("quad.abs_tol must lie in (0,1)");
    if (max_depth < 1) throw std::invalid_argument("quad.max_depth must be >= 1");
    if (oscillatory_segments < 1) throw std::invalid_argument("quad.oscillatory_segments must be >= 1");
}

void EvalConfig::validate() const {
    quad.validate();
    if (series_N < 16) throw std::invalid_argument("series_N must be >= 16");
    if (!(pole_eps > 1e-6 && pole_eps < 1e-2))
        throw std::invalid_argument("pole_eps must lie in (1e-6, 1e-2)");
    if (richardson_stages < 0 || richardson_stages > 4)
        throw std::invalid_argument("richardson_stages must lie in [0, 4]");
}

std::string EvalConfig::canonical() const {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "series_N=%d;rel_tol=%.17g;abs_tol=%.17g;max_depth=%d;osc=%d;pole_eps=%.17g;rich=%d",
                  series_N, quad.rel_tol, quad.abs_tol, quad.max_depth, quad.oscillatory_segments,
                  pole_eps, richardson_stages);
    return buf;
}

std::string EvalConfig::fingerprint() const {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : canonical()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

cplx parse_complex(const std::string& raw) {
    std::string t;
    for (char c : raw)
        if (c != ' ') t.push_back(c);
    if (t.empty()) throw std::invalid_argument("empty complex literal");
    auto fail = [&]() { return std::invalid_argument("invalid complex literal '" + raw + "'"); };
    auto num = [&](const std::string& s, bool imag_unit) -> double {
        if (imag_unit && (s.empty() || s == "+")) return 1.0;
        if (imag_unit && s == "-") return -1.0;
        if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
        std::size_t pos = 0;
        double v = 0;
        try { v = std::stod(s, &pos); } catch (const std::exception&) { throw fail(); }
        if (pos != s.size()) throw fail();
        return v;
    };
    if (t.back() != 'i' || t == "inf" || t == "+inf") return {num(t, false), 0.0};
    const std::string body = t.substr(0, t.size() - 1);
    // Locate the sign that separates real and imaginary parts (skip exponent signs).
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) return {0.0, num(body, true)};
    return {num(body.substr(0, split), false), num(body.substr(split), true)};
}

std::string format_complex(cplx z, int digits) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.*g%+.*gi", digits, z.real(), digits, z.imag());
    return buf;
}

}  // namespace kosh
