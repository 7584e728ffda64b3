// Shared value types for the Koshliakov zeta library.
//
// Everything numerical in the library is expressed through a handful of
// small aggregates: the shape parameter p (finite or one of the two limit
// shapes), the quadrature/series configuration, and the value-with-tail
// bundle returned by series evaluators.
#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace kosh {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kLn2 = 0.69314718055994530941723212145817657;
inline constexpr double kLn2Pi = 1.83787706640934548356065947281123527;

// ---------------------------------------------------------------------------
// Error hierarchy.  Domain violations and numerical pathologies are kept
// apart so callers (notably the identity verifier) can report the former as
// "skipped" and the latter as genuine failures.
// ---------------------------------------------------------------------------
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Shape parameter p of the transcendental equation tan(pi y) = -y/p.
// The two limit shapes replace the root sequence by n and n - 1/2.
// ---------------------------------------------------------------------------
class ShapeParam {
public:
    enum class Kind { finite, zero_limit, infinity_limit };

    static ShapeParam finite(double p);
    static ShapeParam zero() { return ShapeParam(Kind::zero_limit, 0.0); }
    static ShapeParam infinity() { return ShapeParam(Kind::infinity_limit, 0.0); }
    // Accepts "inf"/"infinity", "0"/"zero", or a positive decimal number.
    static ShapeParam parse(const std::string& token);
    // Maps +inf -> infinity-limit, 0 -> zero-limit, positive -> finite.
    static ShapeParam from_double(double v);

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::finite; }
    bool is_zero() const { return kind_ == Kind::zero_limit; }
    bool is_infinity() const { return kind_ == Kind::infinity_limit; }
    double p() const;          // throws for limit shapes
    double as_double() const;  // 0 and +inf for the limit shapes

    // 1/(1 + 1/(pi p)); equals 1 for p = inf and 0 for p = 0.
    double ifac() const;
    // sigma(t) = (p + t)/(p - t) for real t; throws PoleError at t = p.
    double sigma(double t) const;
    cplx sigma(cplx t) const;
    // 1/(sigma(z) e^{2 pi z} - 1), written without the removable pole at z = p.
    double kernel(double z) const;
    cplx kernel(cplx z) const;

    std::string label() const;

    friend bool operator==(const ShapeParam& a, const ShapeParam& b) {
        return a.kind_ == b.kind_ && a.p_ == b.p_;
    }
    friend bool operator<(const ShapeParam& a, const ShapeParam& b) {
        return a.as_double() < b.as_double();
    }

private:
    ShapeParam(Kind k, double p) : kind_(k), p_(p) {}
    Kind kind_;
    double p_;
};

// ---------------------------------------------------------------------------
// Numerical configuration.
// ---------------------------------------------------------------------------
struct QuadratureSpec {
    double rel_tol = 1e-13;
    double abs_tol = 1e-16;
    int max_depth = 15;
    int oscillatory_segments = 2048;

    void validate() const;
};

struct EvalConfig {
    int series_N = 64;        // direct-summation length for weighted series
    QuadratureSpec quad;
    double pole_eps = 1e-3;   // offset used by near-pole extraction
    int richardson_stages = 1;

    void validate() const;
    // Stable textual digest (FNV-1a over the canonical field dump).
    std::string fingerprint() const;
    std::string canonical() const;
};

struct SeriesValue {
    cplx value{0.0, 0.0};
    double tail_bound = 0.0;
    int terms_used = 0;
    bool converged = false;
};

// Parses "a", "a+bi", "a-bi", "bi", "i", "-i" and friends.
cplx parse_complex(const std::string& text);
std::string format_complex(cplx z, int digits = 17);

}  // namespace kosh
