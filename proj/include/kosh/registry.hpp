// The identity catalog: every identity of the theory as a parameterized
// two-sided evaluation, plus the generic verifier that runs them over
// parameter grids.
//
// Parameters travel as canonical strings (shape labels, %.17g reals, complex
// literals) so that a case is reproducible from its serialized form alone.
#pragma once

#include "kosh/types.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kosh {

using ParamMap = std::map<std::string, std::string>;
using ParamGrid = std::map<std::string, std::vector<std::string>>;

enum class CaseStatus { pass, fail, skipped };

// Which error source dominates an entry; selects its default tolerance.
enum class ToleranceClass { series, laurent, elementary };
double default_tolerance(ToleranceClass tc);

// How the two sides of an entry are kept independent.  Every entry declares
// one of these together with the routines used on each side; the audit in
// the test suite checks that the two routine lists are disjoint.
enum class Independence {
    distinct_modules,          // the sides are assembled in different modules
    distinct_representations,  // same module, different series/integral forms
    transformation_pair,       // one evaluator at two transformed arguments
    closed_form                // numerical side vs an elementary closed form
};
std::string to_string(Independence ind);

struct IdentityCase {
    std::string id;
    ParamMap params;
    cplx lhs{0.0, 0.0};
    cplx rhs{0.0, 0.0};
    double residual = 0.0;
    double tolerance = 0.0;
    CaseStatus status = CaseStatus::skipped;
    std::string reason;  // skip reason or failure diagnostic
    // "pass", "fail" or "skipped(<reason>)".
    std::string status_string() const;
};

// Parses the status_string() form back into (status, reason).
std::pair<CaseStatus, std::string> parse_status(const std::string& text);

struct IdentityEntry {
    std::string id;
    std::string anchor;       // what the entry states, in words
    std::string description;  // one line: lhs vs rhs
    ToleranceClass tolerance_class = ToleranceClass::series;
    Independence independence = Independence::distinct_modules;
    std::vector<std::string> lhs_routines;
    std::vector<std::string> rhs_routines;
    ParamMap defaults;        // used for parameters absent from a request
    // Default verification grid: the union of the Cartesian products of
    // each listed ParamGrid (so incompatible combinations are never formed).
    std::vector<ParamGrid> grids;
    // Returns a skip reason when the parameters fall outside the domain.
    std::function<std::optional<std::string>(const ParamMap&)> domain;
    std::function<std::pair<cplx, cplx>(const ParamMap&, const EvalConfig&)> evaluate;
    // Optional per-case tolerance override (e.g. limit-rate comparisons).
    std::function<std::optional<double>(const ParamMap&)> tolerance_override;

    std::vector<std::string> param_names() const;
};

// residual = |lhs - rhs| / (1 + |lhs| + |rhs|)
double identity_residual(cplx lhs, cplx rhs);

// All registered entries, sorted by id in natural order (E2 before E10).
const std::vector<IdentityEntry>& identity_registry();
const IdentityEntry& find_identity(const std::string& id);  // throws std::invalid_argument
bool natural_id_less(const std::string& a, const std::string& b);

// Adds an entry (e.g. an instrumented one in tests).  Throws
// std::invalid_argument on a duplicate id.  Not safe to call while a suite
// is running.
void register_identity(IdentityEntry entry);

// Tolerance that applies to a case: the class default unless the entry
// overrides it for these (canonical) parameters.
double case_tolerance(const std::string& id, const ParamMap& params);

// Evaluates one case.  Missing parameters take the entry defaults; unknown
// parameter names and unknown ids throw std::invalid_argument.  Domain
// violations are reported as skipped, never coerced.
IdentityCase evaluate_identity(const std::string& id, const ParamMap& params, const EvalConfig& cfg);

struct SuiteSummary {
    int pass = 0;
    int fail = 0;
    int skipped = 0;
    std::map<std::string, double> worst_residual_by_id;
};

struct VerificationReport {
    std::vector<IdentityCase> cases;
    std::string config_fingerprint;
    SuiteSummary summary;
    std::string tool_version;
};

inline constexpr const char* kToolVersion = "1.0.0";

// Glob match with '*' and '?' on ids; an empty pattern matches everything.
bool id_matches(const std::string& pattern, const std::string& id);

// Runs every entry whose id matches `filter` (comma-separated globs) over
// its default grid, with any key of `grid` that names one of the entry's
// parameters overriding the default values in every product.  Cases are ordered by id, then lexicographically by their
// parameter list; `threads` <= 0 selects the hardware concurrency.
VerificationReport run_suite(const std::string& filter, const ParamGrid& grid, const EvalConfig& cfg,
                             int threads = 0);

// Recomputes counts and worst residuals from the cases.
SuiteSummary summarize(const std::vector<IdentityCase>& cases);

}  // namespace kosh
