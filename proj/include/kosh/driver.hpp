// Command-line front end and report serialization.
//
// Reports are written as JSON
//   {version, config_fingerprint, summary, cases: [{id, params, lhs: {re, im},
//    rhs: {re, im}, residual, status}]}
// or as CSV with the case columns in the same order (complex values as
// "re+imi").  Every floating-point number is printed with 17 significant
// digits, so reading a report back reproduces it exactly.
#pragma once

#include "kosh/registry.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace kosh {

enum class ReportFormat { json, csv };

ReportFormat parse_report_format(const std::string& name);  // "json" | "csv"

// Command-line usage problem; the message names the offending flag.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// %.17g, with "inf", "-inf" and "nan" for non-finite values.
std::string format_real17(double v);
double parse_real17(const std::string& text);

std::string report_to_json(const VerificationReport& report);
VerificationReport report_from_json(const std::string& text);

std::string report_to_csv(const VerificationReport& report);
// CSV carries only the cases: the summary is recomputed and the version and
// fingerprint are left empty.
VerificationReport report_from_csv(const std::string& text);

// Throws std::runtime_error on I/O failure.
void write_report(const VerificationReport& report, const std::string& path, ReportFormat format);
VerificationReport read_report(const std::string& path, ReportFormat format);

// Field-by-field equality of the serialized content (floating-point values
// compared bitwise).
bool reports_equal(const VerificationReport& a, const VerificationReport& b);

// Reads "key=value" lines ('#' starts a comment) into cfg-style pairs.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

// Applies EvalConfig keys (series_N, rel_tol, abs_tol, max_depth,
// oscillatory_segments, pole_eps, richardson_stages); returns false for an
// unknown key.
bool apply_config_key(EvalConfig& cfg, const std::string& key, const std::string& value);

// Runs the CLI.  Exit status: 0 when everything succeeded and no case
// failed, 1 when a case failed or a computation raised an error, 2 on a
// usage error.  Output goes to `out`, diagnostics to `err`.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_main(int argc, char** argv);

}  // namespace kosh
