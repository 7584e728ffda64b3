#include "kosh/driver.hpp"

#include "kosh/epstein.hpp"
#include "kosh/kernels.hpp"
#include "kosh/koshzeta.hpp"
#include "kosh/sequence.hpp"
#include "kosh/specfun.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

namespace kosh {

using nlohmann::json;

ReportFormat parse_report_format(const std::string& name) {
    if (name == "json") return ReportFormat::json;
    if (name == "csv") return ReportFormat::csv;
    throw UsageError("--format: expected 'json' or 'csv', got '" + name + "'");
}

std::string format_real17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_real17(const std::string& text) {
    if (text == "nan") return std::nan("");
    if (text == "inf") return HUGE_VAL;
    if (text == "-inf") return -HUGE_VAL;
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid number '" + text + "'");
    }
    if (pos != text.size()) throw std::invalid_argument("invalid number '" + text + "'");
    return v;
}

// ---------------------------------------------------------------------------
// JSON.  Written by hand so that every number carries 17 significant
// digits; read back with nlohmann::json.
// ---------------------------------------------------------------------------
namespace {

std::string quoted(const std::string& s) { return json(s).dump(); }

// Finite values as JSON numbers, the rest as strings.
std::string json_number(double v) {
    if (!std::isfinite(v)) return quoted(format_real17(v));
    // "-0" would be read back as the integer 0, losing the sign bit.
    if (v == 0.0 && std::signbit(v)) return "-0.0";
    return format_real17(v);
}

double number_from_json(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return parse_real17(j.get<std::string>());
    throw std::invalid_argument("report: expected a number");
}

std::string json_complex(cplx z) {
    return "{\"re\": " + json_number(z.real()) + ", \"im\": " + json_number(z.imag()) + "}";
}

std::string params_text(const ParamMap& params) {
    std::string out;
    for (const auto& [k, v] : params) {
        if (!out.empty()) out += ';';
        out += k + "=" + v;
    }
    return out;
}

ParamMap params_from_text(const std::string& text) {
    ParamMap out;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find(';', start);
        if (end == std::string::npos) end = text.size();
        const std::string item = text.substr(start, end - start);
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("report: malformed parameter '" + item + "'");
        out[item.substr(0, eq)] = item.substr(eq + 1);
        start = end + 1;
    }
    return out;
}

void restore_case(IdentityCase& c, const std::string& status) {
    auto [st, reason] = parse_status(status);
    c.status = st;
    c.reason = reason;
    try {
        c.tolerance = case_tolerance(c.id, c.params);
    } catch (const std::exception&) {
        c.tolerance = 0.0;  // id not in this registry
    }
}

}  // namespace

std::string report_to_json(const VerificationReport& report) {
    std::ostringstream os;
    os << "{\n  \"version\": " << quoted(report.tool_version) << ",\n";
    os << "  \"config_fingerprint\": " << quoted(report.config_fingerprint) << ",\n";
    os << "  \"summary\": {\"pass\": " << report.summary.pass << ", \"fail\": " << report.summary.fail
       << ", \"skipped\": " << report.summary.skipped << ", \"worst_residual_by_id\": {";
    bool first = true;
    for (const auto& [id, w] : report.summary.worst_residual_by_id) {
        os << (first ? "" : ", ") << quoted(id) << ": " << json_number(w);
        first = false;
    }
    os << "}},\n  \"cases\": [";
    for (std::size_t i = 0; i < report.cases.size(); ++i) {
        const auto& c = report.cases[i];
        os << (i ? ",\n    " : "\n    ") << "{\"id\": " << quoted(c.id) << ", \"params\": {";
        bool f = true;
        for (const auto& [k, v] : c.params) {
            os << (f ? "" : ", ") << quoted(k) << ": " << quoted(v);
            f = false;
        }
        os << "}, \"lhs\": " << json_complex(c.lhs) << ", \"rhs\": " << json_complex(c.rhs)
           << ", \"residual\": " << json_number(c.residual) << ", \"status\": " << quoted(c.status_string()) << "}";
    }
    os << (report.cases.empty() ? "]\n}\n" : "\n  ]\n}\n");
    return os.str();
}

VerificationReport report_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("report: invalid JSON: ") + e.what());
    }
    try {
        VerificationReport r;
        r.tool_version = j.at("version").get<std::string>();
        r.config_fingerprint = j.at("config_fingerprint").get<std::string>();
        const json& s = j.at("summary");
        r.summary.pass = s.at("pass").get<int>();
        r.summary.fail = s.at("fail").get<int>();
        r.summary.skipped = s.at("skipped").get<int>();
        for (const auto& [id, w] : s.at("worst_residual_by_id").items()) r.summary.worst_residual_by_id[id] = number_from_json(w);
        for (const json& jc : j.at("cases")) {
            IdentityCase c;
            c.id = jc.at("id").get<std::string>();
            for (const auto& [k, v] : jc.at("params").items()) c.params[k] = v.get<std::string>();
            c.lhs = {number_from_json(jc.at("lhs").at("re")), number_from_json(jc.at("lhs").at("im"))};
            c.rhs = {number_from_json(jc.at("rhs").at("re")), number_from_json(jc.at("rhs").at("im"))};
            c.residual = number_from_json(jc.at("residual"));
            restore_case(c, jc.at("status").get<std::string>());
            r.cases.push_back(std::move(c));
        }
        return r;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("report: unexpected structure: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// CSV (RFC 4180 quoting).
// ---------------------------------------------------------------------------
namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string csv_complex(cplx z) {
    std::string im = format_real17(z.imag());
    if (im[0] != '-') im = "+" + im;
    return format_real17(z.real()) + im + "i";
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted_field = false, in_quotes = false, any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (in_quotes) {
            if (ch == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (ch == '"') {
                in_quotes = false;
            } else {
                field += ch;
            }
            continue;
        }
        if (ch == '"' && field.empty() && !quoted_field) {
            in_quotes = quoted_field = any = true;
        } else if (ch == ',') {
            row.push_back(field);
            field.clear();
            quoted_field = false;
            any = true;
        } else if (ch == '\n' || ch == '\r') {
            if (ch == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            if (any || !field.empty()) {
                row.push_back(field);
                rows.push_back(row);
            }
            row.clear();
            field.clear();
            quoted_field = any = false;
        } else {
            field += ch;
            any = true;
        }
    }
    if (in_quotes) throw std::invalid_argument("report: unterminated quoted CSV field");
    if (any || !field.empty()) {
        row.push_back(field);
        rows.push_back(row);
    }
    return rows;
}

const char* const kCsvHeader = "id,params,lhs,rhs,residual,status";

}  // namespace

std::string report_to_csv(const VerificationReport& report) {
    std::string out = std::string(kCsvHeader) + "\n";
    for (const auto& c : report.cases) {
        out += csv_field(c.id) + "," + csv_field(params_text(c.params)) + "," + csv_complex(c.lhs) + "," +
               csv_complex(c.rhs) + "," + format_real17(c.residual) + "," + csv_field(c.status_string()) + "\n";
    }
    return out;
}

VerificationReport report_from_csv(const std::string& text) {
    const auto rows = csv_rows(text);
    if (rows.empty()) throw std::invalid_argument("report: empty CSV");
    std::string header;
    for (std::size_t i = 0; i < rows[0].size(); ++i) header += (i ? "," : "") + rows[0][i];
    if (header != kCsvHeader) throw std::invalid_argument("report: unexpected CSV header '" + header + "'");
    VerificationReport r;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& f = rows[i];
        if (f.size() != 6) throw std::invalid_argument("report: CSV row " + std::to_string(i) + " has wrong arity");
        IdentityCase c;
        c.id = f[0];
        c.params = params_from_text(f[1]);
        c.lhs = parse_complex(f[2]);
        c.rhs = parse_complex(f[3]);
        c.residual = parse_real17(f[4]);
        restore_case(c, f[5]);
        r.cases.push_back(std::move(c));
    }
    r.summary = summarize(r.cases);
    return r;
}

void write_report(const VerificationReport& report, const std::string& path, ReportFormat format) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
    os << (format == ReportFormat::json ? report_to_json(report) : report_to_csv(report));
    os.close();
    if (!os) throw std::runtime_error("write to '" + path + "' failed");
}

VerificationReport read_report(const std::string& path, ReportFormat format) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << is.rdbuf();
    return format == ReportFormat::json ? report_from_json(ss.str()) : report_from_csv(ss.str());
}

namespace {
bool same_bits(double a, double b) {
    if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
    return std::memcmp(&a, &b, sizeof a) == 0;
}
bool same_bits(cplx a, cplx b) { return same_bits(a.real(), b.real()) && same_bits(a.imag(), b.imag()); }
}  // namespace

bool reports_equal(const VerificationReport& a, const VerificationReport& b) {
    if (a.tool_version != b.tool_version || a.config_fingerprint != b.config_fingerprint) return false;
    if (a.summary.pass != b.summary.pass || a.summary.fail != b.summary.fail ||
        a.summary.skipped != b.summary.skipped)
        return false;
    if (a.summary.worst_residual_by_id.size() != b.summary.worst_residual_by_id.size()) return false;
    for (const auto& [id, w] : a.summary.worst_residual_by_id) {
        auto it = b.summary.worst_residual_by_id.find(id);
        if (it == b.summary.worst_residual_by_id.end() || !same_bits(w, it->second)) return false;
    }
    if (a.cases.size() != b.cases.size()) return false;
    for (std::size_t i = 0; i < a.cases.size(); ++i) {
        const auto &x = a.cases[i], &y = b.cases[i];
        if (x.id != y.id || x.params != y.params || !same_bits(x.lhs, y.lhs) || !same_bits(x.rhs, y.rhs) ||
            !same_bits(x.residual, y.residual) || x.status_string() != y.status_string())
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Configuration.
// ---------------------------------------------------------------------------
namespace {
std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}
}  // namespace

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw UsageError("--config: cannot open '" + path + "'");
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("--config: line " + std::to_string(lineno) + " is not key=value");
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

bool apply_config_key(EvalConfig& cfg, const std::string& key, const std::string& value) {
    auto as_int = [&]() {
        std::size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) throw UsageError("config key " + key + ": invalid integer '" + value + "'");
        return v;
    };
    try {
        if (key == "series_N") cfg.series_N = as_int();
        else if (key == "rel_tol") cfg.quad.rel_tol = parse_real17(value);
        else if (key == "abs_tol") cfg.quad.abs_tol = parse_real17(value);
        else if (key == "max_depth") cfg.quad.max_depth = as_int();
        else if (key == "oscillatory_segments") cfg.quad.oscillatory_segments = as_int();
        else if (key == "pole_eps") cfg.pole_eps = parse_real17(value);
        else if (key == "richardson_stages") cfg.richardson_stages = as_int();
        else return false;
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError("config key " + key + ": invalid value '" + value + "'");
    }
    return true;
}

// ---------------------------------------------------------------------------
// CLI.
// ---------------------------------------------------------------------------
namespace {

struct Flags {
    std::string p, pprime, s, x, c, alpha, n, N, tol, filter, out, format = "json", id, config;
    std::vector<std::string> grid, param;
    int threads = 0;
};

ShapeParam shape_flag(const std::string& flag, const std::string& v) {
    if (v.empty()) throw UsageError(flag + " is required");
    try {
        return ShapeParam::parse(v);
    } catch (const std::exception& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

cplx complex_flag(const std::string& flag, const std::string& v) {
    if (v.empty()) throw UsageError(flag + " is required");
    try {
        return parse_complex(v);
    } catch (const std::exception& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

double real_flag(const std::string& flag, const std::string& v) {
    if (v.empty()) throw UsageError(flag + " is required");
    if (v == "pi") return kPi;
    try {
        return parse_real17(v);
    } catch (const std::exception&) {
        throw UsageError(flag + ": invalid number '" + v + "'");
    }
}

int int_flag(const std::string& flag, const std::string& v) {
    if (v.empty()) throw UsageError(flag + " is required");
    std::size_t pos = 0;
    int r = 0;
    try {
        r = std::stoi(v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != v.size() || v.empty()) throw UsageError(flag + ": invalid integer '" + v + "'");
    return r;
}

std::pair<std::string, std::string> key_value(const std::string& flag, const std::string& item) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError(flag + ": expected key=value, got '" + item + "'");
    return {item.substr(0, eq), item.substr(eq + 1)};
}

ParamGrid grid_from_flags(const std::vector<std::string>& items) {
    ParamGrid g;
    for (const auto& item : items) {
        auto [k, vals] = key_value("--grid", item);
        std::vector<std::string> list;
        std::size_t start = 0;
        while (start <= vals.size()) {
            const auto comma = vals.find(',', start);
            const std::string v = vals.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            if (v.empty()) throw UsageError("--grid: empty value in '" + item + "'");
            list.push_back(v);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        g[k] = list;
    }
    return g;
}

std::string s15(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::string c15(cplx z) {
    if (z.imag() == 0.0) return s15(z.real());
    char buf[80];
    std::snprintf(buf, sizeof buf, "%.15g%+.15gi", z.real(), z.imag());
    return buf;
}

void print_cases(const VerificationReport& r, std::ostream& out) {
    for (const auto& c : r.cases) {
        std::string ps;
        for (const auto& [k, v] : c.params) ps += (ps.empty() ? "" : " ") + k + "=" + v;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3e", c.residual);
        out << c.id << "  [" << ps << "]  residual=" << buf << "  " << c.status_string() << "\n";
        if (c.status == CaseStatus::fail && !c.reason.empty() && c.reason != "residual above tolerance")
            out << "    error: " << c.reason << "\n";
    }
    out << "pass=" << r.summary.pass << " fail=" << r.summary.fail << " skipped=" << r.summary.skipped << "\n";
}

// Re-classifies evaluated cases against a user tolerance.
void apply_tolerance(VerificationReport& r, double tol) {
    for (auto& c : r.cases) {
        if (c.status == CaseStatus::skipped) continue;
        c.tolerance = tol;
        const bool ok = std::isfinite(c.residual) && c.residual < tol;
        if (ok) {
            c.status = CaseStatus::pass;
            c.reason.clear();
        } else {
            c.status = CaseStatus::fail;
            if (c.reason.empty()) c.reason = "residual above tolerance";
        }
    }
    r.summary = summarize(r.cases);
}

int finish_report(VerificationReport& r, const Flags& f, std::ostream& out) {
    if (!f.tol.empty()) apply_tolerance(r, real_flag("--tol", f.tol));
    print_cases(r, out);
    if (!f.out.empty()) write_report(r, f.out, parse_report_format(f.format));
    return r.summary.fail > 0 ? 1 : 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Koshliakov zeta functions, kernels, Epstein analogues and identity verification", "kosh"};
    app.require_subcommand(1);
    Flags f;
    EvalConfig cfg;
    std::map<std::string, std::pair<CLI::Option*, std::string*>> flag_opts;

    app.add_option("--config", f.config, "key=value file; command-line flags take precedence");

    auto add = [&](CLI::App* sub, const std::string& name, std::string& target, const std::string& help) {
        flag_opts[sub->get_name() + "/" + name] = {sub->add_option("--" + name, target, help), &target};
    };
    auto shape_help = "shape parameter p > 0, or 'inf' / '0' for the limit shapes";

    auto* lam = app.add_subcommand("lambda", "n-th Koshliakov root lambda_n(p) and its weight");
    add(lam, "p", f.p, shape_help);
    add(lam, "n", f.n, "root index n >= 1");

    auto* zeta = app.add_subcommand("zeta", "zeta_p(s) for s != 1");
    add(zeta, "p", f.p, shape_help);
    add(zeta, "s", f.s, "complex argument, e.g. 0.5+14i");

    auto* eta = app.add_subcommand("eta", "eta_p(s) for s != 1");
    add(eta, "p", f.p, shape_help);
    add(eta, "s", f.s, "complex argument");

    auto* coeff = app.add_subcommand("coeff", "Mellin coefficient (s, 2 pi p n)_n");
    add(coeff, "p", f.p, "finite shape parameter p > 0");
    add(coeff, "s", f.s, "complex argument with Re s > 0");
    add(coeff, "n", f.n, "coefficient index n >= 1");

    auto* kern = app.add_subcommand("kernel", "kernels at x: 1/(sigma(x) e^{2 pi x} - 1), G_p(x), and K_{s,p}(x) when --s is given");
    add(kern, "p", f.p, shape_help);
    add(kern, "x", f.x, "argument x > 0");
    add(kern, "s", f.s, "order nu of K_{nu,p} (optional)");

    auto* eps = app.add_subcommand("epstein", "both Epstein analogues zeta_{p,p'}(s, c) and tilde-zeta_{p,p'}(s, c)");
    add(eps, "p", f.p, shape_help);
    add(eps, "pprime", f.pprime, shape_help);
    add(eps, "c", f.c, "form coefficient c > 0");
    add(eps, "s", f.s, "complex argument");

    auto* cons = app.add_subcommand("constants", "C_p^(1), C_p^(2), gamma_p and zeta_p'(0)");
    add(cons, "p", f.p, shape_help);

    auto* ver = app.add_subcommand("verify", "evaluate one identity case");
    ver->add_option("--id", f.id, "identity id (e.g. L11)")->required();
    const std::pair<const char*, std::string*> verify_params[] = {
        {"p", &f.p}, {"pprime", &f.pprime}, {"s", &f.s}, {"x", &f.x}, {"c", &f.c}, {"alpha", &f.alpha}, {"N", &f.N}};
    for (const auto& [pname, target] : verify_params)
        add(ver, pname, *target, std::string("identity parameter ") + pname);
    ver->add_option("--param", f.param, "other identity parameter as key=value (repeatable)");
    add(ver, "tol", f.tol, "tolerance overriding the entry default");
    add(ver, "out", f.out, "write the report to this path");
    add(ver, "format", f.format, "report format: json or csv");

    auto* suite = app.add_subcommand("suite", "run the identity suite");
    add(suite, "filter", f.filter, "id glob(s), comma separated (default: all)");
    suite->add_option("--grid", f.grid, "parameter grid override key=v1,v2,... (repeatable)");
    add(suite, "tol", f.tol, "tolerance overriding the entry defaults");
    add(suite, "out", f.out, "write the report to this path");
    add(suite, "format", f.format, "report format: json or csv");
    suite->add_option("--threads", f.threads, "worker threads (default: hardware concurrency)");

    std::vector<std::string> argv_store = {"kosh"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    CLI::App* cmd = app.get_subcommands().front();
    try {
        // Configuration file: EvalConfig keys, or defaults for this subcommand's flags.
        if (!f.config.empty()) {
            for (const auto& [k, v] : read_config_file(f.config)) {
                if (apply_config_key(cfg, k, v)) continue;
                if (k == "grid" && cmd == suite) {
                    if (suite->get_option("--grid")->count() == 0) f.grid.push_back(v);
                    continue;
                }
                auto it = flag_opts.find(cmd->get_name() + "/" + k);
                if (it == flag_opts.end()) throw UsageError("--config: unknown key '" + k + "'");
                if (it->second.first->count() == 0) *it->second.second = v;
            }
        }
        try {
            cfg.validate();
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("--config: ") + e.what());
        }
        if (!f.format.empty()) parse_report_format(f.format);

        const std::string name = cmd->get_name();
        if (name == "lambda") {
            const auto p = shape_flag("--p", f.p);
            const int n = int_flag("--n", f.n);
            if (n < 1) throw UsageError("--n: must be >= 1");
            const double l = solve_lambda(p, n);
            out << "lambda_" << n << " = " << s15(l) << "\n";
            out << "weight = " << s15(weight(p, l)) << "\n";
            return 0;
        }
        if (name == "zeta") {
            out << c15(zeta_p_em(shape_flag("--p", f.p), complex_flag("--s", f.s), cfg)) << "\n";
            return 0;
        }
        if (name == "eta") {
            out << c15(eta_p_any(shape_flag("--p", f.p), complex_flag("--s", f.s), cfg)) << "\n";
            return 0;
        }
        if (name == "coeff") {
            const auto p = shape_flag("--p", f.p);
            if (!p.is_finite()) throw UsageError("--p: the coefficients need a finite shape parameter");
            const int n = int_flag("--n", f.n);
            if (n < 1) throw UsageError("--n: must be >= 1");
            out << c15(kosh_coeff(complex_flag("--s", f.s), n, 2.0 * kPi * p.p(), cfg.quad)) << "\n";
            return 0;
        }
        if (name == "kernel") {
            const auto p = shape_flag("--p", f.p);
            const double x = real_flag("--x", f.x);
            if (!(x > 0)) throw UsageError("--x: must be positive");
            out << "kernel = " << s15(p.kernel(x)) << "\n";
            out << "G_p = " << s15(g_kernel(p, x)) << "\n";
            if (!f.s.empty()) out << "K_nu,p = " << c15(k_kernel(p, complex_flag("--s", f.s), x, cfg)) << "\n";
            return 0;
        }
        if (name == "epstein") {
            EpsteinParams prm{shape_flag("--p", f.p), shape_flag("--pprime", f.pprime), real_flag("--c", f.c)};
            if (!(prm.c > 0)) throw UsageError("--c: must be positive");
            const cplx s = complex_flag("--s", f.s);
            out << "zeta_{p,p'} = " << c15(epstein1_bessel(prm, s, cfg)) << "\n";
            out << "tilde-zeta_{p,p'} = " << c15(epstein2(prm, s, cfg, Epstein2Route::selberg_chowla)) << "\n";
            return 0;
        }
        if (name == "constants") {
            const auto k = constants(shape_flag("--p", f.p), cfg);
            out << "C1 = " << s15(k.c1) << "\nC2 = " << s15(k.c2) << "\ngamma_p = " << s15(k.gamma_p)
                << "\nzeta_p'(0) = " << s15(k.zeta_prime0) << "\n";
            return 0;
        }
        if (name == "verify") {
            ParamMap params;
            for (const auto& [k, v] : verify_params)
                if (!v->empty()) params[k] = *v;
            for (const auto& item : f.param) {
                auto [k, v] = key_value("--param", item);
                params[k] = v;
            }
            IdentityCase c;
            try {
                c = evaluate_identity(f.id, params, cfg);
            } catch (const std::invalid_argument& e) {
                throw UsageError(std::string("--id/--param: ") + e.what());
            }
            VerificationReport r;
            r.cases.push_back(c);
            r.config_fingerprint = cfg.fingerprint();
            r.tool_version = kToolVersion;
            r.summary = summarize(r.cases);
            return finish_report(r, f, out);
        }
        // suite
        ParamGrid grid = grid_from_flags(f.grid);
        VerificationReport r;
        try {
            r = run_suite(f.filter, grid, cfg, f.threads);
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("--grid: ") + e.what());
        }
        return finish_report(r, f, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int cli_main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cli_main(args, std::cout, std::cerr);
}

}  // namespace kosh
