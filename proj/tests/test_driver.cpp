#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kosh/driver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <sys/wait.h>

using namespace kosh;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "kosh_driver_test";
    fs::create_directories(dir);
    return dir / name;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(KOSH_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

int run_in_process(const std::vector<std::string>& args, std::string* out_text = nullptr,
                   std::string* err_text = nullptr) {
    std::ostringstream out, err;
    const int code = cli_main(args, out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

VerificationReport sample_report() {
    VerificationReport r;
    r.tool_version = kToolVersion;
    r.config_fingerprint = EvalConfig{}.fingerprint();
    IdentityCase a;
    a.id = "W8";
    a.params = {{"p", "1"}, {"x", "0.5"}};
    a.lhs = {0.1 + 0.2, -1.0 / 3.0};
    a.rhs = {0.30000000000000004, 1e-300};
    a.residual = identity_residual(a.lhs, a.rhs);
    a.tolerance = 1e-7;
    a.status = CaseStatus::pass;
    IdentityCase b;
    b.id = "L2";
    b.params = {{"s", "-2"}, {"note", "a,b \"quoted\""}};
    b.status = CaseStatus::skipped;
    b.reason = "gamma pole, at s = -2";
    IdentityCase c;
    c.id = "E9";
    c.params = {{"c", "1"}};
    c.lhs = {std::numeric_limits<double>::quiet_NaN(), -0.0};
    c.rhs = {-0.0, 0.0};
    c.residual = std::numeric_limits<double>::infinity();
    c.status = CaseStatus::fail;
    c.reason = "no sign change";
    r.cases = {a, b, c};
    r.summary = summarize(r.cases);
    return r;
}

}  // namespace

TEST_CASE("real formatting round-trips") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-308, 6.02214076e23, 0.0})
        CHECK(parse_real17(format_real17(v)) == v);
    CHECK(format_real17(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(std::isnan(parse_real17("nan")));
    CHECK(parse_real17("-inf") == -std::numeric_limits<double>::infinity());
}

TEST_CASE("JSON reports") {
    VerificationReport empty;
    empty.summary = summarize(empty.cases);
    const auto text = report_to_json(empty);
    CHECK(text.find("\"cases\": []") != std::string::npos);
    CHECK(reports_equal(report_from_json(text), empty));

    const auto r = sample_report();
    const auto back = report_from_json(report_to_json(r));
    CHECK(reports_equal(back, r));
    CHECK(back.summary.pass == 1);
    CHECK(back.summary.fail == 1);
    CHECK(back.summary.skipped == 1);
    CHECK_THROWS(report_from_json("{not json"));
}

TEST_CASE("CSV reports") {
    const auto r = sample_report();
    const auto text = report_to_csv(r);
    int lines = 0;
    for (char ch : text) lines += (ch == '\n');
    CHECK(lines == static_cast<int>(r.cases.size()) + 1);
    CHECK(text.rfind("id,params,lhs,rhs,residual,status\n", 0) == 0);
    auto back = report_from_csv(text);
    CHECK(back.cases.size() == r.cases.size());
    back.tool_version = r.tool_version;
    back.config_fingerprint = r.config_fingerprint;
    CHECK(reports_equal(back, r));
}

TEST_CASE("report files") {
    const auto r = sample_report();
    for (auto fmt : {ReportFormat::json, ReportFormat::csv}) {
        const auto path = scratch(fmt == ReportFormat::json ? "r.json" : "r.csv").string();
        write_report(r, path, fmt);
        auto back = read_report(path, fmt);
        back.tool_version = r.tool_version;
        back.config_fingerprint = r.config_fingerprint;
        CHECK(reports_equal(back, r));
    }
    CHECK_THROWS_AS(read_report(scratch("missing.json").string(), ReportFormat::json), std::runtime_error);
    CHECK_THROWS_AS(write_report(r, "/nonexistent-dir/x.json", ReportFormat::json), std::runtime_error);
    CHECK(parse_report_format("csv") == ReportFormat::csv);
    CHECK_THROWS_AS(parse_report_format("xml"), UsageError);
}

TEST_CASE("suite report round-trips bit-exactly") {
    const auto r = run_suite("W8,C*", {}, EvalConfig{});
    REQUIRE(!r.cases.empty());
    CHECK(reports_equal(report_from_json(report_to_json(r)), r));
    const auto csv = report_to_csv(r);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(r.cases.size()) + 1);
}

TEST_CASE("config files") {
    const auto path = scratch("kosh.cfg");
    {
        std::ofstream f(path);
        f << "# comment\nseries_N = 96\nrel_tol=1e-12\n\n";
    }
    const auto kv = read_config_file(path.string());
    REQUIRE(kv.size() == 2);
    EvalConfig cfg;
    for (const auto& [k, v] : kv) CHECK(apply_config_key(cfg, k, v));
    CHECK(cfg.series_N == 96);
    CHECK(cfg.quad.rel_tol == 1e-12);
    CHECK(!apply_config_key(cfg, "nonsense", "1"));
}

TEST_CASE("command line in process") {
    std::string out, err;
    CHECK(run_in_process({"lambda", "--p", "1", "--n", "5"}, &out) == 0);
    CHECK(out.find("lambda_5 = 4.5685917") != std::string::npos);
    CHECK(run_in_process({"verify", "--id", "L11"}, &out) == 0);
    CHECK(out.find("L11") != std::string::npos);
    CHECK(run_in_process({"verify", "--id", "L11", "--tol", "1e-30"}) == 1);
    CHECK(run_in_process({"lambda", "--p", "abc", "--n", "5"}, nullptr, &err) == 2);
    CHECK(err.find("--p") != std::string::npos);
    CHECK(run_in_process({"verify", "--id", "NOPE"}) == 2);
    CHECK(run_in_process({"zeta", "--p", "1", "--s", "1"}) == 1);
    CHECK(run_in_process({"constants", "--p", "inf"}, &out) == 0);
    CHECK(out.find("C1 = 0.5772156649015") != std::string::npos);

    const auto path = scratch("suite.csv").string();
    CHECK(run_in_process({"suite", "--filter", "W8", "--grid", "p=0.5,1,2", "--grid", "x=0.5,1,2", "--out", path,
                          "--format", "csv"}) == 0);
    const auto r = read_report(path, ReportFormat::csv);
    CHECK(r.cases.size() == 9);
    CHECK(r.summary.pass == 9);
}

TEST_CASE("a deliberately broken identity makes the CLI exit with 1") {
    IdentityEntry e;
    e.id = "BROKEN1";
    e.anchor = "instrumented failure";
    e.description = "1 vs 2";
    e.lhs_routines = {"one"};
    e.rhs_routines = {"two"};
    e.grids = {{}};
    e.domain = [](const ParamMap&) { return std::optional<std::string>(); };
    e.evaluate = [](const ParamMap&, const EvalConfig&) { return std::make_pair(cplx(1.0), cplx(2.0)); };
    register_identity(e);
    CHECK(run_in_process({"verify", "--id", "BROKEN1"}) == 1);
    CHECK(run_in_process({"suite", "--filter", "BROKEN1"}) == 1);
    CHECK(run_in_process({"suite", "--filter", "L11"}) == 0);
}

TEST_CASE("end to end through the executable") {
    CHECK(run_cli("verify --id L11") == 0);
    CHECK(run_cli("verify --id L11 --tol 1e-30") == 1);
    CHECK(run_cli("verify --id L11 --no-such-flag") == 2);
    CHECK(run_cli("lambda --p 1") == 2);
    const auto path = scratch("w.json").string();
    CHECK(run_cli("suite --filter W8 --out " + path) == 0);
    const auto r = read_report(path, ReportFormat::json);
    CHECK(r.summary.fail == 0);
    CHECK(r.tool_version == kToolVersion);
    CHECK(reports_equal(report_from_json(report_to_json(r)), r));
}
