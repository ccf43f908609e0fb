#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "plateau/embedded_fixtures.hpp"
#include "plateau/report.hpp"

using namespace plateau;

namespace {

enum exit_code { ok = 0, mismatch = 1, usage = 2, hypothesis = 3 };

int exit_for(errc c) {
    switch (c) {
    case errc::invalid_argument:
    case errc::parse_error:
    case errc::zero_coefficient:
    case errc::io_error:
    case errc::overflow:
        return usage;
    default:
        return hypothesis;
    }
}

struct FunctionArgs {
    std::optional<int> p, n;
    std::string poly, table;
};

struct CommonArgs {
    std::string format = "json";
    unsigned threads = 1;
    std::optional<double> budget;
};

void add_function_flags(CLI::App* cmd, FunctionArgs& fa) {
    cmd->add_option("--p", fa.p, "odd prime");
    cmd->add_option("--n", fa.n, "number of variables");
    auto* poly = cmd->add_option("--poly", fa.poly, "polynomial, e.g. \"x1^2+x2*x3\"");
    auto* table = cmd->add_option("--table", fa.table, "function table file (first line \"p n\")");
    poly->excludes(table);
}

void add_common_flags(CLI::App* cmd, CommonArgs& ca) {
    cmd->add_option("--format", ca.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--threads", ca.threads, "worker threads, 0 = hardware concurrency");
    cmd->add_option("--budget", ca.budget, "operation budget for enumeration");
}

double resolve_budget(const CommonArgs& ca) {
    if (ca.budget) return *ca.budget;
    if (const char* env = std::getenv("PLATEAU_BUDGET")) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(env, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || env[used] != '\0' || v <= 0) fail(errc::invalid_argument, std::string("PLATEAU_BUDGET is not a positive number: ") + env);
        return v;
    }
    return default_budget;
}

std::pair<FunctionTable, json> load_function(const FunctionArgs& fa) {
    if (!fa.table.empty()) {
        FunctionTable f = load_table_file(fa.table);
        require(!fa.p || *fa.p == f.p, errc::invalid_argument, "--p disagrees with the table header");
        require(!fa.n || *fa.n == f.n, errc::invalid_argument, "--n disagrees with the table header");
        return {f, {{"p", f.p}, {"n", f.n}, {"table", fa.table}}};
    }
    require(!fa.poly.empty(), errc::invalid_argument, "one of --poly or --table is required");
    require(fa.p && fa.n, errc::invalid_argument, "--poly needs --p and --n");
    const PolyExpr e = parse_poly(fa.poly, *fa.p, *fa.n);
    return {eval_to_table(e), {{"p", *fa.p}, {"n", *fa.n}, {"poly", fa.poly}}};
}

void flatten(const json& j, const std::string& prefix, std::ostream& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
    }
}

void emit(const json& j, const std::string& format) {
    if (format == "text")
        flatten(j, "", std::cout);
    else
        std::cout << j.dump(2) << '\n';
}

int run_verify(const std::string& fixtures_path, const std::string& only, const CommonArgs& ca) {
    json fx;
    if (fixtures_path.empty()) {
        fx = json::parse(embedded_reference_examples);
    } else {
        std::ifstream in(fixtures_path);
        if (!in) fail(errc::io_error, "cannot open fixture file " + fixtures_path);
        try {
            fx = json::parse(in);
        } catch (const json::exception& e) {
            fail(errc::io_error, std::string("fixture file is not valid JSON: ") + e.what());
        }
    }
    const EnumOptions opt{ca.threads, resolve_budget(ca)};
    json results = json::array();
    int passed = 0, total = 0;
    for (const json& ex : fx.at("examples")) {
        if (!only.empty() && ex.at("id") != only) continue;
        ++total;
        ExampleResult r;
        try {
            r = verify_example(ex, opt);
        } catch (const error& e) {
            r.id = ex.at("id");
            r.checks.push_back({"pipeline", false, std::string(errc_name(e.code())) + ": " + e.what()});
        }
        passed += r.passed();
        if (ca.format == "text") {
            std::cout << (r.passed() ? "PASS " : "FAIL ") << r.id;
            for (const auto& c : r.checks)
                if (!c.ok) std::cout << "  [" << c.name << ": " << c.detail << "]";
            for (const auto& e : r.errata) std::cout << "  (erratum: " << e << ")";
            std::cout << '\n';
        }
        results.push_back(example_json(r));
    }
    if (!only.empty() && total == 0) fail(errc::invalid_argument, "no example with id " + only);
    if (ca.format == "text")
        std::cout << passed << "/" << total << " PASS\n";
    else
        std::cout << json{{"schema", 1}, {"examples", results}, {"passed", passed}, {"total", total}}.dump(2) << '\n';
    return passed == total ? ok : mismatch;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Plateaued-function codes: spectra, weight distributions, predictions and secret sharing"};
    app.require_subcommand(1);

    FunctionArgs fa;
    CommonArgs ca;
    std::string construction = "first-gen";
    bool punctured = false, with_sss = false, list_sets = false;
    int trials = 100;
    std::string fixtures, only;

    auto* analyze_cmd = app.add_subcommand("analyze", "full pipeline report for one function and construction");
    add_function_flags(analyze_cmd, fa);
    add_common_flags(analyze_cmd, ca);
    analyze_cmd->add_option("--construction", construction, "first-gen, defset-zero, defset-sq or defset-nsq")
        ->check(CLI::IsMember({"first-gen", "defset-zero", "defset-sq", "defset-nsq"}));
    analyze_cmd->add_flag("--punctured", punctured, "keep one coordinate per scaling orbit");
    analyze_cmd->add_flag("--sss", with_sss, "include secret-sharing statistics");

    auto* verify_cmd = app.add_subcommand("verify-examples", "run the built-in reference example suite");
    add_common_flags(verify_cmd, ca);
    verify_cmd->add_option("--fixtures", fixtures, "alternative fixture file");
    verify_cmd->add_option("--only", only, "run a single example id");

    auto* sss_cmd = app.add_subcommand("sss", "access structure of the Massey scheme on a constructed code");
    add_function_flags(sss_cmd, fa);
    add_common_flags(sss_cmd, ca);
    sss_cmd->add_option("--construction", construction)->check(CLI::IsMember({"first-gen", "defset-zero", "defset-sq", "defset-nsq"}));
    sss_cmd->add_flag("--punctured", punctured);
    sss_cmd->add_flag("--list", list_sets, "list every minimal access set");
    sss_cmd->add_option("--trials", trials, "deal/recover round trips")->check(CLI::NonNegativeNumber);

    auto* spectrum_cmd = app.add_subcommand("spectrum", "exact Walsh spectrum as value-count vectors");
    add_function_flags(spectrum_cmd, fa);
    add_common_flags(spectrum_cmd, ca);

    auto* classify_cmd = app.add_subcommand("classify", "plateau profile: s, signs, regularity, dual");
    add_function_flags(classify_cmd, fa);
    add_common_flags(classify_cmd, ca);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : usage;
    }

    try {
        if (*verify_cmd) return run_verify(fixtures, only, ca);

        const auto [f, echo] = load_function(fa);
        if (*analyze_cmd) {
            AnalysisOptions opt{parse_code_kind(construction), punctured, ca.threads, resolve_budget(ca), with_sss, false, 100};
            const AnalysisResult r = analyze(f, echo, opt);
            emit(r.report, ca.format);
            if (r.prediction_status == "mismatch" || !r.report["code"].value("fast_path_agrees", true)) return mismatch;
            if (r.prediction_status != "match") return hypothesis;
            return ok;
        }
        if (*sss_cmd) {
            const double budget = resolve_budget(ca);
            const CodeSpec spec = build_code(f, parse_code_kind(construction), punctured);
            const WeightDistribution wd = weight_distribution_exhaustive(spec, f, {ca.threads, budget});
            const SchemeCtx ctx = make_scheme(spec, f);
            const SssSummary s = run_sss(ctx, dual_distance(pless_dual_low_weights(wd, f.p)).value_or(5), trials, budget);
            json j = sss_json(s, ctx, list_sets);
            j["schema"] = 1;
            j["function"] = echo;
            j["code"] = {{"construction", construction}, {"punctured", punctured}, {"params", {wd.length, wd.dimension, wd.min_weight().value_or(0)}}};
            emit(j, ca.format);
            return s.recovered == s.trials ? ok : mismatch;
        }
        if (*spectrum_cmd) {
            const WalshSpectrum w = walsh_counts_fast(f, ca.threads);
            json rows = json::array();
            for (i64 a = 0; a < w.points(); ++a)
                rows.push_back({{"alpha", decode_point(f.p, f.n, a)}, {"counts", std::vector<i64>(w.row(a), w.row(a) + f.p)}, {"value", w.value(a).coeffs()}});
            emit({{"schema", 1}, {"function", echo}, {"parseval", parseval_holds(w)}, {"rows", rows}}, ca.format);
            return ok;
        }
        if (*classify_cmd) {
            const FunctionAnalysis a = analyze_function(f, ca.threads);
            emit({{"schema", 1}, {"function", echo}, {"profile", profile_json(a)}}, ca.format);
            return ok;
        }
    } catch (const error& e) {
        std::cerr << "error[" << errc_name(e.code()) << "]: " << e.what() << '\n';
        if (ca.format == "json") std::cout << json{{"schema", 1}, {"error", {{"code", errc_name(e.code())}, {"message", e.what()}}}}.dump(2) << '\n';
        return exit_for(e.code());
    }
    return usage;
}
