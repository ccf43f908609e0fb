#pragma once

#include <cctype>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "plateau/codes.hpp"
#include "plateau/funcspace.hpp"
#include "plateau/sss.hpp"
#include "plateau/theory.hpp"
#include "plateau/walsh.hpp"

namespace plateau {

using json = nlohmann::json;

inline json to_json(const WeightDistribution& wd) {
    json w = json::array();
    for (const auto& [weight, count] : wd.counts) w.push_back({weight, count});
    return {{"length", wd.length}, {"dimension", wd.dimension}, {"weights", w}};
}

inline WeightDistribution weight_distribution_from_json(const json& j) {
    WeightDistribution wd{j.at("length").get<i64>(), j.at("dimension").get<int>(), {}};
    for (const auto& e : j.at("weights")) wd.counts[e.at(0).get<i64>()] += e.at(1).get<i64>();
    return wd;
}

// "1+30z^144+72z^153": constant term is A_0, a bare "z" means weight 1.
inline std::map<i64, i64> parse_enumerator(const std::string& text) {
    std::map<i64, i64> out;
    std::size_t i = 0;
    auto number = [&](i64& v) {
        const std::size_t start = i;
        v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) v = v * 10 + (text[i++] - '0');
        return i > start;
    };
    while (i < text.size()) {
        i64 coeff = 1, weight = 0;
        const bool has_coeff = number(coeff);
        if (i < text.size() && text[i] == 'z') {
            ++i;
            weight = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                if (!number(weight)) throw parse_error(i, "expected exponent");
            }
        } else if (!has_coeff) {
            throw parse_error(i, "expected a term");
        }
        out[weight] += coeff;
        if (i < text.size()) {
            if (text[i] != '+') throw parse_error(i, "expected '+'");
            ++i;
        }
    }
    return out;
}

struct AnalysisOptions {
    CodeKind construction = CodeKind::first_gen;
    bool punctured = false;
    unsigned threads = 1;
    double budget = default_budget;
    bool with_sss = false;
    bool list_sets = false;
    int sss_trials = 100;
};

// Everything the pipeline learns about one function.
struct FunctionAnalysis {
    FunctionTable f;
    WalshSpectrum spectrum;
    PlateauProfile profile;
    std::optional<std::string> dual_failure;
};

inline FunctionAnalysis analyze_function(const FunctionTable& f, unsigned threads) {
    FunctionAnalysis a{f, walsh_counts_fast(f, threads), {}, std::nullopt};
    a.profile = classify_plateaued(a.spectrum);
    try {
        a.profile = dual_spectrum_and_bent_check(f, a.profile, threads);
    } catch (const error& e) {
        if (e.code() != errc::dual_not_bent_relative) throw;
        a.dual_failure = e.what();
    }
    if (const auto t = nwrf_exponent(f)) {
        a.profile.nwrf_t = t->t;
        a.profile.dual_h = t->h;
    }
    return a;
}

inline std::string sign_label(std::optional<int> s) {
    if (!s) return "none";
    return *s > 0 ? "+" : "-";
}

inline json profile_json(const FunctionAnalysis& a) {
    const PlateauProfile& pr = a.profile;
    json j{{"s", pr.s},
           {"support_size", static_cast<i64>(pr.supp.size())},
           {"regularity", to_string(pr.regularity)},
           {"k", pr.k},
           {"type", to_string(pr.type_of_f)},
           {"zero_side_f", sign_label(pr.eps0)},
           {"nwrf", pr.nwrf_t.has_value()},
           {"nwrf_t", pr.nwrf_t ? json(*pr.nwrf_t) : json(nullptr)},
           {"dual_h", pr.dual_h ? json(*pr.dual_h) : json(nullptr)},
           {"dual_bent_relative", pr.dual.has_value()},
           {"degenerate_n1", pr.n == 1}};
    if (pr.dual) {
        j["zero_side_fstar"] = sign_label(pr.dual->sign_star[0]);
        j["type_fstar"] = to_string(pr.dual->type_of_fstar);
        j["involution_holds"] = pr.dual->involution_ok;
    } else {
        j["zero_side_fstar"] = "none";
        j["dual_failure"] = a.dual_failure.value_or("");
    }
    if (const auto w = regularity_of(pr).witness) j["witness"] = {w->first, w->second};
    return j;
}

struct PredictionOutcome {
    std::string status;  // match, mismatch, hypothesis-violation
    std::string reason;
    std::optional<WeightDistribution> predicted;
    VerifyReport report;
};

inline PredictionOutcome predict_for(const FunctionAnalysis& a, CodeKind kind, bool punctured, const WeightDistribution& actual) {
    PredictionOutcome out;
    const PlateauProfile& pr = a.profile;
    try {
        require(pr.eps0.has_value(), errc::hypothesis_violation, "f is balanced, so 0 has no side in B+(f) / B-(f)");
        require(pr.dual.has_value(), errc::hypothesis_violation, "the dual is not bent relative to the support");
        require(a.f[0] == 0, errc::hypothesis_violation, "f(0) must be 0");
        if (kind != CodeKind::first_gen) require(pr.nwrf_t.has_value(), errc::hypothesis_violation, "f is not homogeneous of an admissible even degree");
        const PredictionInput in{pr.p, pr.n, pr.s, pr.k, *pr.eps0, pr.dual->sign_star[0], kind, punctured};
        out.predicted = predict_weights(in);
        out.report = verify_prediction(actual, *out.predicted);
        out.status = out.report.match ? "match" : "mismatch";
    } catch (const error& e) {
        if (e.code() != errc::hypothesis_violation && e.code() != errc::divisibility_violation) throw;
        out.status = std::string(errc_name(e.code()));
        out.reason = e.what();
    }
    return out;
}

inline json prediction_json(const PredictionOutcome& o) {
    json j{{"status", o.status}};
    if (!o.reason.empty()) j["reason"] = o.reason;
    if (o.predicted) j["predicted"] = to_json(*o.predicted);
    if (o.status == "mismatch") {
        json d = json::array();
        for (const auto& x : o.report.deltas) d.push_back({{"weight", x.weight}, {"actual", x.actual}, {"predicted", x.predicted}});
        j["deltas"] = d;
        j["length_ok"] = o.report.length_ok;
        j["dimension_ok"] = o.report.dimension_ok;
    }
    return j;
}

inline std::optional<int> dual_distance(const DualLowWeights& d) {
    if (d.label.size() == 1 && std::isdigit(static_cast<unsigned char>(d.label[0]))) return d.label[0] - '0';
    return std::nullopt;
}

inline json code_json(const CodeSpec& spec, const WeightDistribution& wd, int p) {
    const i64 dmin = wd.min_weight().value_or(0);
    json j{{"construction", to_string(spec.kind)},
           {"punctured", spec.provenance.punctured},
           {"params", {wd.length, wd.dimension, dmin}},
           {"enumerator", enumerator_string(wd)},
           {"distribution", to_json(wd)}};
    const DualLowWeights dual = pless_dual_low_weights(wd, p);
    json dj{{"a1", dual.a[0]}, {"a2", dual.a[1]}, {"a3", dual.a[2]}, {"a4", dual.a[3]}, {"d_label", dual.label}};
    const auto dd = dual_distance(dual);
    dj["params"] = {wd.length, dual.dual_dimension, dd ? json(*dd) : json(dual.label)};
    if (dd) {
        const BoundReport b = bound_checks(wd.length, dual.dual_dimension, *dd, p);
        dj["bounds"] = {{"singleton_defect", b.singleton_defect}, {"mds", b.mds}, {"amds", b.amds}, {"sphere_packing", b.sphere_packing_ok}};
    }
    j["dual"] = dj;
    const MinimalityVerdict mv = minimality_check(wd, p);
    j["minimality"] = {{"sufficient_condition_holds", mv.minimal}, {"wmin", mv.wmin}, {"wmax", mv.wmax}};
    const BoundReport b = bound_checks(wd.length, wd.dimension, dmin, p);
    j["bounds"] = {{"singleton_defect", b.singleton_defect}, {"mds", b.mds}, {"amds", b.amds}, {"sphere_packing", b.sphere_packing_ok}};
    return j;
}

struct SssSummary {
    AccessStructure access;
    CoverageReport coverage;
    int trials = 0;
    int recovered = 0;
};

// Deal/recover round trips on random access sets: a random minimal set plus random extras.
inline SssSummary run_sss(const SchemeCtx& ctx, int d_dual, int trials, double budget, std::uint64_t seed = 1) {
    SssSummary s{minimal_access_sets(ctx, budget), {}, trials, 0};
    s.coverage = coverage_report(ctx, s.access, d_dual, budget);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> digit(0, ctx.p - 1);
    const i64 m = ctx.participants();
    std::uniform_int_distribution<std::size_t> pick_set(0, s.access.sets.size() - 1);
    std::uniform_int_distribution<i64> pick_part(1, m);
    for (int t = 0; t < trials; ++t) {
        std::vector<int> u(deal_randomness(ctx));
        for (auto& v : u) v = digit(rng);
        const int secret = digit(rng);
        const auto shares = massey_deal(ctx, secret, u);
        const auto& base = s.access.sets[pick_set(rng)];
        std::vector<i64> access;
        for (auto j = base.find_first(); j != boost::dynamic_bitset<>::npos; j = base.find_next(j)) access.push_back(static_cast<i64>(j) + 1);
        for (int extra = 0; extra < 2; ++extra) {
            const i64 j = pick_part(rng);
            if (std::find(access.begin(), access.end(), j) == access.end()) access.push_back(j);
        }
        if (massey_recover(ctx, access, shares) == secret) ++s.recovered;
    }
    return s;
}

inline json sss_json(const SssSummary& s, const SchemeCtx& ctx, bool list_sets) {
    json cov = json::array();
    i64 par = 0;
    for (bool b : s.coverage.parallel_to_g0) par += b;
    cov.push_back({{"kind", "parallel-to-g0"}, {"participants", par}, {"expected", s.coverage.parallel_expected}, {"violations", s.coverage.parallel_violations}});
    cov.push_back({{"kind", "not-parallel"},
                   {"participants", static_cast<i64>(s.coverage.parallel_to_g0.size()) - par},
                   {"expected", s.coverage.nonparallel_expected},
                   {"violations", s.coverage.nonparallel_violations}});
    for (const auto& lv : s.coverage.levels)
        cov.push_back({{"kind", "t-subsets"}, {"t", lv.t}, {"expected", lv.expected}, {"subsets_checked", lv.subsets_checked}, {"violations", lv.violations}});
    json j{{"minimal_access_sets", static_cast<i64>(s.access.sets.size())},
           {"expected_count", checked_pow(ctx.p, ctx.k - 1)},
           {"participants", s.access.participants},
           {"filtering_removed", s.access.filtering_removed},
           {"coverage", cov},
           {"coverage_holds", s.coverage.holds},
           {"round_trip", {{"trials", s.trials}, {"recovered", s.recovered}}}};
    if (list_sets) {
        json sets = json::array();
        for (const auto& b : s.access.sets) {
            json one = json::array();
            for (auto x = b.find_first(); x != boost::dynamic_bitset<>::npos; x = b.find_next(x)) one.push_back(static_cast<i64>(x) + 1);
            sets.push_back(one);
        }
        j["sets"] = sets;
    }
    return j;
}

struct AnalysisResult {
    json report;
    std::string prediction_status;
};

inline AnalysisResult analyze(const FunctionTable& f, const json& function_echo, const AnalysisOptions& opt) {
    const FunctionAnalysis a = analyze_function(f, opt.threads);
    const CodeSpec spec = build_code(f, opt.construction, opt.punctured);
    const WeightDistribution wd = weight_distribution_exhaustive(spec, f, {opt.threads, opt.budget});

    json code = code_json(spec, wd, f.p);
    if (spec.kind == CodeKind::first_gen) code["fast_path_agrees"] = firstgen_weight_distribution_fast(spec, a.spectrum, f[0]) == wd;
    const PredictionOutcome pred = predict_for(a, opt.construction, opt.punctured, wd);
    json rep{{"schema", 1}, {"function", function_echo}, {"profile", profile_json(a)}, {"code", code}, {"prediction", prediction_json(pred)}};
    if (opt.with_sss) {
        const SchemeCtx ctx = make_scheme(spec, f);
        const auto dd = dual_distance(pless_dual_low_weights(wd, f.p));
        const SssSummary s = run_sss(ctx, dd.value_or(5), opt.sss_trials, opt.budget);
        rep["sss"] = sss_json(s, ctx, opt.list_sets);
    }
    return {rep, pred.status};
}

struct ExampleCheck {
    std::string name;
    bool ok;
    std::string detail;
};

struct ExampleResult {
    std::string id;
    std::vector<ExampleCheck> checks;
    std::vector<std::string> errata;
    bool passed() const {
        for (const auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
};

namespace detail {

inline std::string triple(i64 a, i64 b, i64 c) {
    return "[" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "]";
}

} // namespace detail

// One fixture entry: classification claims first, then every listed code.
inline ExampleResult verify_example(const json& ex, const EnumOptions& opt) {
    ExampleResult r{ex.at("id").get<std::string>(), {}, {}};
    const int p = ex.at("p"), n = ex.at("n");
    const FunctionTable f = eval_to_table(parse_poly(ex.at("poly").get<std::string>(), p, n));
    const FunctionAnalysis a = analyze_function(f, opt.threads);
    const PlateauProfile& pr = a.profile;
    const json& cl = ex.at("claims");
    auto check = [&](const std::string& name, bool ok, const std::string& detail) { r.checks.push_back({name, ok, detail}); };

    check("s", pr.s == cl.at("s").get<int>(), "s=" + std::to_string(pr.s));
    if (cl.contains("k")) check("k", pr.k == cl.at("k").get<i64>(), "k=" + std::to_string(pr.k));
    check("regularity", to_string(pr.regularity) == cl.at("regularity").get<std::string>(), to_string(pr.regularity));
    check("dual-bent-relative", pr.dual.has_value(), a.dual_failure.value_or("ok"));
    if (cl.contains("zero_side_f")) check("zero-side-f", sign_label(pr.eps0) == cl.at("zero_side_f").get<std::string>(), sign_label(pr.eps0));
    if (cl.contains("zero_side_fstar")) {
        const std::string got = pr.dual ? sign_label(pr.dual->sign_star[0]) : "none";
        check("zero-side-fstar", got == cl.at("zero_side_fstar").get<std::string>(), got);
    }
    if (cl.value("nwrf", false)) check("nwrf", pr.nwrf_t.has_value(), pr.nwrf_t ? "t=" + std::to_string(*pr.nwrf_t) : "not homogeneous");

    for (const json& c : ex.at("codes")) {
        const CodeKind kind = parse_code_kind(c.at("construction").get<std::string>());
        const bool punctured = c.at("punctured").get<bool>();
        const std::string tag = to_string(kind) + (punctured ? "/punctured" : "");
        const CodeSpec spec = build_code(f, kind, punctured);
        const WeightDistribution wd = weight_distribution_exhaustive(spec, f, opt);
        const auto want = c.at("params").get<std::vector<i64>>();
        const i64 d = wd.min_weight().value_or(0);
        check(tag + " params", want == std::vector<i64>{wd.length, wd.dimension, d}, detail::triple(wd.length, wd.dimension, d));
        check(tag + " enumerator", parse_enumerator(c.at("enumerator").get<std::string>()) == wd.counts, enumerator_string(wd));

        const DualLowWeights dual = pless_dual_low_weights(wd, p);
        const auto dd = dual_distance(dual);
        const auto want_dual = c.at("dual").get<std::vector<i64>>();
        const i64 got_dual_d = dd ? *dd : -1;
        const std::string got_dual = detail::triple(wd.length, dual.dual_dimension, got_dual_d);
        if (want_dual[1] != want[0] - want[1]) {
            // The reference's own primal parameters fix the dual dimension.
            r.errata.push_back(tag + ": reference dual " + detail::triple(want_dual[0], want_dual[1], want_dual[2]) + " contradicts primal " +
                               detail::triple(want[0], want[1], want[2]) + "; dual dimension must be " + std::to_string(want[0] - want[1]));
            check(tag + " dual", want_dual[0] == wd.length && want_dual[2] == got_dual_d && dual.dual_dimension == want[0] - want[1],
                  got_dual + " (reference dimension is inconsistent; see errata)");
        } else {
            check(tag + " dual", want_dual == std::vector<i64>{wd.length, dual.dual_dimension, got_dual_d}, got_dual);
        }
        if (kind == CodeKind::first_gen)
            check(tag + " fast-path", firstgen_weight_distribution_fast(spec, a.spectrum, f[0]) == wd, "spectrum route vs enumeration");
        const PredictionOutcome pred = predict_for(a, kind, punctured, wd);
        check(tag + " prediction", pred.status == "match", pred.status + (pred.reason.empty() ? "" : ": " + pred.reason));
    }
    return r;
}

inline json example_json(const ExampleResult& r) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    return {{"id", r.id}, {"passed", r.passed()}, {"checks", checks}, {"errata", r.errata}};
}

} // namespace plateau
