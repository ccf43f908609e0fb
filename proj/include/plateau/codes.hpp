#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plateau/field.hpp"
#include "plateau/funcspace.hpp"
#include "plateau/parallel.hpp"
#include "plateau/theory.hpp"
#include "plateau/walsh.hpp"

namespace plateau {

inline constexpr double default_budget = 1e10;

struct Provenance {
    std::string source;    // polynomial text or table path
    std::string selector;  // construction name
    bool punctured = false;
};

struct CodeSpec {
    int p = 3;
    int n = 1;
    CodeKind kind = CodeKind::first_gen;
    std::vector<i64> coords;  // strictly increasing point indices, never 0
    int message_dim = 0;
    Provenance provenance;

    i64 length() const noexcept { return static_cast<i64>(coords.size()); }
    bool is_defining_set() const noexcept { return kind != CodeKind::first_gen; }
};

inline CodeSpec firstgen_spec(const FunctionTable& f) {
    CodeSpec c{f.p, f.n, CodeKind::first_gen, {}, f.n + 1, {"", to_string(CodeKind::first_gen), false}};
    c.coords.reserve(static_cast<std::size_t>(f.size() - 1));
    for (i64 x = 1; x < f.size(); ++x) c.coords.push_back(x);
    return c;
}

inline CodeSpec defining_set(const FunctionTable& f, CodeKind selector) {
    require(selector != CodeKind::first_gen, errc::invalid_argument, "defining set needs a zero, sq or nsq selector");
    const FieldCtx ctx(f.p);
    CodeSpec c{f.p, f.n, selector, {}, f.n, {"", to_string(selector), false}};
    for (i64 x = 1; x < f.size(); ++x) {
        const int v = f[x];
        const bool keep = selector == CodeKind::defset_zero ? v == 0 : (v != 0 && ctx.eta(v) == (selector == CodeKind::defset_sq ? 1 : -1));
        if (keep) c.coords.push_back(x);
    }
    if (c.coords.empty()) fail(errc::empty_defining_set, "defining set for " + to_string(selector) + " is empty");
    return c;
}

// Keeps the smallest index of each F_p^x-orbit. Every orbit must lie wholly inside the set.
inline CodeSpec puncture_representatives(const CodeSpec& spec) {
    require(spec.is_defining_set(), errc::invalid_argument, "puncturing applies to defining-set codes only");
    require(!spec.provenance.punctured, errc::invalid_argument, "code is already punctured");
    const int p = spec.p, n = spec.n;
    std::vector<char> member(static_cast<std::size_t>(domain_size(p, n)), 0);
    for (i64 x : spec.coords) member[static_cast<std::size_t>(x)] = 1;

    CodeSpec out = spec;
    out.coords.clear();
    out.provenance.punctured = true;
    for (i64 x : spec.coords) {
        i64 rep = x;
        for (int a = 2; a < p; ++a) {
            const i64 y = scale_index(p, n, x, a);
            if (!member[static_cast<std::size_t>(y)])
                fail(errc::not_scaling_closed, "point " + std::to_string(x) + " is in the set but its multiple " + std::to_string(y) + " is not");
            rep = std::min(rep, y);
        }
        if (rep == x) out.coords.push_back(x);
    }
    require(out.length() * (p - 1) == spec.length(), errc::not_scaling_closed, "orbit count does not divide the set size");
    return out;
}

inline CodeSpec build_code(const FunctionTable& f, CodeKind kind, bool punctured) {
    if (kind == CodeKind::first_gen) {
        require(!punctured, errc::invalid_argument, "the first generic construction has no punctured variant");
        return firstgen_spec(f);
    }
    CodeSpec c = defining_set(f, kind);
    return punctured ? puncture_representatives(c) : c;
}

// Column of the generator matrix at coordinate x: (f(x), -x) or x.
inline std::vector<std::vector<std::uint8_t>> generator_rows(const CodeSpec& spec, const FunctionTable& f) {
    require(f.p == spec.p && f.n == spec.n, errc::invalid_argument, "code and function disagree on p or n");
    const int p = spec.p, n = spec.n;
    const std::size_t L = spec.coords.size();
    std::vector<std::vector<std::uint8_t>> rows(static_cast<std::size_t>(spec.message_dim), std::vector<std::uint8_t>(L));
    for (std::size_t c = 0; c < L; ++c) {
        const std::vector<int> x = decode_point(p, n, spec.coords[c]);
        if (spec.kind == CodeKind::first_gen) {
            rows[0][c] = static_cast<std::uint8_t>(f[spec.coords[c]]);
            for (int i = 0; i < n; ++i) rows[static_cast<std::size_t>(i + 1)][c] = static_cast<std::uint8_t>((p - x[static_cast<std::size_t>(i)]) % p);
        } else {
            for (int i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)][c] = static_cast<std::uint8_t>(x[static_cast<std::size_t>(i)]);
        }
    }
    return rows;
}

inline void check_budget(int p, int message_dim, i64 length, double budget, const std::string& what) {
    long double ops = static_cast<long double>(length);
    for (int i = 0; i < message_dim; ++i) ops *= p;
    if (ops > static_cast<long double>(budget))
        fail(errc::budget_exceeded, what + " needs about " + std::to_string(static_cast<double>(ops)) + " operations, budget is " + std::to_string(budget));
}

struct EnumOptions {
    unsigned threads = 1;
    double budget = default_budget;
};

// Walks messages in radix-p order; bumping digit i adds row i to the codeword,
// so each step costs one row addition regardless of carries.
inline WeightDistribution weight_distribution_exhaustive(const CodeSpec& spec, const FunctionTable& f, const EnumOptions& opt = {}) {
    const int p = spec.p, k = spec.message_dim;
    const i64 L = spec.length();
    require(L > 0, errc::invalid_argument, "code has no coordinates");
    check_budget(p, k, L, opt.budget, "exhaustive enumeration");
    const auto rows = generator_rows(spec, f);
    const i64 messages = checked_pow(p, k);
    const unsigned workers = resolve_threads(opt.threads);

    std::vector<std::vector<i64>> hist(workers, std::vector<i64>(static_cast<std::size_t>(L + 1), 0));
    std::vector<std::optional<i64>> collapse(workers);
    parallel_chunks(messages, workers, [&](unsigned w, i64 b, i64 e) {
        if (b >= e) return;
        std::vector<int> digits(static_cast<std::size_t>(k));
        for (i64 i = k - 1, rest = b; i >= 0; --i, rest /= p) digits[static_cast<std::size_t>(i)] = static_cast<int>(rest % p);
        std::vector<std::uint8_t> cw(static_cast<std::size_t>(L), 0);
        for (int i = 0; i < k; ++i)
            for (i64 c = 0; c < L; ++c)
                cw[static_cast<std::size_t>(c)] = static_cast<std::uint8_t>((cw[static_cast<std::size_t>(c)] + digits[static_cast<std::size_t>(i)] * rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)]) % p);
        auto& h = hist[w];
        for (i64 m = b; m < e; ++m) {
            i64 wt = 0;
            for (std::uint8_t v : cw) wt += v != 0;
            ++h[static_cast<std::size_t>(wt)];
            if (wt == 0 && m != 0 && !collapse[w]) collapse[w] = m;
            for (int i = k - 1; i >= 0; --i) {
                const auto& r = rows[static_cast<std::size_t>(i)];
                for (i64 c = 0; c < L; ++c) {
                    const int s = cw[static_cast<std::size_t>(c)] + r[static_cast<std::size_t>(c)];
                    cw[static_cast<std::size_t>(c)] = static_cast<std::uint8_t>(s >= p ? s - p : s);
                }
                if (++digits[static_cast<std::size_t>(i)] < p) break;
                digits[static_cast<std::size_t>(i)] = 0;
            }
        }
    });
    for (const auto& c : collapse)
        if (c) {
            std::string msg;
            for (int d : decode_point(p, k, *c)) msg += std::to_string(d);
            fail(errc::dimension_collapse, "nonzero message " + msg + " gives the zero codeword");
        }

    WeightDistribution wd{L, k, {}};
    for (const auto& h : hist)
        for (i64 wt = 0; wt <= L; ++wt)
            if (h[static_cast<std::size_t>(wt)]) wd.counts[wt] += h[static_cast<std::size_t>(wt)];
    return wd;
}

// Codeword (a, b), a != 0, vanishes exactly where f(x) - a^{-1}b.x = 0; that
// zero count is (Tr W(a^{-1}b) + p^n) / p. Each alpha is hit by p-1 pairs.
inline WeightDistribution firstgen_weight_distribution_fast(const CodeSpec& spec, const WalshSpectrum& w, int f_at_zero) {
    require(spec.kind == CodeKind::first_gen, errc::invalid_argument, "fast path applies to the first generic construction");
    require(w.p == spec.p && w.n == spec.n, errc::invalid_argument, "spectrum does not match the code");
    const int p = spec.p, n = spec.n;
    const i64 N = w.points();
    WeightDistribution wd{N - 1, n + 1, {}};
    wd.counts[0] = 1;
    wd.counts[(p - 1) * (N / p)] += N - 1;  // a = 0, b != 0
    const i64 at_zero = f_at_zero != 0 ? 1 : 0;
    for (i64 alpha = 0; alpha < N; ++alpha) {
        const i64 t = trace(w.value(alpha)) + N;
        require(t % p == 0, errc::invalid_argument, "trace of a Walsh value is inconsistent");
        const i64 weight = N - t / p - at_zero;
        if (weight == 0) fail(errc::dimension_collapse, "a codeword with a != 0 vanishes at alpha index " + std::to_string(alpha));
        wd.counts[weight] += p - 1;
    }
    return wd;
}

struct WeightDelta {
    i64 weight;
    i64 actual;
    i64 predicted;
};

struct VerifyReport {
    bool match = false;
    bool length_ok = false;
    bool dimension_ok = false;
    std::vector<WeightDelta> deltas;  // weights where the multiplicities differ
};

inline VerifyReport verify_prediction(const WeightDistribution& actual, const WeightDistribution& predicted) {
    VerifyReport r;
    r.length_ok = actual.length == predicted.length;
    r.dimension_ok = actual.dimension == predicted.dimension;
    auto a = actual.counts.begin(), b = predicted.counts.begin();
    while (a != actual.counts.end() || b != predicted.counts.end()) {
        if (b == predicted.counts.end() || (a != actual.counts.end() && a->first < b->first)) {
            r.deltas.push_back({a->first, a->second, 0});
            ++a;
        } else if (a == actual.counts.end() || b->first < a->first) {
            r.deltas.push_back({b->first, 0, b->second});
            ++b;
        } else {
            if (a->second != b->second) r.deltas.push_back({a->first, a->second, b->second});
            ++a;
            ++b;
        }
    }
    r.match = r.length_ok && r.dimension_ok && r.deltas.empty();
    return r;
}

} // namespace plateau
