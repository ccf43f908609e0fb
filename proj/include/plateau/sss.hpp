#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "plateau/codes.hpp"
#include "plateau/field.hpp"

namespace plateau {

// Scheme built on the dual of a base code C with generator columns g_0..g_{m-1}.
// Shares are coordinates 1..m-1 of a random codeword of the dual; coordinate 0 is
// the secret. A participant set recovers it exactly when some codeword of C has
// a 1 at coordinate 0 and support inside {0} and the set.
struct SchemeCtx {
    int p = 3;
    int k = 0;
    std::vector<std::vector<int>> columns;     // g_0 .. g_{m-1}, each of length k
    std::vector<std::vector<int>> dual_basis;  // rows spanning the dual code, length m

    i64 participants() const noexcept { return static_cast<i64>(columns.size()) - 1; }
    const std::vector<int>& g0() const { return columns.front(); }
};

namespace detail {

inline int dot_mod(const std::vector<int>& u, const std::vector<int>& g, int p) {
    i64 s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += i64(u[i]) * g[i];
    return static_cast<int>(mod(s, p));
}

// Reduced row echelon form over the first cols columns, in place; row r < pivots.size()
// has its leading 1 in column pivots[r], later rows are zero in those columns.
inline std::vector<std::size_t> row_reduce(std::vector<std::vector<int>>& a, std::size_t cols, int p) {
    const FieldCtx F(p);
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
        std::size_t sel = row;
        while (sel < a.size() && a[sel][c] == 0) ++sel;
        if (sel == a.size()) continue;
        std::swap(a[sel], a[row]);
        const int inv = F.inv(a[row][c]);
        for (auto& v : a[row]) v = static_cast<int>(i64(v) * inv % p);
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == row || a[r][c] == 0) continue;
            const i64 factor = a[r][c];
            for (std::size_t cc = 0; cc < a[r].size(); ++cc) a[r][cc] = static_cast<int>(mod(a[r][cc] - factor * a[row][cc], p));
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

// Null space of the k x m matrix with the given columns.
inline std::vector<std::vector<int>> null_space(const std::vector<std::vector<int>>& columns, int k, int p) {
    const std::size_t m = columns.size();
    std::vector<std::vector<int>> a(static_cast<std::size_t>(k), std::vector<int>(m));
    for (std::size_t c = 0; c < m; ++c)
        for (int r = 0; r < k; ++r) a[static_cast<std::size_t>(r)][c] = columns[c][static_cast<std::size_t>(r)];
    const auto pivots = row_reduce(a, m, p);
    std::vector<char> is_pivot(m, 0);
    for (std::size_t c : pivots) is_pivot[c] = 1;
    std::vector<std::vector<int>> basis;
    for (std::size_t free = 0; free < m; ++free) {
        if (is_pivot[free]) continue;
        std::vector<int> v(m, 0);
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = static_cast<int>(mod(-a[r][free], p));
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace detail

inline SchemeCtx make_scheme_from_columns(int p, std::vector<std::vector<int>> columns) {
    require(columns.size() >= 2, errc::invalid_argument, "secret sharing needs at least one participant");
    SchemeCtx ctx{p, static_cast<int>(columns.front().size()), std::move(columns), {}};
    require(ctx.k >= 2, errc::invalid_argument, "secret sharing needs a base code of dimension at least 2");
    for (const auto& c : ctx.columns) require(static_cast<int>(c.size()) == ctx.k, errc::invalid_argument, "columns differ in length");
    require(std::any_of(ctx.g0().begin(), ctx.g0().end(), [](int v) { return v != 0; }), errc::invalid_argument, "g_0 is zero");
    ctx.dual_basis = detail::null_space(ctx.columns, ctx.k, p);
    require(std::any_of(ctx.dual_basis.begin(), ctx.dual_basis.end(), [](const auto& b) { return b[0] != 0; }), errc::invalid_argument,
            "no dual codeword reaches coordinate 0, so no participant set can recover the secret");
    return ctx;
}

inline SchemeCtx make_scheme(const CodeSpec& spec, const FunctionTable& f) {
    const auto rows = generator_rows(spec, f);
    std::vector<std::vector<int>> columns;
    for (i64 c = 0; c < spec.length(); ++c) {
        std::vector<int> col(static_cast<std::size_t>(spec.message_dim));
        for (int i = 0; i < spec.message_dim; ++i) col[static_cast<std::size_t>(i)] = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
        columns.push_back(std::move(col));
    }
    return make_scheme_from_columns(spec.p, std::move(columns));
}

inline std::size_t deal_randomness(const SchemeCtx& ctx) { return ctx.dual_basis.size(); }

// Mixes the dual basis with the given coefficients, then rescales the first
// basis row reaching coordinate 0 so that coordinate equals the secret.
// Returns the shares t_1 .. t_{m-1}.
inline std::vector<int> massey_deal(const SchemeCtx& ctx, int secret, std::vector<int> r) {
    require(r.size() == deal_randomness(ctx), errc::invalid_argument, "randomness has wrong length");
    const int p = ctx.p;
    const FieldCtx F(p);
    const auto pivot = static_cast<std::size_t>(
        std::find_if(ctx.dual_basis.begin(), ctx.dual_basis.end(), [](const auto& b) { return b[0] != 0; }) - ctx.dual_basis.begin());
    r[pivot] = 0;
    i64 rest = 0;
    for (std::size_t i = 0; i < r.size(); ++i) rest += i64(r[i]) * ctx.dual_basis[i][0];
    r[pivot] = static_cast<int>(mod((secret - rest) * F.inv(ctx.dual_basis[pivot][0]), p));

    const std::size_t m = ctx.columns.size();
    std::vector<i64> word(m, 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i])
            for (std::size_t j = 0; j < m; ++j) word[j] += i64(r[i]) * ctx.dual_basis[i][j];
    std::vector<int> shares;
    shares.reserve(m - 1);
    for (std::size_t j = 1; j < m; ++j) shares.push_back(static_cast<int>(mod(word[j], p)));
    return shares;
}

// Codeword x of the base code with x_0 = 1 and x_j = 0 outside the access set
// (participant numbers 1..m-1); the secret is then -sum x_j t_j.
inline std::vector<int> recovery_codeword(const SchemeCtx& ctx, const std::vector<i64>& access) {
    const int p = ctx.p, k = ctx.k;
    const i64 m = ctx.participants() + 1;
    std::vector<char> inside(static_cast<std::size_t>(m), 0);
    for (i64 j : access) {
        require(j >= 1 && j < m, errc::invalid_argument, "participant index out of range");
        inside[static_cast<std::size_t>(j)] = 1;
    }
    // Rows of [M | b] for u.g_0 = 1 and u.g_j = 0 for every outsider j.
    std::vector<std::vector<int>> a;
    auto add = [&](const std::vector<int>& g, int rhs) {
        std::vector<int> row(g);
        row.push_back(rhs);
        a.push_back(std::move(row));
    };
    add(ctx.g0(), 1);
    for (i64 j = 1; j < m; ++j)
        if (!inside[static_cast<std::size_t>(j)]) add(ctx.columns[static_cast<std::size_t>(j)], 0);
    const auto pivots = detail::row_reduce(a, static_cast<std::size_t>(k), p);
    for (std::size_t r = pivots.size(); r < a.size(); ++r)
        if (a[r][static_cast<std::size_t>(k)] != 0) fail(errc::not_an_access_set, "the given participants cannot determine the secret");
    std::vector<int> u(static_cast<std::size_t>(k), 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) u[pivots[r]] = a[r][static_cast<std::size_t>(k)];
    std::vector<int> x;
    x.reserve(static_cast<std::size_t>(m));
    for (const auto& g : ctx.columns) x.push_back(detail::dot_mod(u, g, p));
    return x;
}

inline int massey_recover(const SchemeCtx& ctx, const std::vector<i64>& access, const std::vector<int>& shares) {
    require(static_cast<i64>(shares.size()) == ctx.participants(), errc::invalid_argument, "share vector has wrong length");
    if (access.empty()) fail(errc::not_an_access_set, "empty access set");
    const std::vector<int> x = recovery_codeword(ctx, access);
    i64 s = 0;
    for (std::size_t j = 1; j < x.size(); ++j) s -= i64(x[j]) * shares[j - 1];
    return static_cast<int>(mod(s, ctx.p));
}

struct AccessStructure {
    i64 participants = 0;
    i64 codewords_with_unit_secret = 0;  // p^{k-1}
    std::vector<boost::dynamic_bitset<>> sets;  // bit j-1 set when participant j belongs
    bool filtering_removed = false;  // true only for non-minimal base codes
};

inline AccessStructure minimal_access_sets(const SchemeCtx& ctx, double budget = default_budget) {
    const int p = ctx.p, k = ctx.k;
    const i64 m = ctx.participants();
    check_budget(p, k, m + 1, budget, "access-structure enumeration");
    AccessStructure out;
    out.participants = m;

    // Enumerate u with u.g0 = 1: free coordinates everywhere except the pivot.
    const FieldCtx F(p);
    const auto& g0 = ctx.g0();
    const auto pivot = static_cast<std::size_t>(std::find_if(g0.begin(), g0.end(), [](int v) { return v != 0; }) - g0.begin());
    const i64 count = checked_pow(p, k - 1);
    std::vector<boost::dynamic_bitset<>> raw;
    raw.reserve(static_cast<std::size_t>(count));
    std::vector<int> u(static_cast<std::size_t>(k));
    for (i64 idx = 0; idx < count; ++idx) {
        i64 rest = idx;
        for (int i = k - 1; i >= 0; --i) {
            if (static_cast<std::size_t>(i) == pivot) continue;
            u[static_cast<std::size_t>(i)] = static_cast<int>(rest % p);
            rest /= p;
        }
        u[pivot] = 0;
        u[pivot] = static_cast<int>(mod((1 - detail::dot_mod(u, g0, p)) * F.inv(g0[pivot]), p));
        boost::dynamic_bitset<> s(static_cast<std::size_t>(m));
        for (i64 j = 0; j < m; ++j)
            if (detail::dot_mod(u, ctx.columns[static_cast<std::size_t>(j + 1)], p) != 0) s.set(static_cast<std::size_t>(j));
        raw.push_back(std::move(s));
    }
    out.codewords_with_unit_secret = count;

    std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) {
        const auto ca = a.count(), cb = b.count();
        return ca != cb ? ca < cb : a < b;
    });
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    // Sorted by size, so any subset of raw[i] appears before it.
    for (std::size_t i = 0; i < raw.size(); ++i) {
        bool minimal = true;
        for (const auto& kept : out.sets) {
            if (kept.count() >= raw[i].count()) break;
            if (kept.is_subset_of(raw[i])) {
                minimal = false;
                break;
            }
        }
        if (minimal) out.sets.push_back(raw[i]);
    }
    out.filtering_removed = static_cast<i64>(out.sets.size()) != count;
    return out;
}

struct CoverageLevel {
    int t = 0;
    i64 expected = 0;  // (p-1)^t p^{k-(t+1)}
    i64 subsets_checked = 0;
    i64 violations = 0;
};

struct CoverageReport {
    std::vector<i64> per_participant;
    std::vector<bool> parallel_to_g0;
    i64 parallel_expected = 0;     // p^{k-1}
    i64 nonparallel_expected = 0;  // (p-1) p^{k-2}
    i64 parallel_violations = 0;
    i64 nonparallel_violations = 0;
    std::vector<CoverageLevel> levels;  // only when d_dual >= 3
    bool holds = false;
};

inline bool parallel(const std::vector<int>& g, const std::vector<int>& g0, int p) {
    // g = lambda g0 with lambda != 0.
    std::optional<i64> lambda;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g0[i] == 0) {
            if (g[i] != 0) return false;
            continue;
        }
        const i64 l = mod(i64(g[i]) * pow_mod(g0[i], p - 2, p), p);
        if (lambda && *lambda != l) return false;
        lambda = l;
    }
    return lambda && *lambda != 0;
}

inline CoverageReport coverage_report(const SchemeCtx& ctx, const AccessStructure& as, int d_dual, double budget = default_budget) {
    const int p = ctx.p, k = ctx.k;
    const i64 m = ctx.participants();
    CoverageReport r;
    r.per_participant.assign(static_cast<std::size_t>(m), 0);
    for (const auto& s : as.sets)
        for (auto j = s.find_first(); j != boost::dynamic_bitset<>::npos; j = s.find_next(j)) ++r.per_participant[j];
    r.parallel_expected = checked_pow(p, k - 1);
    r.nonparallel_expected = (p - 1) * checked_pow(p, k - 2);
    for (i64 j = 0; j < m; ++j) {
        const bool par = parallel(ctx.columns[static_cast<std::size_t>(j + 1)], ctx.g0(), p);
        r.parallel_to_g0.push_back(par);
        const i64 c = r.per_participant[static_cast<std::size_t>(j)];
        if (par && c != r.parallel_expected) ++r.parallel_violations;
        if (!par && c != r.nonparallel_expected) ++r.nonparallel_violations;
    }
    r.holds = r.parallel_violations == 0 && r.nonparallel_violations == 0;

    if (d_dual >= 3) {
        const int tmax = std::min(k - 1, d_dual - 2);
        for (int t = 1; t <= tmax; ++t) {
            CoverageLevel lv{t, 0, 0, 0};
            lv.expected = checked_pow(p - 1, t) * checked_pow(p, k - (t + 1));
            // C(m, t) * |sets| membership tests.
            long double work = static_cast<long double>(as.sets.size());
            for (int i = 0; i < t; ++i) work = work * static_cast<long double>(m - i) / (i + 1);
            if (work > static_cast<long double>(budget)) break;
            std::vector<i64> pick(static_cast<std::size_t>(t));
            for (int i = 0; i < t; ++i) pick[static_cast<std::size_t>(i)] = i;
            while (true) {
                i64 hits = 0;
                for (const auto& s : as.sets) {
                    bool all = true;
                    for (i64 j : pick) all = all && s.test(static_cast<std::size_t>(j));
                    hits += all;
                }
                ++lv.subsets_checked;
                if (hits != lv.expected) ++lv.violations;
                int i = t - 1;
                while (i >= 0 && pick[static_cast<std::size_t>(i)] == m - t + i) --i;
                if (i < 0) break;
                ++pick[static_cast<std::size_t>(i)];
                for (int q = i + 1; q < t; ++q) pick[static_cast<std::size_t>(q)] = pick[static_cast<std::size_t>(q - 1)] + 1;
            }
            r.holds = r.holds && lv.violations == 0;
            r.levels.push_back(lv);
        }
    }
    return r;
}

} // namespace plateau
