#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plateau/field.hpp"
#include "plateau/funcspace.hpp"
#include "plateau/parallel.hpp"

namespace plateau {

// counts[alpha * p + j] = #{x : f(x) - alpha.x = j}.
struct WalshSpectrum {
    int p = 3;
    int n = 1;
    std::vector<i64> counts;

    i64 points() const noexcept { return static_cast<i64>(counts.size()) / p; }
    const i64* row(i64 alpha) const { return counts.data() + alpha * p; }
    CycInt value(i64 alpha) const { return CycInt::from_raw(std::vector<i64>(row(alpha), row(alpha) + p)); }
    // Rows are constant exactly when the transform vanishes.
    bool vanishes(i64 alpha) const {
        const i64* r = row(alpha);
        for (int j = 1; j < p; ++j)
            if (r[j] != r[0]) return false;
        return true;
    }
};

inline WalshSpectrum walsh_counts_naive(const FunctionTable& f, unsigned threads = 1) {
    const int p = f.p, n = f.n;
    const i64 N = f.size();
    WalshSpectrum w{p, n, std::vector<i64>(static_cast<std::size_t>(N * p), 0)};
    parallel_chunks(N, resolve_threads(threads), [&](unsigned, i64 b, i64 e) {
        std::vector<int> d;
        for (i64 a = b; a < e; ++a) {
            dot_row(p, n, decode_point(p, n, a), d);
            i64* r = w.counts.data() + a * p;
            for (i64 x = 0; x < N; ++x) ++r[(f[x] - d[static_cast<std::size_t>(x)] + p) % p];
        }
    });
    return w;
}

// p-ary decimation along one coordinate per stage. Multiplying by xi^m is a
// cyclic shift of the count vector, so each butterfly stays in integers.
// values[x] < 0 marks a point outside the summation domain.
inline WalshSpectrum walsh_counts_fast_partial(int p, int n, const std::vector<int>& values, unsigned threads = 1) {
    const i64 N = domain_size(p, n);
    require(static_cast<i64>(values.size()) == N, errc::invalid_argument, "value table has wrong length");
    std::vector<i64> a(static_cast<std::size_t>(N * p), 0), b(a.size());
    for (i64 x = 0; x < N; ++x)
        if (values[static_cast<std::size_t>(x)] >= 0) a[static_cast<std::size_t>(x * p + values[static_cast<std::size_t>(x)])] = 1;

    const unsigned workers = resolve_threads(threads);
    i64 stride = 1;
    for (int stage = 0; stage < n; ++stage) {
        const i64 groups = N / p;
        parallel_chunks(groups, workers, [&](unsigned, i64 gb, i64 ge) {
            for (i64 g = gb; g < ge; ++g) {
                const i64 hi = g / stride, lo = g % stride;
                const i64 base = hi * stride * p + lo;
                for (int u = 0; u < p; ++u) {
                    i64* out = b.data() + (base + u * stride) * p;
                    std::fill(out, out + p, 0);
                    for (int t = 0; t < p; ++t) {
                        const i64* in = a.data() + (base + t * stride) * p;
                        const int shift = (u * t) % p;
                        for (int j = 0; j < p; ++j) out[j] += in[(j + shift) % p];
                    }
                }
            }
        });
        a.swap(b);
        stride *= p;
    }
    return {p, n, std::move(a)};
}

inline WalshSpectrum walsh_counts_fast(const FunctionTable& f, unsigned threads = 1) {
    return walsh_counts_fast_partial(f.p, f.n, f.values, threads);
}

// Sum over alpha of W(alpha) * conj(W(alpha)). Single terms need not be
// rational for arbitrary f; the total always is.
inline i128 parseval_total(const WalshSpectrum& w) {
    CycInt total(w.p);
    for (i64 a = 0; a < w.points(); ++a) {
        const CycInt v = w.value(a);
        total = total + cyc_mul(v, conj(v));
    }
    require(total.is_rational(), errc::invalid_argument, "sum of |W|^2 is not rational");
    return total[0];
}

inline bool parseval_holds(const WalshSpectrum& w) {
    i128 expect = 1;
    for (int i = 0; i < 2 * w.n; ++i) expect *= w.p;
    return parseval_total(w) == expect;
}

enum class FnType { plus, minus, balanced };
enum class Regularity { regular, weakly_regular, non_weakly_regular };

inline std::string to_string(FnType t) {
    return t == FnType::plus ? "+" : t == FnType::minus ? "-" : "balanced";
}
inline std::string to_string(Regularity r) {
    switch (r) {
    case Regularity::regular: return "regular";
    case Regularity::weakly_regular: return "weakly-regular";
    case Regularity::non_weakly_regular: return "non-weakly-regular";
    }
    return "unknown";
}

struct DualProfile {
    std::vector<int> fstarstar;  // over all of F_p^n
    std::vector<int> sign_star;  // +1 / -1 over all of F_p^n
    std::vector<i64> b_plus_star, b_minus_star;
    FnType type_of_fstar = FnType::balanced;
    bool involution_ok = false;  // f**(x) == f(-x) everywhere
};

struct PlateauProfile {
    int p = 3;
    int n = 1;
    int s = 0;
    std::vector<i64> supp;
    std::vector<int> eps;    // +1 / -1 on supp, 0 elsewhere
    std::vector<int> fstar;  // value on supp, -1 elsewhere
    std::vector<i64> b_plus, b_minus;
    i64 k = 0;
    FnType type_of_f = FnType::balanced;
    Regularity regularity = Regularity::weakly_regular;
    std::optional<int> eps0;
    std::optional<int> nwrf_t, dual_h;
    std::optional<DualProfile> dual;

    bool in_supp(i64 a) const { return eps[static_cast<std::size_t>(a)] != 0; }
    Parity parity() const noexcept { return (n + s) % 2 == 0 ? Parity::even : Parity::odd; }
};

inline PlateauProfile classify_plateaued(const WalshSpectrum& w) {
    const int p = w.p, n = w.n;
    const i64 N = w.points();
    PlateauProfile prof;
    prof.p = p;
    prof.n = n;
    for (i64 a = 0; a < N; ++a)
        if (!w.vanishes(a)) prof.supp.push_back(a);

    i64 size = static_cast<i64>(prof.supp.size());
    int log = 0;
    while (size % p == 0) {
        size /= p;
        ++log;
    }
    if (size != 1 || log > n)
        fail(errc::not_plateaued, "support size " + std::to_string(prof.supp.size()) + " is not a power of p");
    prof.s = n - log;

    const FieldCtx ctx(p);
    const WalshFormMatcher matcher(ctx, checked_pow(p, (n + prof.s) / 2), prof.parity());
    prof.eps.assign(static_cast<std::size_t>(N), 0);
    prof.fstar.assign(static_cast<std::size_t>(N), -1);
    for (i64 a : prof.supp) {
        const Recognition r = matcher.match(w.value(a));
        if (!r.matched()) fail(errc::not_plateaued, "Walsh value at point " + std::to_string(a) + " has no admissible form");
        prof.eps[static_cast<std::size_t>(a)] = r.sign;
        prof.fstar[static_cast<std::size_t>(a)] = r.j;
        (r.sign > 0 ? prof.b_plus : prof.b_minus).push_back(a);
    }
    prof.k = static_cast<i64>(prof.b_plus.size());

    // epsilon is 1 only when p^{n+s} = 1 mod 4.
    const bool unit_eps = prof.parity() == Parity::even || p % 4 == 1;
    if (prof.b_minus.empty() && unit_eps)
        prof.regularity = Regularity::regular;
    else if (prof.b_minus.empty() || prof.b_plus.empty())
        prof.regularity = Regularity::weakly_regular;
    else
        prof.regularity = Regularity::non_weakly_regular;

    if (prof.in_supp(0)) {
        prof.eps0 = prof.eps[0];
        prof.type_of_f = prof.eps[0] > 0 ? FnType::plus : FnType::minus;
    }
    return prof;
}

// Transform of f* over the support, for every alpha in F_p^n.
inline WalshSpectrum dual_spectrum(const PlateauProfile& prof, unsigned threads = 1) {
    return walsh_counts_fast_partial(prof.p, prof.n, prof.fstar, threads);
}

inline PlateauProfile dual_spectrum_and_bent_check(const FunctionTable& f, const PlateauProfile& prof, unsigned threads = 1) {
    require(f.p == prof.p && f.n == prof.n, errc::invalid_argument, "profile does not belong to this function");
    const int p = prof.p, n = prof.n;
    const WalshSpectrum w = dual_spectrum(prof, threads);
    const WalshFormMatcher matcher(FieldCtx(p), checked_pow(p, (n - prof.s) / 2), prof.parity());

    DualProfile d;
    const i64 N = w.points();
    d.fstarstar.assign(static_cast<std::size_t>(N), 0);
    d.sign_star.assign(static_cast<std::size_t>(N), 0);
    for (i64 a = 0; a < N; ++a) {
        const Recognition r = matcher.match(w.value(a));
        if (!r.matched())
            fail(errc::dual_not_bent_relative, "dual transform at point " + std::to_string(a) + " has no admissible form");
        d.fstarstar[static_cast<std::size_t>(a)] = r.j;
        d.sign_star[static_cast<std::size_t>(a)] = r.sign;
        (r.sign > 0 ? d.b_plus_star : d.b_minus_star).push_back(a);
    }
    d.type_of_fstar = d.sign_star[0] > 0 ? FnType::plus : FnType::minus;
    d.involution_ok = true;
    for (i64 x = 0; x < N && d.involution_ok; ++x)
        d.involution_ok = d.fstarstar[static_cast<std::size_t>(x)] == f[scale_index(p, n, x, p - 1)];

    PlateauProfile out = prof;
    out.dual = std::move(d);
    return out;
}

struct NwrfExponent {
    int t;
    int h;
};

// Smallest even t in 2..2(p-1) with gcd(t-1, p-1) = 1 and f(ax) = a^t f(x).
inline std::optional<NwrfExponent> nwrf_exponent(const FunctionTable& f) {
    const int p = f.p, n = f.n;
    if (f[0] != 0) return std::nullopt;
    const i64 N = f.size();
    std::vector<std::vector<i64>> scaled(static_cast<std::size_t>(p));
    for (int a = 2; a < p; ++a) {
        auto& s = scaled[static_cast<std::size_t>(a)];
        s.resize(static_cast<std::size_t>(N));
        for (i64 x = 0; x < N; ++x) s[static_cast<std::size_t>(x)] = scale_index(p, n, x, a);
    }
    for (int t = 2; t <= 2 * (p - 1); t += 2) {
        if (std::gcd(t - 1, p - 1) != 1) continue;
        bool ok = true;
        for (int a = 2; a < p && ok; ++a) {
            const i64 at = pow_mod(a, t, p);
            const auto& s = scaled[static_cast<std::size_t>(a)];
            for (i64 x = 0; x < N && ok; ++x) ok = f[s[static_cast<std::size_t>(x)]] == at * f[x] % p;
        }
        if (!ok) continue;
        int l = 1;
        while ((i64(l) * (t - 1)) % (p - 1) != 1 % (p - 1)) ++l;
        return NwrfExponent{t, l + 1};
    }
    return std::nullopt;
}

struct RegularityReport {
    Regularity label;
    std::optional<std::pair<i64, i64>> witness;  // (point in B+, point in B-)
};

inline RegularityReport regularity_of(const PlateauProfile& prof) {
    RegularityReport r{prof.regularity, std::nullopt};
    if (prof.regularity == Regularity::non_weakly_regular) r.witness = std::make_pair(prof.b_plus.front(), prof.b_minus.front());
    return r;
}

} // namespace plateau
