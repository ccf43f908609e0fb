#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "plateau/field.hpp"

namespace plateau {

using bigint = boost::multiprecision::cpp_int;
// Expression templates off: mixed ?: branches and auto locals must be concrete values.
using rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

struct WeightDistribution {
    i64 length = 0;
    int dimension = 0;
    std::map<i64, i64> counts;  // weight -> multiplicity, zero multiplicities never stored

    i64 total() const {
        i64 t = 0;
        for (const auto& [w, c] : counts) t += c;
        return t;
    }
    std::optional<i64> min_weight() const {
        for (const auto& [w, c] : counts)
            if (w > 0) return w;
        return std::nullopt;
    }
    std::optional<i64> max_weight() const {
        if (counts.empty() || counts.rbegin()->first == 0) return std::nullopt;
        return counts.rbegin()->first;
    }

    friend bool operator==(const WeightDistribution&, const WeightDistribution&) = default;
};

inline std::string enumerator_string(const WeightDistribution& wd) {
    std::string s;
    for (const auto& [w, c] : wd.counts) {
        if (!s.empty()) s += '+';
        if (w == 0)
            s += std::to_string(c);
        else
            s += (c == 1 ? std::string() : std::to_string(c)) + "z^" + std::to_string(w);
    }
    return s;
}

enum class CodeKind { first_gen, defset_zero, defset_sq, defset_nsq };

inline std::string to_string(CodeKind k) {
    switch (k) {
    case CodeKind::first_gen: return "first-gen";
    case CodeKind::defset_zero: return "defset-zero";
    case CodeKind::defset_sq: return "defset-sq";
    case CodeKind::defset_nsq: return "defset-nsq";
    }
    return "unknown";
}

inline CodeKind parse_code_kind(const std::string& s) {
    for (CodeKind k : {CodeKind::first_gen, CodeKind::defset_zero, CodeKind::defset_sq, CodeKind::defset_nsq})
        if (to_string(k) == s) return k;
    fail(errc::invalid_argument, "unknown construction '" + s + "'");
}

struct PredictionInput {
    int p = 3;
    int n = 1;
    int s = 0;
    i64 k = 0;
    int eps0_f = 1;      // side of 0 in B+(f) / B-(f)
    int eps0_fstar = 1;  // side of 0 in B+(f*) / B-(f*)
    CodeKind kind = CodeKind::first_gen;
    bool punctured = false;
};

namespace detail {

inline rational ppow(int p, int e) {
    rational r = 1;
    for (int i = 0; i < (e < 0 ? -e : e); ++i) r *= p;
    return e < 0 ? rational(1) / r : r;
}

inline i64 to_i64(const rational& r, errc code, const std::string& what) {
    if (denominator(r) != 1) fail(code, what + " is not an integer");
    const bigint v = numerator(r);
    if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min()) fail(errc::overflow, what + " exceeds 64 bits");
    return static_cast<i64>(v);
}

inline void hypothesis(bool ok, const std::string& what) {
    if (!ok) fail(errc::hypothesis_violation, what);
}

inline void check_sign(int s, const char* what) {
    hypothesis(s == 1 || s == -1, std::string(what) + " must be +1 or -1");
}

inline bool even(int v) { return v % 2 == 0; }

} // namespace detail

inline std::vector<i64> value_distribution_f(int p, int n, int s, int type, int j0) {
    const FieldCtx ctx(p);
    detail::hypothesis(type == 1 || type == -1, "value counts need an unbalanced function");
    detail::hypothesis(0 <= s && s <= n, "s must lie in 0..n");
    using detail::ppow;
    std::vector<rational> N(static_cast<std::size_t>(p));
    if (detail::even(n + s)) {
        const int h = (n + s) / 2;
        for (int j = 0; j < p; ++j)
            N[static_cast<std::size_t>(j)] = j == mod(j0, p) ? ppow(p, n - 1) + type * (ppow(p, h) - ppow(p, h - 1))
                                                             : ppow(p, n - 1) - type * ppow(p, h - 1);
    } else {
        for (int j = 0; j < p; ++j)
            N[static_cast<std::size_t>(mod(j0 + j, p))] = ppow(p, n - 1) + type * ctx.eta(j) * ppow(p, (n + s - 1) / 2);
    }
    std::vector<i64> out;
    for (const auto& v : N) out.push_back(detail::to_i64(v, errc::hypothesis_violation, "value count"));
    return out;
}

inline std::vector<i64> value_distribution_fstar(int p, int n, int s, int type_fstar, int j0) {
    const FieldCtx ctx(p);
    detail::hypothesis(type_fstar == 1 || type_fstar == -1, "type of the dual must be + or -");
    detail::hypothesis(0 <= s && s <= n, "s must lie in 0..n");
    using detail::ppow;
    const int m = n - s;
    std::vector<rational> N(static_cast<std::size_t>(p));
    if (detail::even(m)) {
        for (int j = 0; j < p; ++j)
            N[static_cast<std::size_t>(j)] = j == mod(j0, p) ? ppow(p, m - 1) + type_fstar * (p - 1) * ppow(p, m / 2 - 1)
                                                             : ppow(p, m - 1) - type_fstar * ppow(p, m / 2 - 1);
    } else {
        for (int j = 0; j < p; ++j)
            N[static_cast<std::size_t>(mod(j0 + j, p))] = ppow(p, m - 1) + type_fstar * ctx.eta(j) * ppow(p, (m - 1) / 2);
    }
    std::vector<i64> out;
    for (const auto& v : N) out.push_back(detail::to_i64(v, errc::hypothesis_violation, "dual value count"));
    return out;
}

// c_j / d_j: points of B+(f) / B-(f) where f* takes the value j; e_j = c_j - d_j.
struct BplusCounts {
    std::vector<i64> c, d, e;
};

inline BplusCounts bplus_value_counts(int p, int n, int s, i64 k, int side0_fstar, int j0) {
    const FieldCtx ctx(p);
    detail::check_sign(side0_fstar, "side of 0 in B(f*)");
    detail::hypothesis(0 <= s && s <= n, "s must lie in 0..n");
    const i64 supp = checked_pow(p, n - s);
    detail::hypothesis(0 < k && k < supp, "k = #B+(f) must satisfy 0 < k < p^{n-s}");
    if (k % p != 0) fail(errc::divisibility_violation, "k = " + std::to_string(k) + " is not divisible by p");

    using detail::ppow;
    const rational kp = rational(k) / p;
    const int m = n - s;
    const bool plus = side0_fstar > 0;
    std::vector<rational> c(static_cast<std::size_t>(p)), d(static_cast<std::size_t>(p));
    auto at = [&](int j) { return static_cast<std::size_t>(mod(j0 + j, p)); };
    if (detail::even(n + s)) {
        const rational q = ppow(p, m / 2 - 1);
        c[at(0)] = plus ? kp + (p - 1) * q : kp;
        d[at(0)] = plus ? ppow(p, m - 1) - kp : ppow(p, m - 1) - (p - 1) * q - kp;
        for (int j = 1; j < p; ++j) {
            c[at(j)] = plus ? kp - q : kp;
            d[at(j)] = plus ? ppow(p, m - 1) - kp : ppow(p, m - 1) + q - kp;
        }
    } else {
        const rational q = ppow(p, (m - 1) / 2);
        c[at(0)] = kp;
        d[at(0)] = ppow(p, m - 1) - kp;
        for (int j = 1; j < p; ++j) {
            const int eta = ctx.eta(j);
            if (p % 4 == 1) {
                c[at(j)] = plus ? kp + eta * q : kp;
                d[at(j)] = plus ? ppow(p, m - 1) - kp : ppow(p, m - 1) - eta * q - kp;
            } else {
                c[at(j)] = plus ? kp : kp - eta * q;
                d[at(j)] = plus ? ppow(p, m - 1) + eta * q - kp : ppow(p, m - 1) - kp;
            }
        }
    }
    BplusCounts out;
    for (int j = 0; j < p; ++j) {
        out.c.push_back(detail::to_i64(c[static_cast<std::size_t>(j)], errc::hypothesis_violation, "c_j"));
        out.d.push_back(detail::to_i64(d[static_cast<std::size_t>(j)], errc::hypothesis_violation, "d_j"));
        out.e.push_back(out.c.back() - out.d.back());
        detail::hypothesis(out.c.back() >= 0 && out.d.back() >= 0, "negative class count; parameters are inconsistent");
    }
    return out;
}

namespace detail {

class DistributionBuilder {
public:
    void add(const rational& w, const rational& mult) {
        const i64 m = to_i64(mult, errc::hypothesis_violation, "multiplicity");
        if (m == 0) return;
        hypothesis(m > 0, "negative multiplicity");
        acc_[to_i64(w, errc::hypothesis_violation, "weight")] += m;
    }

    WeightDistribution finish(const rational& length, int dim, int divide_by) const {
        WeightDistribution wd;
        wd.dimension = dim;
        wd.length = to_i64(length / divide_by, errc::hypothesis_violation, "punctured length");
        for (const auto& [w, m] : acc_) {
            hypothesis(w % divide_by == 0, "weight not divisible by p-1 under puncturing");
            wd.counts[w / divide_by] += m;
        }
        return wd;
    }

private:
    std::map<i64, i64> acc_;
};

inline void check_common(const PredictionInput& in) {
    (void)FieldCtx(in.p);
    hypothesis(in.n >= 1, "n must be positive");
    check_sign(in.eps0_f, "side of 0 in B(f)");
    check_sign(in.eps0_fstar, "side of 0 in B(f*)");
}

} // namespace detail

inline WeightDistribution predict_weights_firstgen(const PredictionInput& in) {
    using detail::ppow;
    detail::check_common(in);
    detail::hypothesis(in.kind == CodeKind::first_gen, "prediction kind must be first-gen");
    detail::hypothesis(!in.punctured, "the first generic construction has no punctured variant");
    const int p = in.p, n = in.n, s = in.s;
    const bool ev = detail::even(n + s);
    detail::hypothesis(0 <= s && s <= (ev ? n - 2 : n - 1), ev ? "needs 0 <= s <= n-2 when n+s is even" : "needs 0 <= s <= n-1 when n+s is odd");
    const FieldCtx ctx(p);
    const BplusCounts cnt = bplus_value_counts(p, n, s, in.k, in.eps0_fstar, 0);

    const rational base = (p - 1) * ppow(p, n - 1);
    detail::DistributionBuilder b;
    b.add(0, 1);
    b.add(base, ppow(p, n + 1) - (p - 1) * ppow(p, n - s) - 1);
    for (int sign : {1, -1}) {
        for (int j = 0; j < p; ++j) {
            const i64 m = (sign > 0 ? cnt.c : cnt.d)[static_cast<std::size_t>(j)] * (p - 1);
            rational w;
            if (ev)
                w = j == 0 ? (p - 1) * (ppow(p, n - 1) - sign * ppow(p, (n + s) / 2 - 1)) : base + sign * ppow(p, (n + s) / 2 - 1);
            else
                w = j == 0 ? base : base - sign * ctx.eta(j) * ctx.eta(-1) * ppow(p, (n + s - 1) / 2);
            b.add(w, m);
        }
    }
    return b.finish(ppow(p, n) - 1, n + 1, 1);
}

inline WeightDistribution predict_weights_defset(const PredictionInput& in) {
    using detail::ppow;
    detail::check_common(in);
    detail::hypothesis(in.kind == CodeKind::defset_zero, "prediction kind must be defset-zero");
    const int p = in.p, n = in.n, s = in.s, e0 = in.eps0_f;
    const bool ev = detail::even(n + s);
    detail::hypothesis(0 <= s && s <= (ev ? n - 4 : n - 3), ev ? "needs 0 <= s <= n-4 when n+s is even" : "needs 0 <= s <= n-3 when n+s is odd");
    const FieldCtx ctx(p);
    const BplusCounts cnt = bplus_value_counts(p, n, s, in.k, in.eps0_fstar, 0);

    rational length, w_out;
    if (ev) {
        const rational q = ppow(p, (n + s) / 2 - 2);
        length = ppow(p, n - 1) + e0 * (p - 1) * ppow(p, (n + s) / 2 - 1) - 1;
        w_out = (p - 1) * (ppow(p, n - 2) + e0 * (p - 1) * q);
    } else {
        length = ppow(p, n - 1) - 1;
        w_out = (p - 1) * ppow(p, n - 2);
    }
    detail::DistributionBuilder b;
    b.add(0, 1);
    b.add(w_out, ppow(p, n) - ppow(p, n - s));
    for (int ea : {1, -1}) {
        for (int j = 0; j < p; ++j) {
            i64 m = (ea > 0 ? cnt.c : cnt.d)[static_cast<std::size_t>(j)];
            if (ea == e0 && j == 0) --m;  // a = 0 is the zero codeword
            rational w;
            if (ev) {
                const rational q = ppow(p, (n + s) / 2 - 2);
                w = j == 0 ? (p - 1) * (ppow(p, n - 2) + (e0 - ea) * (p - 1) * q)
                           : (p - 1) * (ppow(p, n - 2) + (e0 * (p - 1) + ea) * q);
            } else {
                w = j == 0 ? (p - 1) * ppow(p, n - 2)
                           : (p - 1) * (ppow(p, n - 2) - ea * ctx.eta(-1) * ppow(p, (n + s - 3) / 2) * ctx.eta(j));
            }
            b.add(w, m);
        }
    }
    return b.finish(length, n, in.punctured ? p - 1 : 1);
}

inline WeightDistribution predict_weights_quadratic_defset(const PredictionInput& in) {
    using detail::ppow;
    detail::check_common(in);
    detail::hypothesis(in.kind == CodeKind::defset_sq || in.kind == CodeKind::defset_nsq, "prediction kind must be defset-sq or defset-nsq");
    const int p = in.p, n = in.n, s = in.s, e0 = in.eps0_f;
    const bool ev = detail::even(n + s), sq = in.kind == CodeKind::defset_sq;
    detail::hypothesis(0 <= s && s <= (ev ? n - 4 : n - 3), ev ? "needs 0 <= s <= n-4 when n+s is even" : "needs 0 <= s <= n-3 when n+s is odd");
    const FieldCtx ctx(p);
    const BplusCounts cnt = bplus_value_counts(p, n, s, in.k, in.eps0_fstar, 0);

    const rational half = rational(p - 1) / 2, half2 = rational((p - 1) * (p - 1)) / 2;
    // p^{e/2} for even e; negative exponents are legitimate here, final weights are integers.
    auto rp = [p](int e) {
        require(e % 2 == 0, errc::invalid_argument, "half-integer power of p");
        return ppow(p, e / 2);
    };
    rational length, w_out;
    if (ev) {
        const rational q = rp(n + s - 4);
        length = half * (ppow(p, n - 1) - e0 * rp(n + s - 2));
        w_out = half2 * (ppow(p, n - 2) - e0 * q);
    } else {
        const int sg = sq ? 1 : -1;
        length = half * (ppow(p, n - 1) + sg * e0 * rp(n + s - 1));
        w_out = half2 * (ppow(p, n - 2) + sg * e0 * rp(n + s - 3));
    }
    detail::DistributionBuilder b;
    b.add(0, 1);
    b.add(w_out, ppow(p, n) - ppow(p, n - s));
    for (int ea : {1, -1}) {
        for (int j = 0; j < p; ++j) {
            i64 m = (ea > 0 ? cnt.c : cnt.d)[static_cast<std::size_t>(j)];
            if (ea == e0 && j == 0) --m;
            const int eta = ctx.eta(j);
            rational w;
            if (ev) {
                const rational q = rp(n + s - 4);
                if (j == 0)
                    w = half2 * (ppow(p, n - 2) + (ea - e0) * q);
                else
                    w = sq ? w_out - ea * half * q * (p * eta + 1) : w_out + ea * half * q * (p * eta - 1);
            } else {
                const rational r = rp(n + s - 3), q5 = rp(n + s - 5);
                if (j == 0)
                    w = sq ? half2 * (ppow(p, n - 2) + (e0 - ea) * r) : half2 * (ppow(p, n - 2) - (e0 - ea) * r);
                else
                    w = sq ? w_out + ea * half * q5 * (p + ctx.p_star() * eta) : w_out - ea * half * q5 * (p - ctx.p_star() * eta);
            }
            b.add(w, m);
        }
    }
    return b.finish(length, n, in.punctured ? p - 1 : 1);
}

inline WeightDistribution predict_weights(const PredictionInput& in) {
    switch (in.kind) {
    case CodeKind::first_gen: return predict_weights_firstgen(in);
    case CodeKind::defset_zero: return predict_weights_defset(in);
    default: return predict_weights_quadratic_defset(in);
    }
}

struct DualLowWeights {
    std::array<i64, 4> a{};  // A_1..A_4 of the dual code
    std::string label;       // "1".."4", ">=5", or "trivial" for the zero dual
    int dual_dimension = 0;
};

// Sequential solve of the first five power moments for A_1..A_4 of the dual.
inline DualLowWeights pless_dual_low_weights(const WeightDistribution& wd, int p) {
    require(wd.total() == checked_pow(p, wd.dimension), errc::invalid_argument, "weight distribution does not sum to p^k");
    const int k = wd.dimension;
    const rational P = p, n = wd.length;
    std::array<rational, 5> M;
    for (const auto& [w, c] : wd.counts) {
        rational pw = 1;
        for (int r = 0; r <= 4; ++r) {
            M[static_cast<std::size_t>(r)] += pw * c;
            pw *= w;
        }
    }
    auto scaled = [&](int r) { return M[static_cast<std::size_t>(r)] / detail::ppow(p, k - r); };

    const rational A1 = P * n - n - scaled(1);
    const rational A2 = (scaled(2) - (P - 1) * n * (P * n - n + 1) + (2 * P * n - P - 2 * n + 2) * A1) / 2;
    const rational T3 = (P - 1) * n * (P * P * n * n - 2 * P * n * n + 3 * P * n - P + n * n - 3 * n + 2);
    const rational U3 = 3 * P * P * n * n - 3 * P * P * n - 6 * P * n * n + 12 * P * n + P * P - 6 * P + 3 * n * n - 9 * n + 6;
    const rational A3 = (T3 - U3 * A1 + 6 * (P * n - P - n + 2) * A2 - scaled(3)) / 6;
    const rational T4 = (P - 1) * n *
                        (P * P * P * n * n * n - 3 * P * P * n * n * n + 6 * P * P * n * n - 4 * P * P * n + P * P + 3 * P * n * n * n -
                         12 * P * n * n + 15 * P * n - 6 * P - n * n * n + 6 * n * n - 11 * n + 6);
    const rational U4 = 4 * P * P * P * n * n * n - 6 * P * P * P * n * n + 4 * P * P * P * n - P * P * P - 12 * P * P * n * n * n +
                        36 * P * P * n * n - 38 * P * P * n + 14 * P * P + 12 * P * n * n * n - 54 * P * n * n + 78 * P * n - 36 * P -
                        4 * n * n * n + 24 * n * n - 44 * n + 24;
    const rational V4 = 12 * P * P * n * n - 24 * P * P * n + 14 * P * P - 24 * P * n * n + 84 * P * n - 72 * P + 12 * n * n - 60 * n + 72;
    const rational W4 = 24 * P * n - 36 * P - 24 * n + 72;
    const rational A4 = (scaled(4) - T4 + U4 * A1 - V4 * A2 + W4 * A3) / 24;

    DualLowWeights out;
    out.dual_dimension = static_cast<int>(wd.length - k);
    const std::array<rational, 4> sol{A1, A2, A3, A4};
    for (std::size_t i = 0; i < 4; ++i) {
        if (denominator(sol[i]) != 1) fail(errc::non_integral_solution, "A_" + std::to_string(i + 1) + " of the dual is not an integer");
        if (sol[i] < 0) fail(errc::negative_solution, "A_" + std::to_string(i + 1) + " of the dual is negative");
        out.a[i] = detail::to_i64(sol[i], errc::non_integral_solution, "dual count");
    }
    if (out.dual_dimension == 0) {
        out.label = "trivial";
    } else {
        out.label = ">=5";
        for (std::size_t i = 0; i < 4; ++i)
            if (out.a[i] > 0) {
                out.label = std::to_string(i + 1);
                break;
            }
    }
    return out;
}

struct MinimalityVerdict {
    bool minimal = false;  // sufficient condition only
    i64 wmin = 0;
    i64 wmax = 0;
};

inline MinimalityVerdict minimality_check(const WeightDistribution& wd, int p) {
    const auto lo = wd.min_weight(), hi = wd.max_weight();
    require(lo.has_value(), errc::invalid_argument, "zero code has no minimality verdict");
    return {static_cast<i128>(*lo) * p > static_cast<i128>(*hi) * (p - 1), *lo, *hi};
}

struct BoundReport {
    i64 singleton_defect = 0;
    bool mds = false;
    bool amds = false;
    bool sphere_packing_ok = false;
};

inline BoundReport bound_checks(i64 length, i64 dimension, i64 d, int p) {
    require(length >= 1 && dimension >= 0 && dimension <= length && d >= 1, errc::invalid_argument, "invalid code parameters");
    BoundReport r;
    r.singleton_defect = length - dimension + 1 - d;
    r.mds = r.singleton_defect == 0;
    r.amds = r.singleton_defect == 1;
    bigint volume = 0, binom = 1, pw = 1;
    for (i64 j = 0; j <= (d - 1) / 2; ++j) {
        if (j > 0) {
            binom = binom * (length - j + 1) / j;
            pw *= p - 1;
        }
        volume += binom * pw;
    }
    bigint space = 1;
    for (i64 i = 0; i < length - dimension; ++i) space *= p;
    r.sphere_packing_ok = space >= volume;
    return r;
}

} // namespace plateau
