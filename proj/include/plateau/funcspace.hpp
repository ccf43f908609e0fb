#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "plateau/field.hpp"

namespace plateau {

// p^n, rejecting shapes whose p^{n+1} would not fit in 64 bits.
inline i64 domain_size(int p, int n) {
    require(n >= 1, errc::invalid_argument, "n must be at least 1");
    checked_pow(p, n + 1);
    return checked_pow(p, n);
}

// Big-endian: x_1 is the most significant digit.
inline i64 encode_point(int p, int n, const std::vector<int>& x) {
    require(static_cast<int>(x.size()) == n, errc::invalid_argument, "point has wrong number of coordinates");
    i64 idx = 0;
    for (int d : x) {
        require(d >= 0 && d < p, errc::invalid_argument, "coordinate out of range");
        idx = idx * p + d;
    }
    return idx;
}

inline std::vector<int> decode_point(int p, int n, i64 index) {
    require(index >= 0 && index < domain_size(p, n), errc::invalid_argument, "point index out of range");
    std::vector<int> x(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        x[static_cast<std::size_t>(i)] = static_cast<int>(index % p);
        index /= p;
    }
    return x;
}

inline int dot(int p, const std::vector<int>& a, const std::vector<int>& x) {
    require(a.size() == x.size(), errc::invalid_argument, "dot product of vectors of different lengths");
    i64 s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += i64(a[i]) * x[i];
    return static_cast<int>(mod(s, p));
}

// out[x] = a . x for every x in F_p^n, built digit by digit in O(p^n).
inline void dot_row(int p, int n, const std::vector<int>& a, std::vector<int>& out) {
    out.assign(static_cast<std::size_t>(domain_size(p, n)), 0);
    std::size_t len = 1;
    for (int i = 0; i < n; ++i) {
        for (std::size_t e = len; e-- > 0;) {
            const int base = out[e];
            for (int t = 0; t < p; ++t) out[e * p + t] = (base + a[static_cast<std::size_t>(i)] * t) % p;
        }
        len *= static_cast<std::size_t>(p);
    }
}

// Index of a*x, where x is given by its index.
inline i64 scale_index(int p, int n, i64 index, i64 a) {
    i64 out = 0, w = 1;
    for (int i = 0; i < n; ++i) {
        out += mod((index % p) * a, p) * w;
        index /= p;
        w *= p;
    }
    return out;
}

struct Monomial {
    int coeff = 1;
    std::vector<int> exps;

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct PolyExpr {
    int p = 3;
    int n = 1;
    std::vector<Monomial> monomials;
};

struct FunctionTable {
    int p = 3;
    int n = 1;
    std::vector<int> values;

    i64 size() const noexcept { return static_cast<i64>(values.size()); }
    int operator[](i64 x) const { return values[static_cast<std::size_t>(x)]; }
};

namespace detail {

class PolyParser {
public:
    PolyParser(std::string_view src, int p, int n) : p_(p), n_(n) {
        for (std::size_t i = 0; i < src.size(); ++i)
            if (!std::isspace(static_cast<unsigned char>(src[i]))) toks_.push_back({src[i], i});
    }

    PolyExpr parse() {
        PolyExpr e{p_, n_, {}};
        e.monomials.push_back(term(1));
        while (pos_ < toks_.size()) {
            const char c = toks_[pos_].c;
            if (c != '+' && c != '-') error("expected '+' or '-'");
            ++pos_;
            e.monomials.push_back(term(c == '-' ? -1 : 1));
        }
        return e;
    }

private:
    struct Tok {
        char c;
        std::size_t at;
    };

    [[noreturn]] void error(const std::string& msg) const {
        const std::size_t at = pos_ < toks_.size() ? toks_[pos_].at : (toks_.empty() ? 0 : toks_.back().at + 1);
        throw parse_error(at, msg);
    }

    bool peek(char c) const { return pos_ < toks_.size() && toks_[pos_].c == c; }

    i64 uint() {
        if (pos_ >= toks_.size() || !std::isdigit(static_cast<unsigned char>(toks_[pos_].c))) error("expected digits");
        i64 v = 0;
        while (pos_ < toks_.size() && std::isdigit(static_cast<unsigned char>(toks_[pos_].c))) {
            if (v > (std::numeric_limits<i64>::max() - 9) / 10) error("integer literal too large");
            v = v * 10 + (toks_[pos_].c - '0');
            ++pos_;
        }
        return v;
    }

    Monomial term(int sign) {
        const std::size_t start = pos_ < toks_.size() ? toks_[pos_].at : 0;
        Monomial m{1, std::vector<int>(static_cast<std::size_t>(n_), 0)};
        i64 coeff = 1;
        if (pos_ < toks_.size() && std::isdigit(static_cast<unsigned char>(toks_[pos_].c))) {
            coeff = uint() % p_;
            if (!peek('*')) error("expected '*' after coefficient");
            ++pos_;
        }
        factor(m);
        while (peek('*')) {
            ++pos_;
            factor(m);
        }
        coeff = mod(sign * coeff, p_);
        if (coeff == 0) throw error_t(errc::zero_coefficient, "coefficient is zero mod p in term at position " + std::to_string(start));
        m.coeff = static_cast<int>(coeff);
        return m;
    }

    void factor(Monomial& m) {
        if (!peek('x')) error("expected variable 'x<i>'");
        ++pos_;
        const std::size_t var_at = pos_ < toks_.size() ? toks_[pos_].at : 0;
        const i64 v = uint();
        if (v < 1 || v > n_)
            throw parse_error(var_at, "variable index " + std::to_string(v) + " outside 1.." + std::to_string(n_));
        i64 e = 1;
        if (peek('^')) {
            ++pos_;
            e = uint();
        }
        const i64 total = i64(m.exps[static_cast<std::size_t>(v - 1)]) + e;
        if (total > std::numeric_limits<int>::max()) error("exponent too large");
        m.exps[static_cast<std::size_t>(v - 1)] = static_cast<int>(total);
    }

    using error_t = plateau::error;

    int p_, n_;
    std::vector<Tok> toks_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline PolyExpr parse_poly(std::string_view src, int p, int n) {
    (void)FieldCtx(p);
    domain_size(p, n);
    return detail::PolyParser(src, p, n).parse();
}

inline std::string to_string(const PolyExpr& e) {
    std::ostringstream os;
    for (std::size_t t = 0; t < e.monomials.size(); ++t) {
        const Monomial& m = e.monomials[t];
        if (t) os << '+';
        bool first = true;
        if (m.coeff != 1) {
            os << m.coeff;
            first = false;
        }
        bool any_var = false;
        for (std::size_t i = 0; i < m.exps.size(); ++i) {
            if (m.exps[i] == 0) continue;
            if (!first) os << '*';
            os << 'x' << (i + 1);
            if (m.exps[i] != 1) os << '^' << m.exps[i];
            first = false;
            any_var = true;
        }
        // A constant term still needs a factor under the grammar.
        if (!any_var) os << (first ? "" : "*") << "x1^0";
    }
    return os.str();
}

// Exponents e >= 1 reduce to 1 + (e-1) mod (p-1), which is exact on all of F_p.
inline FunctionTable eval_to_table(const PolyExpr& e) {
    const int p = e.p, n = e.n;
    const i64 N = domain_size(p, n);
    std::vector<std::vector<int>> pw(static_cast<std::size_t>(p), std::vector<int>(static_cast<std::size_t>(p), 1));
    for (int v = 0; v < p; ++v)
        for (int k = 1; k < p; ++k) pw[v][k] = pw[v][k - 1] * v % p;
    auto reduce = [p](int ex) { return ex == 0 ? 0 : 1 + (ex - 1) % (p - 1); };

    FunctionTable f{p, n, std::vector<int>(static_cast<std::size_t>(N), 0)};
    std::vector<int> x(static_cast<std::size_t>(n), 0);
    for (i64 idx = 0; idx < N; ++idx) {
        i64 acc = 0;
        for (const Monomial& m : e.monomials) {
            i64 t = m.coeff;
            for (int i = 0; i < n && t != 0; ++i) t = t * pw[x[i]][reduce(m.exps[i])] % p;
            acc += t;
        }
        f.values[static_cast<std::size_t>(idx)] = static_cast<int>(acc % p);
        for (int i = n - 1; i >= 0; --i) {
            if (++x[i] < p) break;
            x[i] = 0;
        }
    }
    return f;
}

inline FunctionTable read_table(std::istream& in) {
    FunctionTable f;
    if (!(in >> f.p >> f.n)) fail(errc::io_error, "table header must be \"p n\"");
    (void)FieldCtx(f.p);
    const i64 N = domain_size(f.p, f.n);
    f.values.resize(static_cast<std::size_t>(N));
    for (i64 i = 0; i < N; ++i) {
        i64 v;
        if (!(in >> v)) fail(errc::io_error, "table has fewer than p^n values");
        require(v >= 0 && v < f.p, errc::io_error, "table value out of range at position " + std::to_string(i));
        f.values[static_cast<std::size_t>(i)] = static_cast<int>(v);
    }
    std::string rest;
    if (in >> rest) fail(errc::io_error, "table has more than p^n values");
    return f;
}

inline void write_table(std::ostream& out, const FunctionTable& f) {
    out << f.p << ' ' << f.n << '\n';
    for (std::size_t i = 0; i < f.values.size(); ++i) out << (i ? " " : "") << f.values[i];
    out << '\n';
}

inline FunctionTable load_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::io_error, "cannot open table file " + path);
    return read_table(in);
}

} // namespace plateau
