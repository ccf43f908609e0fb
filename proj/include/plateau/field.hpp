#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "plateau/error.hpp"

namespace plateau {

using i64 = std::int64_t;
__extension__ using i128 = __int128;

inline i64 mod(i64 a, i64 p) {
    i64 r = a % p;
    return r < 0 ? r + p : r;
}

inline bool is_prime(i64 p) {
    if (p < 2) return false;
    for (i64 d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Throws errc::overflow instead of wrapping.
inline i64 checked_pow(i64 base, int exp) {
    require(exp >= 0, errc::invalid_argument, "negative exponent");
    i64 r = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && (r > std::numeric_limits<i64>::max() / base || r < std::numeric_limits<i64>::min() / base))
            fail(errc::overflow, "integer power overflows 64 bits");
        r *= base;
    }
    return r;
}

inline i64 pow_mod(i64 a, i64 e, i64 p) {
    i64 r = 1 % p;
    a = mod(a, p);
    while (e > 0) {
        if (e & 1) r = static_cast<i64>(static_cast<i128>(r) * a % p);
        a = static_cast<i64>(static_cast<i128>(a) * a % p);
        e >>= 1;
    }
    return r;
}

inline i64 narrow(i128 v) {
    if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
        fail(errc::overflow, "value exceeds 64-bit range");
    return static_cast<i64>(v);
}

// F_p with its quadratic character. Immutable after construction.
class FieldCtx {
public:
    explicit FieldCtx(int p) : p_(p) {
        require(p >= 3 && is_prime(p), errc::invalid_argument, "p must be an odd prime, got " + std::to_string(p));
        eta_.assign(p, -1);
        eta_[0] = 0;
        for (int a = 1; a < p; ++a) eta_[static_cast<std::size_t>(i64(a) * a % p)] = 1;
        for (int a = 1; a < p; ++a) (eta_[a] == 1 ? sq_ : nsq_).push_back(a);
        inv_.assign(p, 0);
        for (int a = 1; a < p; ++a) inv_[a] = static_cast<int>(pow_mod(a, p - 2, p));
        p_star_ = eta_[p - 1] * p;
    }

    int p() const noexcept { return p_; }
    int eta(i64 a) const { return eta_[static_cast<std::size_t>(mod(a, p_))]; }
    i64 p_star() const noexcept { return p_star_; }
    const std::vector<int>& squares() const noexcept { return sq_; }
    const std::vector<int>& nonsquares() const noexcept { return nsq_; }
    int inv(i64 a) const {
        i64 r = mod(a, p_);
        require(r != 0, errc::invalid_argument, "zero has no inverse");
        return inv_[static_cast<std::size_t>(r)];
    }

private:
    int p_;
    i64 p_star_ = 0;
    std::vector<int> eta_, sq_, nsq_, inv_;
};

inline int quadratic_character(const FieldCtx& ctx, i64 a) {
    require(a >= 0 && a < ctx.p(), errc::invalid_argument, "element out of range");
    return ctx.eta(a);
}

// Element of Z[xi_p] as sum c_j xi^j with c_{p-1} = 0.
class CycInt {
public:
    explicit CycInt(int p) : c_(static_cast<std::size_t>(check_p(p)), 0) {}

    int p() const noexcept { return static_cast<int>(c_.size()); }
    const std::vector<i64>& coeffs() const noexcept { return c_; }
    i64 operator[](std::size_t j) const { return c_[j]; }

    bool is_zero() const noexcept {
        for (i64 v : c_)
            if (v != 0) return false;
        return true;
    }
    bool is_rational() const noexcept {
        for (std::size_t j = 1; j < c_.size(); ++j)
            if (c_[j] != 0) return false;
        return true;
    }

    friend bool operator==(const CycInt& a, const CycInt& b) { return a.c_ == b.c_; }

    friend CycInt operator+(const CycInt& a, const CycInt& b) {
        same_p(a, b);
        CycInt r(a.p());
        for (std::size_t j = 0; j < a.c_.size(); ++j) r.c_[j] = a.c_[j] + b.c_[j];
        return r;
    }
    friend CycInt operator-(const CycInt& a, const CycInt& b) {
        same_p(a, b);
        CycInt r(a.p());
        for (std::size_t j = 0; j < a.c_.size(); ++j) r.c_[j] = a.c_[j] - b.c_[j];
        return r;
    }
    friend CycInt operator-(const CycInt& a) {
        CycInt r(a.p());
        for (std::size_t j = 0; j < a.c_.size(); ++j) r.c_[j] = -a.c_[j];
        return r;
    }
    friend CycInt operator*(i64 s, const CycInt& a) {
        CycInt r(a.p());
        for (std::size_t j = 0; j < a.c_.size(); ++j) r.c_[j] = narrow(static_cast<i128>(s) * a.c_[j]);
        return r;
    }

    // Subtracting the last entry from every entry is the reduction by 1 + xi + ... + xi^{p-1} = 0.
    template <class T>
    static CycInt from_raw(const std::vector<T>& raw) {
        CycInt r(static_cast<int>(raw.size()));
        const T last = raw.back();
        for (std::size_t j = 0; j < raw.size(); ++j) r.c_[j] = narrow(static_cast<i128>(raw[j]) - last);
        return r;
    }

    static CycInt rational(int p, i64 v) {
        CycInt r(p);
        r.c_[0] = v;
        return r;
    }

    // xi^j
    static CycInt root(int p, i64 j) {
        std::vector<i64> raw(static_cast<std::size_t>(check_p(p)), 0);
        raw[static_cast<std::size_t>(mod(j, p))] = 1;
        return from_raw(raw);
    }

private:
    static int check_p(int p) {
        require(p >= 3 && p % 2 == 1, errc::invalid_argument, "cyclotomic order must be an odd prime");
        return p;
    }
    static void same_p(const CycInt& a, const CycInt& b) {
        require(a.p() == b.p(), errc::invalid_argument, "mismatched cyclotomic orders");
    }

    std::vector<i64> c_;
};

inline CycInt cyc_canonicalize(int p, const std::vector<i64>& raw) {
    require(static_cast<i64>(raw.size()) == p, errc::invalid_argument, "raw vector length must equal p");
    return CycInt::from_raw(raw);
}

inline CycInt cyc_mul(const CycInt& x, const CycInt& y) {
    require(x.p() == y.p(), errc::invalid_argument, "mismatched cyclotomic orders");
    const int p = x.p();
    std::vector<i128> acc(static_cast<std::size_t>(p), 0);
    for (int i = 0; i < p; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < p; ++j) acc[static_cast<std::size_t>((i + j) % p)] += static_cast<i128>(x[i]) * y[j];
    }
    return CycInt::from_raw(acc);
}

// sigma_a : xi -> xi^a.
inline CycInt galois_apply(const CycInt& x, i64 a) {
    const int p = x.p();
    require(mod(a, p) != 0, errc::invalid_argument, "Galois automorphism index must be nonzero mod p");
    std::vector<i64> raw(static_cast<std::size_t>(p), 0);
    for (int j = 0; j < p; ++j) raw[static_cast<std::size_t>(mod(a * j, p))] = x[j];
    return CycInt::from_raw(raw);
}

inline CycInt conj(const CycInt& x) { return galois_apply(x, x.p() - 1); }

// Sum of all Galois conjugates; a rational integer.
inline i64 trace(const CycInt& x) {
    i128 t = static_cast<i128>(x.p() - 1) * x[0];
    for (int j = 1; j < x.p(); ++j) t -= x[j];
    return narrow(t);
}

inline CycInt gauss_sum(const FieldCtx& ctx) {
    std::vector<i64> raw(static_cast<std::size_t>(ctx.p()), 0);
    for (int y = 1; y < ctx.p(); ++y) raw[static_cast<std::size_t>(y)] = ctx.eta(y);
    return CycInt::from_raw(raw);
}

enum class Parity { even, odd };

enum class WalshForm { zero, root, gauss, no_match };

struct Recognition {
    WalshForm form = WalshForm::no_match;
    int sign = 0;
    int j = -1;

    bool matched() const noexcept { return form == WalshForm::root || form == WalshForm::gauss; }
};

// Precomputes the 2p admissible values sign * magnitude * (1 or G) * xi^j for one magnitude.
class WalshFormMatcher {
public:
    WalshFormMatcher(const FieldCtx& ctx, i64 magnitude, Parity parity) : p_(ctx.p()), parity_(parity) {
        require(magnitude >= 1, errc::invalid_argument, "magnitude must be positive");
        i64 m = magnitude;
        while (m % p_ == 0) m /= p_;
        require(m == 1, errc::invalid_argument, "magnitude must be a power of p");
        const CycInt base = parity == Parity::even ? CycInt::rational(p_, 1) : gauss_sum(ctx);
        for (int sign : {1, -1})
            for (int j = 0; j < p_; ++j)
                candidates_.push_back({(sign * magnitude) * cyc_mul(base, CycInt::root(p_, j)), sign, j});
    }

    Recognition match(const CycInt& w) const {
        require(w.p() == p_, errc::invalid_argument, "mismatched cyclotomic orders");
        if (w.is_zero()) return {WalshForm::zero, 0, -1};
        for (const auto& c : candidates_)
            if (c.value == w) return {parity_ == Parity::even ? WalshForm::root : WalshForm::gauss, c.sign, c.j};
        return {};
    }

private:
    struct Candidate {
        CycInt value;
        int sign;
        int j;
    };
    int p_;
    Parity parity_;
    std::vector<Candidate> candidates_;
};

inline Recognition recognize_walsh_form(const CycInt& w, i64 magnitude, Parity parity) {
    return WalshFormMatcher(FieldCtx(w.p()), magnitude, parity).match(w);
}

} // namespace plateau
