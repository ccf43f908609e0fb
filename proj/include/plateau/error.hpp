#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace plateau {

enum class errc {
    invalid_argument,
    parse_error,
    zero_coefficient,
    io_error,
    overflow,
    not_plateaued,
    dual_not_bent_relative,
    hypothesis_violation,
    divisibility_violation,
    empty_defining_set,
    not_scaling_closed,
    dimension_collapse,
    budget_exceeded,
    not_an_access_set,
    non_integral_solution,
    negative_solution,
};

// Stable identifiers; these appear in CLI output and must not change.
constexpr std::string_view errc_name(errc c) noexcept {
    switch (c) {
    case errc::invalid_argument: return "invalid-argument";
    case errc::parse_error: return "parse-error";
    case errc::zero_coefficient: return "zero-coefficient";
    case errc::io_error: return "io-error";
    case errc::overflow: return "overflow";
    case errc::not_plateaued: return "not-plateaued";
    case errc::dual_not_bent_relative: return "dual-not-bent-relative";
    case errc::hypothesis_violation: return "hypothesis-violation";
    case errc::divisibility_violation: return "divisibility-violation";
    case errc::empty_defining_set: return "empty-defining-set";
    case errc::not_scaling_closed: return "not-scaling-closed";
    case errc::dimension_collapse: return "dimension-collapse";
    case errc::budget_exceeded: return "budget-exceeded";
    case errc::not_an_access_set: return "not-an-access-set";
    case errc::non_integral_solution: return "non-integral-solution";
    case errc::negative_solution: return "negative-solution";
    }
    return "unknown";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

class parse_error : public error {
public:
    parse_error(std::size_t pos, const std::string& what)
        : error(errc::parse_error, what + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const noexcept { return pos_; }

private:
    std::size_t pos_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
    if (!cond) fail(code, what);
}

} // namespace plateau
