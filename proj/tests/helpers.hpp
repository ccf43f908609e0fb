#pragma once

#include <string>
#include <vector>

#include "plateau/report.hpp"

namespace testing_support {

struct RefFunction {
    int p;
    int n;
    std::string poly;
};

// Non-weakly regular functions that are homogeneous with a bent-relative dual.
inline const std::vector<RefFunction>& nwrf_functions() {
    static const std::vector<RefFunction> v{
        {3, 5, "2*x1^2*x4^2+2*x1^2+x2^2+x3*x4"},
        {3, 5, "x1^2*x4^2+x1^2+x2^2+x3*x4"},
        {3, 4, "2*x1^2*x4^2+2*x1^2+x2^2+x3*x4"},
        {3, 4, "x1^2*x4^2+x1^2+x2^2+x3*x4"},
        {3, 5, "x1^2*x5^2+x1^2+x2^2+x3^2+x4*x5"},
        {5, 4, "x1^2*x3^4+x1^2+x2*x3"},
        {5, 4, "4*x1^2*x3^4+2*x1^2+x2*x3"},
        {5, 5, "x1^2*x5^4+x1^2+x2^2+x3^2+x4*x5"},
        {5, 5, "4*x1^2*x5^4+2*x1^2+x2^2+x3^2+x4*x5"},
    };
    return v;
}

inline plateau::FunctionAnalysis analyzed(const RefFunction& r) {
    return plateau::analyze_function(plateau::eval_to_table(plateau::parse_poly(r.poly, r.p, r.n)), 1);
}

inline std::string label(const RefFunction& r) { return "F" + std::to_string(r.p) + "^" + std::to_string(r.n) + " " + r.poly; }

} // namespace testing_support
