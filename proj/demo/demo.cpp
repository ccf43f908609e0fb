// Walks one function through the library: spectrum, profile, a code, its
// predicted distribution, and a share/recover round on the derived scheme.
#include <iostream>

#include "plateau/report.hpp"

using namespace plateau;

int main() {
    const FunctionTable f = eval_to_table(parse_poly("2*x1^2*x4^2+2*x1^2+x2^2+x3*x4", 3, 5));
    const FunctionAnalysis a = analyze_function(f, 1);
    const PlateauProfile& pr = a.profile;
    std::cout << "s = " << pr.s << ", support " << pr.supp.size() << ", " << to_string(pr.regularity) << ", k = " << pr.k
              << ", 0 in B" << sign_label(pr.eps0) << "(f)\n";

    const CodeSpec spec = build_code(f, CodeKind::defset_zero, true);
    const WeightDistribution wd = weight_distribution_exhaustive(spec, f);
    std::cout << "punctured zero-set code [" << wd.length << "," << wd.dimension << "," << *wd.min_weight() << "]: " << enumerator_string(wd) << '\n';

    const PredictionOutcome pred = predict_for(a, CodeKind::defset_zero, true, wd);
    std::cout << "closed-form prediction: " << pred.status << '\n';

    const DualLowWeights dual = pless_dual_low_weights(wd, f.p);
    std::cout << "dual [" << wd.length << "," << dual.dual_dimension << "," << dual.label << "]\n";

    const SchemeCtx ctx = make_scheme(spec, f);
    const std::vector<int> shares = massey_deal(ctx, 2, std::vector<int>(deal_randomness(ctx), 1));
    const AccessStructure as = minimal_access_sets(ctx);
    std::vector<i64> group;
    for (auto j = as.sets.front().find_first(); j != boost::dynamic_bitset<>::npos; j = as.sets.front().find_next(j)) group.push_back(static_cast<i64>(j) + 1);
    std::cout << as.sets.size() << " minimal access sets; a group of " << group.size() << " recovers secret " << massey_recover(ctx, group, shares) << '\n';
    return pred.status == "match" ? 0 : 1;
}
