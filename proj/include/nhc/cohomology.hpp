// Bigraded degree-2 local cohomology lengths and the theorem checkers.
//
// The length of the degree-(r,s) component is computed up to three ways:
//   direct:     λ( E(r+k,s+k) / ((k·a + E(r,s+k)) ∪ (k·b + E(r+k,s))) ) for a
//               certified good pair (a,b), stabilized over k,
//   formula:    [e2(I) + e2(J) - e2(IJ)] + g_r + h_s + r·s·e(I|J) - H(r,s),
//   difference: P(r,s) - H(r,s).
// All three must agree wherever they are defined; the checkers report
// agreement or disagreement between the conditions of the supported
// statements, never deciding an instance by a single route.
#pragma once

#include "nhc/jointred.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nhc {

struct CohomologyCell {
    long long r = 0, s = 0;
    std::optional<Int> lengthDirect; // absent without a good pair / for ingested tables
    std::optional<long long> kStab;  // first k of the stabilized direct count
    Int lengthFormula;
    Int lengthDifference;
    bool agrees() const {
        return (!lengthDirect || *lengthDirect == lengthFormula) &&
               lengthFormula == lengthDifference;
    }
};

// Stable quotient count and the first k at which it stabilized.
std::pair<Int, long long> h2_length_direct(const NormalFiltration& F,
                                           const JointReductionCertificate& cert, long long r,
                                           long long s, long long kcap = 12);
Int h2_length_formula(const CoeffBundle& B, const HilbertTable& T, long long r, long long s);
// P - H on [0,Rv] x [0,Sv]; every entry must be nonnegative.
std::map<std::pair<long long, long long>, Int> difference_table(const HilbertTable& T,
                                                                const BhattacharyaPoly& P,
                                                                long long Rv, long long Sv);
// All routes per cell, row-major over [0,Rv] x [0,Sv]; the direct route is
// included when a good certificate is given and the table carries a
// filtration.
std::vector<CohomologyCell> cohomology_table(const HilbertTable& T, const CoeffBundle& B,
                                             const JointReductionCertificate* cert, long long Rv,
                                             long long Sv, long long kcap = 12);

struct ConditionReport {
    std::string name;
    std::optional<bool> verdict; // absent when the condition was skipped
    std::string detail;          // values, witnesses, or the reason for skipping
};

struct TheoremReport {
    std::string id;
    std::string instance;
    std::vector<ConditionReport> conditions;
    bool ok = false;     // evaluated conditions are consistent with the statement
    std::string summary; // one-line outcome
};

struct TheoremParams {
    long long r0 = 0, s0 = 0; // base cell for the thm4 check
    long long Rv = 6, Sv = 6; // verification window for cells and module equalities
    long long kcap = 12;
    std::optional<JointReductionCertificate> cert; // certified good pair when available
    std::string instance;                          // free-form instance label for the report
};

// id ∈ {thm4, rees7, marley, e2max, vanishing14}
TheoremReport check_theorem(const std::string& id, const HilbertTable& T, const CoeffBundle& B,
                            const TheoremParams& params);

} // namespace nhc
