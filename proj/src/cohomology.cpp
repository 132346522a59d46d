#include "nhc/cohomology.hpp"

#include "nhc/errors.hpp"

#include <algorithm>

namespace nhc {

namespace {

std::string cell_str(long long r, long long s) {
    return "(" + std::to_string(r) + ", " + std::to_string(s) + ")";
}

LatticePoint scaled(long long k, const LatticePoint& p) { return LatticePoint{k * p.a, k * p.b}; }

struct GapScan {
    bool ok = true;
    long long r = 0, s = 0;
    LatticePoint witness{0, 0};
};

// Joint equality probed at every cell of [rLo,rHi] x [sLo,sHi].
GapScan scan_joint(const NormalFiltration& F, const LatticePoint& a, const LatticePoint& b,
                   long long rLo, long long sLo, long long rHi, long long sHi) {
    for (long long r = rLo; r <= rHi; ++r)
        for (long long s = sLo; s <= sHi; ++s)
            if (const auto gap = joint_equality_gap(F, a, b, r, s))
                return {false, r, s, *gap};
    return {};
}

const NormalFiltration* direct_route(const HilbertTable& T, const TheoremParams& p) {
    if (!p.cert || !p.cert->isGood) return nullptr;
    return T.filtration();
}

std::string skipped_reason() { return "skipped: numerical route only (no certified good pair)"; }

// ok / summary for an equivalence-type statement: all evaluated verdicts must
// coincide; both-true and both-false are fine.
void finish_equivalence(TheoremReport& rep) {
    std::vector<bool> vals;
    for (const auto& c : rep.conditions)
        if (c.verdict) vals.push_back(*c.verdict);
    const bool agree =
        std::all_of(vals.begin(), vals.end(), [&](bool v) { return v == vals.front(); });
    rep.ok = vals.empty() || agree;
    if (!rep.ok) {
        rep.summary = "disagreement among the evaluated conditions";
    } else if (vals.size() <= 1) {
        rep.summary = vals.empty() ? "no condition evaluable"
                                   : std::string("only one condition evaluated (") +
                                         (vals.front() ? "true" : "false") + "); the rest skipped";
    } else {
        rep.summary = std::string("equivalence holds: all evaluated conditions ") +
                      (vals.front() ? "true" : "false");
    }
}

} // namespace

std::pair<Int, long long> h2_length_direct(const NormalFiltration& F,
                                           const JointReductionCertificate& cert, long long r,
                                           long long s, long long kcap) {
    if (!cert.isGood)
        throw input_error("the direct cohomology count needs a certified good pair");
    if (r < 0 || s < 0) throw input_error("cohomology degrees must be nonnegative");
    if (kcap < 2) throw input_error("the stabilization cap must be at least 2");
    const Semigroup2& S = F.semigroup();
    std::optional<Int> prev;
    for (long long k = 1; k <= kcap; ++k) {
        const LinearSet top = F.region(r + k, s + k).linear_set();
        const std::vector<LinearSet> parts = {
            translate_set(F.region(r, s + k).linear_set(), scaled(k, cert.a)),
            translate_set(F.region(r + k, s).linear_set(), scaled(k, cert.b))};
        const RayEntries entries = ray_entries_union(S, parts);
        if (!entries.t1 || !entries.t2)
            throw invariant_error(
                "the pair never reaches a ray direction, so the quotient at k=" +
                std::to_string(k) + " is infinite");
        const Int bound = complement_level_bound(S, entries, "cohomology quotient");
        const Int count = count_difference(S, top, parts, bound);
        if (prev) {
            if (count < *prev)
                throw invariant_error("direct quotient counts decreased from k=" +
                                      std::to_string(k - 1) + " to k=" + std::to_string(k) +
                                      " at " + cell_str(r, s));
            if (count == *prev) return {count, k - 1};
        }
        prev = std::move(count);
    }
    throw stabilization_error("direct cohomology count at " + cell_str(r, s) +
                              " did not stabilize by k=" + std::to_string(kcap) +
                              "; raise the k cap");
}

Int h2_length_formula(const CoeffBundle& B, const HilbertTable& T, long long r, long long s) {
    if (r < 0 || s < 0) throw input_error("cohomology degrees must be nonnegative");
    const Int val = (B.axisI.e2 + B.axisJ.e2 - B.e2IJ) + g_constant(T, B.poly, r) +
                    h_constant(T, B.poly, s) + B.poly.e11 * Int(r) * Int(s) - T.value(r, s);
    if (val < 0)
        throw invariant_error("formula length " + val.str() + " at " + cell_str(r, s) +
                              " is negative: bad fit or bad table");
    return val;
}

std::map<std::pair<long long, long long>, Int> difference_table(const HilbertTable& T,
                                                                const BhattacharyaPoly& P,
                                                                long long Rv, long long Sv) {
    if (Rv < 0 || Sv < 0 || Rv > T.rmax() || Sv > T.smax())
        throw input_error("difference window exceeds the table grid");
    std::map<std::pair<long long, long long>, Int> out;
    for (long long r = 0; r <= Rv; ++r)
        for (long long s = 0; s <= Sv; ++s) {
            Int d = P.eval(Int(r), Int(s)) - T.value(r, s);
            if (d < 0)
                throw invariant_error("difference " + d.str() + " at " + cell_str(r, s) +
                                      " is negative");
            out.emplace(std::make_pair(r, s), std::move(d));
        }
    return out;
}

std::vector<CohomologyCell> cohomology_table(const HilbertTable& T, const CoeffBundle& B,
                                             const JointReductionCertificate* cert, long long Rv,
                                             long long Sv, long long kcap) {
    const auto diffs = difference_table(T, B.poly, Rv, Sv);
    const NormalFiltration* F = T.filtration();
    const bool direct = cert != nullptr && cert->isGood && F != nullptr;
    std::vector<CohomologyCell> cells;
    cells.reserve(static_cast<size_t>((Rv + 1) * (Sv + 1)));
    for (long long r = 0; r <= Rv; ++r)
        for (long long s = 0; s <= Sv; ++s) {
            CohomologyCell c;
            c.r = r;
            c.s = s;
            c.lengthFormula = h2_length_formula(B, T, r, s);
            c.lengthDifference = diffs.at({r, s});
            if (direct) {
                auto [len, k] = h2_length_direct(*F, *cert, r, s, kcap);
                c.lengthDirect = std::move(len);
                c.kStab = k;
            }
            cells.push_back(std::move(c));
        }
    return cells;
}

TheoremReport check_theorem(const std::string& id, const HilbertTable& T, const CoeffBundle& B,
                            const TheoremParams& p) {
    if (p.Rv < 0 || p.Sv < 0 || p.Rv > T.rmax() || p.Sv > T.smax())
        throw input_error("check window exceeds the table grid");
    TheoremReport rep;
    rep.id = id;
    rep.instance = p.instance;
    const NormalFiltration* F = direct_route(T, p);

    if (id == "thm4") {
        if (p.r0 < 0 || p.s0 < 0 || p.r0 > p.Rv || p.s0 > p.Sv)
            throw input_error("base cell (r0, s0) must lie in the check window");
        ConditionReport c1{"condition (1)", std::nullopt, ""};
        const Int v = h2_length_formula(B, T, p.r0, p.s0);
        c1.verdict = (v == 0);
        c1.detail = "formula length " + v.str() + " at " + cell_str(p.r0, p.s0);
        if (v != 0) {
            for (const auto& [pr, ps] :
                 {std::make_pair(p.r0 + 1, p.s0), std::make_pair(p.r0, p.s0 + 1)}) {
                try {
                    c1.detail += "; formula length " + h2_length_formula(B, T, pr, ps).str() +
                                 " at " + cell_str(pr, ps);
                } catch (const std::exception&) {
                    c1.detail += "; value unavailable at " + cell_str(pr, ps);
                }
            }
        }
        rep.conditions.push_back(std::move(c1));

        ConditionReport c2{"condition (2)", std::nullopt, skipped_reason()};
        if (F) {
            const auto [len, k] = h2_length_direct(*F, *p.cert, p.r0, p.s0, p.kcap);
            c2.verdict = (len == 0);
            c2.detail = "direct length " + len.str() + " at " + cell_str(p.r0, p.s0) +
                        ", stable from k=" + std::to_string(k);
        }
        rep.conditions.push_back(std::move(c2));

        ConditionReport c3{"condition (3)", std::nullopt, skipped_reason()};
        if (F) {
            const auto scan =
                scan_joint(*F, p.cert->a, p.cert->b, p.r0 + 1, p.s0 + 1, p.Rv, p.Sv);
            c3.verdict = scan.ok;
            c3.detail = scan.ok ? "module equality verified at every cell of [" +
                                      std::to_string(p.r0 + 1) + ", " + std::to_string(p.Rv) +
                                      "] x [" + std::to_string(p.s0 + 1) + ", " +
                                      std::to_string(p.Sv) + "]"
                                : "module equality fails at " + cell_str(scan.r, scan.s) +
                                      ", generator " + to_string(scan.witness) + " uncovered";
        }
        rep.conditions.push_back(std::move(c3));
        finish_equivalence(rep);
        return rep;
    }

    if (id == "rees7") {
        ConditionReport c1{"condition (1)", std::nullopt, ""};
        const Int lhs = B.e2IJ, rhs = B.axisI.e2 + B.axisJ.e2;
        c1.verdict = (lhs == rhs);
        c1.detail = "e2(IJ) = " + lhs.str() + ", e2(I) + e2(J) = " + rhs.str();
        rep.conditions.push_back(std::move(c1));

        ConditionReport c2{"condition (2)", std::nullopt, skipped_reason()};
        if (F) {
            const auto [len, k] = h2_length_direct(*F, *p.cert, 0, 0, p.kcap);
            c2.verdict = (len == 0);
            c2.detail =
                "direct length " + len.str() + " at (0, 0), stable from k=" + std::to_string(k);
        }
        rep.conditions.push_back(std::move(c2));

        ConditionReport c3{"condition (3)", std::nullopt, skipped_reason()};
        if (F) {
            const auto scan = scan_joint(*F, p.cert->a, p.cert->b, 1, 1, p.Rv, p.Sv);
            c3.verdict = scan.ok;
            c3.detail = scan.ok
                            ? "joint equality verified at every cell of [1, " +
                                  std::to_string(p.Rv) + "] x [1, " + std::to_string(p.Sv) + "]"
                            : "joint equality fails at " + cell_str(scan.r, scan.s) +
                                  ", generator " + to_string(scan.witness) + " uncovered";
        }
        rep.conditions.push_back(std::move(c3));
        finish_equivalence(rep);
        return rep;
    }

    if (id == "marley") {
        bool allOk = true;
        for (const Axis ax : {Axis::I, Axis::J}) {
            const AxisPoly& P = ax == Axis::I ? B.axisI : B.axisJ;
            const char* name = ax == Axis::I ? "axis I" : "axis J";
            const long long nrn = normal_reduction_number(T, ax, P);
            const long long kmin = nrn - 1;
            const long long bound = ax == Axis::I ? T.rmax() : T.smax();
            std::optional<long long> firstBreak;
            for (long long n = kmin; n <= bound && !firstBreak; ++n) {
                const Int h = ax == Axis::I ? T.value(n, 0) : T.value(0, n);
                if (h != P.eval(Int(n))) firstBreak = n;
            }
            ConditionReport c{name, !firstBreak.has_value(), ""};
            c.detail = firstBreak
                           ? "equality first holds at k=" + std::to_string(kmin) +
                                 " but breaks again at n=" + std::to_string(*firstBreak)
                           : "reduction number bound " + std::to_string(nrn) +
                                 " certified: equality persists from k=" + std::to_string(kmin) +
                                 " through " + std::to_string(bound);
            allOk = allOk && *c.verdict;
            rep.conditions.push_back(std::move(c));
        }
        rep.ok = allOk;
        rep.summary = allOk ? "criterion consistent on both axes"
                            : "criterion violated: postulation does not persist";
        return rep;
    }

    if (id == "e2max") {
        const Int lhs = B.e2IJ;
        const Int rhs = std::max(B.axisI.e2, B.axisJ.e2);
        ConditionReport c{"inequality", lhs >= rhs,
                          "e2(IJ) = " + lhs.str() + ", max(e2(I), e2(J)) = " + rhs.str()};
        rep.ok = *c.verdict;
        rep.conditions.push_back(std::move(c));
        rep.summary = rep.ok ? "inequality holds" : "inequality violated";
        return rep;
    }

    if (id == "vanishing14") {
        ConditionReport c1{"condition (1)", B.e2IJ == 0, "e2(IJ) = " + B.e2IJ.str()};
        const bool vanishes = *c1.verdict;
        rep.conditions.push_back(std::move(c1));

        ConditionReport c2a{"condition (2a)", std::nullopt, skipped_reason()};
        if (F) {
            const auto scan = scan_joint(*F, p.cert->a, p.cert->b, 1, 1, p.Rv, p.Sv);
            c2a.verdict = scan.ok;
            c2a.detail = scan.ok ? "normal joint reduction number zero on [1, " +
                                       std::to_string(p.Rv) + "] x [1, " + std::to_string(p.Sv) +
                                       "]"
                                 : "joint equality fails at " + cell_str(scan.r, scan.s);
        }
        const std::optional<bool> jrn = c2a.verdict;
        rep.conditions.push_back(std::move(c2a));

        const long long nrnI = normal_reduction_number(T, Axis::I, B.axisI);
        const long long nrnJ = normal_reduction_number(T, Axis::J, B.axisJ);
        ConditionReport c2b{"condition (2b)", nrnI <= 1 && nrnJ <= 1,
                            "reduction number bounds: " + std::to_string(nrnI) + " for I, " +
                                std::to_string(nrnJ) + " for J"};
        const bool smallRed = *c2b.verdict;
        rep.conditions.push_back(std::move(c2b));

        // the combined right side: joint reduction number zero AND both
        // reduction numbers at most 1; decidable without a pair when the
        // reduction-number part already fails
        std::optional<bool> cond2;
        if (!smallRed)
            cond2 = false;
        else if (jrn)
            cond2 = *jrn && smallRed;

        bool ok = !cond2 || (vanishes == *cond2);
        std::string summary =
            !cond2 ? "condition (2) undecidable without a pair; condition (1) " +
                         std::string(vanishes ? "true" : "false")
                   : (ok ? std::string("equivalence holds: both sides ") +
                               (vanishes ? "true" : "false")
                         : "disagreement between condition (1) and condition (2)");

        ConditionReport c3{"length identity", std::nullopt,
                           "not applicable: e2(IJ) is nonzero"};
        ConditionReport c4{"polynomial splits", std::nullopt,
                           "not applicable: e2(IJ) is nonzero"};
        if (vanishes) {
            std::optional<std::pair<long long, long long>> bad;
            for (long long r = 0; r <= p.Rv && !bad; ++r)
                for (long long s = 0; s <= p.Sv && !bad; ++s)
                    if (T.value(r, s) !=
                        Int(r) * Int(s) * B.poly.e11 + T.value(r, 0) + T.value(0, s))
                        bad = {r, s};
            c3.verdict = !bad.has_value();
            c3.detail = bad ? "identity fails at " + cell_str(bad->first, bad->second)
                            : "H(r,s) = r*s*e(I|J) + H(r,0) + H(0,s) on [0, " +
                                  std::to_string(p.Rv) + "] x [0, " + std::to_string(p.Sv) + "]";

            const bool split = B.poly.e20 == B.axisI.e0 && B.poly.e10 == B.axisI.e1 &&
                               B.poly.e02 == B.axisJ.e0 && B.poly.e01 == B.axisJ.e1 &&
                               B.poly.e00 == B.axisI.e2 + B.axisJ.e2;
            c4.verdict = split;
            c4.detail = split ? "P(x,y) = P_I(x) + e(I|J)xy + P_J(y) coefficientwise"
                              : "bivariate coefficients do not split into the axis fits";
            if (!*c3.verdict || !split) {
                ok = false;
                summary = "the vanishing consequences fail on the window";
            }
        }
        rep.conditions.push_back(std::move(c3));
        rep.conditions.push_back(std::move(c4));
        rep.ok = ok;
        rep.summary = std::move(summary);
        return rep;
    }

    throw input_error("unknown check id: " + id +
                      " (expected thm4, rees7, marley, e2max or vanishing14)");
}

} // namespace nhc
