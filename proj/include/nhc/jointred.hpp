// Joint-reduction search and certification.
//
// A pair (a, b) with a in the closure of I and b in the closure of J is
// verified against finite windows of the filtration E(r,s) = closure(I^r J^s):
//   joint:  E(r,s) = (a + E(r-1,s)) ∪ (b + E(r,s-1)) on the upper window,
//   good:   additionally colon(E(r,s), a) = E(r-1,s) (and symmetrically for b)
//           down to a fixed negative slack in the free index,
//   jrnZero: the joint equality holds at every cell with r,s >= 1.
// Containments from the right-hand sides into E(r,s) hold automatically
// because the Newton regions add under products, so every check reduces to a
// finite inclusion of minimal generators. Certificates record the window
// checked; they certify the window, they are not proofs for all (r,s).
#pragma once

#include "nhc/hilbert.hpp"

#include <optional>
#include <string>

namespace nhc {

struct VerifyWindow {
    long long lower = 2; // base of the upper window, usually the fit's stabilization N
    long long Rv = 6;
    long long Sv = 6;
    long long negSlack = 2; // colon checks run the free index down to -negSlack
};

VerifyWindow default_window(long long stabilizationN);

struct JointFailure {
    std::string condition; // "joint", "colon-a", "colon-b" or "jrn-zero"
    long long r = 0, s = 0;
    LatticePoint witness{0, 0}; // point present on the left side but missed on the right
};

struct JointReductionCertificate {
    LatticePoint a{0, 0}, b{0, 0};
    VerifyWindow window;
    bool isJoint = false;
    bool isGood = false;
    bool jrnZero = false;
    std::optional<JointFailure> firstFailure;
};

// Checks only the joint equality on the upper window; isGood is left false.
JointReductionCertificate verify_joint_reduction(const NormalFiltration& F, const LatticePoint& a,
                                                 const LatticePoint& b, const VerifyWindow& w);
// Joint equality plus the colon conditions; negative free indices use the
// convention E(r,s) = E(max(r,0), max(s,0)).
JointReductionCertificate verify_good_joint_reduction(const NormalFiltration& F,
                                                      const LatticePoint& a, const LatticePoint& b,
                                                      const VerifyWindow& w);
// Joint equality at every cell 1 <= r <= Rv, 1 <= s <= Sv; updates
// cert.jrnZero and records the first failing cell. Requires cert.isJoint.
bool jrn_zero(const NormalFiltration& F, JointReductionCertificate& cert);
// Tries every pair of minimal generators of the two closures in generator
// order and returns the first fully good certificate (with jrnZero filled in).
std::optional<JointReductionCertificate> search_good_pair(const NormalFiltration& F,
                                                          const VerifyWindow& w);

// 1 + min{ k >= 0 : H(k on the axis) == P(k) }; the minimum exists because the
// fit was verified on its stencil.
long long normal_reduction_number(const HilbertTable& T, Axis axis, const AxisPoly& P);

// Single-cell probe of E(r,s) = (a + E(r-1,s)) ∪ (b + E(r,s-1)) for r,s >= 1;
// returns a generator of E(r,s) missed by the right side, if any.
std::optional<LatticePoint> joint_equality_gap(const NormalFiltration& F, const LatticePoint& a,
                                               const LatticePoint& b, long long r, long long s);

} // namespace nhc
