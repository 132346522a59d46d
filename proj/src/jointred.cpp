#include "nhc/jointred.hpp"

#include "nhc/errors.hpp"

#include <map>
#include <utility>

namespace nhc {

namespace {

// Minimal generators of E(r,s), shared across the cells and candidate pairs
// of one verification run.
class GenCache {
public:
    explicit GenCache(const NormalFiltration& F) : F_(F) {}
    const std::vector<LatticePoint>& min_gens(long long r, long long s) {
        const auto key = std::make_pair(r, s);
        auto it = gens_.find(key);
        if (it == gens_.end())
            it = gens_.emplace(key, minimal_region_generators(F_.region(r, s))).first;
        return it->second;
    }
    const NormalFiltration& filtration() const { return F_; }

private:
    const NormalFiltration& F_;
    std::map<std::pair<long long, long long>, std::vector<LatticePoint>> gens_;
};

void check_window(const VerifyWindow& w) {
    if (w.lower < 0 || w.negSlack < 0)
        throw input_error("verification window indices must be nonnegative");
    if (w.Rv < std::max(w.lower, 1LL) || w.Sv < std::max(w.lower, 1LL))
        throw input_error("verification window upper bounds are below its lower base");
}

void check_membership(const NormalFiltration& F, const LatticePoint& a, const LatticePoint& b) {
    if (!F.region(1, 0).contains(a))
        throw input_error("candidate " + to_string(a) + " is not in the closure of I");
    if (!F.region(0, 1).contains(b))
        throw input_error("candidate " + to_string(b) + " is not in the closure of J");
}

// E(r,s) ⊆ (a + E(r-1,s)) ∪ (b + E(r,s-1)), witnessed on minimal generators;
// the reverse containment is automatic. Returns a missed generator if any.
std::optional<LatticePoint> joint_gap(GenCache& cache, const LatticePoint& a,
                                      const LatticePoint& b, long long r, long long s) {
    const NewtonRegion RA = cache.filtration().region(r - 1, s);
    const NewtonRegion RB = cache.filtration().region(r, s - 1);
    for (const LatticePoint& g : cache.min_gens(r, s))
        if (!RA.contains(g - a) && !RB.contains(g - b)) return g;
    return std::nullopt;
}

// colon(E(r,s), c) ⊆ E(r',s') on minimal generators; the reverse containment
// is automatic. (r,s) and (r',s') are already clamped by the caller.
std::optional<LatticePoint> colon_gap(const NormalFiltration& F, const LatticePoint& c,
                                      long long r, long long s, long long rTo, long long sTo) {
    const NewtonRegion target = F.region(rTo, sTo);
    for (const LatticePoint& g : minimal_region_generators(F.region(r, s), c))
        if (!target.contains(g)) return g;
    return std::nullopt;
}

bool joint_on(GenCache& cache, JointReductionCertificate& cert, long long rLo, long long sLo,
              const char* label) {
    for (long long r = rLo; r <= cert.window.Rv; ++r)
        for (long long s = sLo; s <= cert.window.Sv; ++s)
            if (const auto gap = joint_gap(cache, cert.a, cert.b, r, s)) {
                if (!cert.firstFailure) cert.firstFailure = JointFailure{label, r, s, *gap};
                return false;
            }
    return true;
}

JointReductionCertificate verify_joint_impl(GenCache& cache, const LatticePoint& a,
                                            const LatticePoint& b, const VerifyWindow& w) {
    check_window(w);
    check_membership(cache.filtration(), a, b);
    JointReductionCertificate cert;
    cert.a = a;
    cert.b = b;
    cert.window = w;
    const long long lo = std::max(w.lower, 1LL);
    cert.isJoint = joint_on(cache, cert, lo, lo, "joint");
    return cert;
}

JointReductionCertificate verify_good_impl(GenCache& cache, const LatticePoint& a,
                                           const LatticePoint& b, const VerifyWindow& w) {
    JointReductionCertificate cert = verify_joint_impl(cache, a, b, w);
    if (!cert.isJoint) return cert;
    const NormalFiltration& F = cache.filtration();
    bool good = true;
    for (long long r = 1; good && r <= w.Rv; ++r)
        for (long long s = -w.negSlack; s <= w.Sv; ++s) {
            const long long sc = std::max(s, 0LL);
            if (const auto gap = colon_gap(F, a, r, sc, r - 1, sc)) {
                cert.firstFailure = JointFailure{"colon-a", r, s, *gap};
                good = false;
                break;
            }
        }
    for (long long s = 1; good && s <= w.Sv; ++s)
        for (long long r = -w.negSlack; r <= w.Rv; ++r) {
            const long long rc = std::max(r, 0LL);
            if (const auto gap = colon_gap(F, b, rc, s, rc, s - 1)) {
                cert.firstFailure = JointFailure{"colon-b", r, s, *gap};
                good = false;
                break;
            }
        }
    cert.isGood = good;
    return cert;
}

bool jrn_zero_impl(GenCache& cache, JointReductionCertificate& cert) {
    if (!cert.isJoint)
        throw input_error("the normal joint reduction number needs a verified joint reduction");
    JointReductionCertificate probe = cert;
    probe.firstFailure.reset();
    cert.jrnZero = joint_on(cache, probe, 1, 1, "jrn-zero");
    if (!cert.jrnZero && !cert.firstFailure) cert.firstFailure = probe.firstFailure;
    return cert.jrnZero;
}

} // namespace

VerifyWindow default_window(long long stabilizationN) {
    VerifyWindow w;
    w.lower = stabilizationN;
    w.Rv = stabilizationN + 4;
    w.Sv = stabilizationN + 4;
    w.negSlack = 2;
    return w;
}

JointReductionCertificate verify_joint_reduction(const NormalFiltration& F, const LatticePoint& a,
                                                 const LatticePoint& b, const VerifyWindow& w) {
    GenCache cache(F);
    return verify_joint_impl(cache, a, b, w);
}

JointReductionCertificate verify_good_joint_reduction(const NormalFiltration& F,
                                                      const LatticePoint& a, const LatticePoint& b,
                                                      const VerifyWindow& w) {
    GenCache cache(F);
    return verify_good_impl(cache, a, b, w);
}

bool jrn_zero(const NormalFiltration& F, JointReductionCertificate& cert) {
    check_window(cert.window);
    GenCache cache(F);
    return jrn_zero_impl(cache, cert);
}

std::optional<JointReductionCertificate> search_good_pair(const NormalFiltration& F,
                                                          const VerifyWindow& w) {
    check_window(w);
    GenCache cache(F);
    const std::vector<LatticePoint> gensA = F.idealI().closure().generators();
    const std::vector<LatticePoint> gensB = F.idealJ().closure().generators();
    for (const LatticePoint& a : gensA)
        for (const LatticePoint& b : gensB) {
            JointReductionCertificate cert = verify_good_impl(cache, a, b, w);
            if (!cert.isGood) continue;
            jrn_zero_impl(cache, cert);
            return cert;
        }
    return std::nullopt;
}

std::optional<LatticePoint> joint_equality_gap(const NormalFiltration& F, const LatticePoint& a,
                                               const LatticePoint& b, long long r, long long s) {
    if (r < 1 || s < 1) throw input_error("the joint equality needs r, s >= 1");
    check_membership(F, a, b);
    GenCache cache(F);
    return joint_gap(cache, a, b, r, s);
}

long long normal_reduction_number(const HilbertTable& T, Axis axis, const AxisPoly& P) {
    const long long bound = axis == Axis::I ? T.rmax() : T.smax();
    for (long long k = 0; k <= bound; ++k) {
        const Int h = axis == Axis::I ? T.value(k, 0) : T.value(0, k);
        if (h == P.eval(Int(k))) return k + 1;
    }
    throw invariant_error("axis polynomial never meets the table it was fitted to");
}

} // namespace nhc
