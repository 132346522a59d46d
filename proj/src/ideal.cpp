#include "nhc/ideal.hpp"

#include <algorithm>

namespace nhc {

std::vector<LatticePoint> minimalize(const Semigroup2& S, std::vector<LatticePoint> pts) {
    std::sort(pts.begin(), pts.end(), lex_ab_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    // A proper divisor has strictly smaller grade, so scan in grade order and
    // test only against points already kept.
    std::stable_sort(pts.begin(), pts.end(), [&](LatticePoint p, LatticePoint q) {
        Int gp = S.grade(p), gq = S.grade(q);
        return gp != gq ? gp < gq : gen_order_less(p, q);
    });
    std::vector<LatticePoint> kept;
    for (auto p : pts) {
        bool dominated = false;
        for (auto q : kept)
            if (S.contains(p - q)) {
                dominated = true;
                break;
            }
        if (!dominated) kept.push_back(p);
    }
    std::sort(kept.begin(), kept.end(), gen_order_less);
    return kept;
}

std::vector<LatticePoint> minimal_region_generators(const NewtonRegion& R, LatticePoint shift) {
    const Semigroup2& S = R.semigroup();
    const Int d = S.det();
    const LatticePoint nu = S.normal1(), nv = S.normal2();
    const LatticePoint eU = R.chain().front() - shift;
    const LatticePoint eV = R.chain().back() - shift;

    // Every minimal element p of S ∩ (R - shift) satisfies
    //   bary_x(p) < max(0, bary_x(eU)) + 1  and  bary_y(p) < max(0, bary_y(eV)) + 1:
    // beyond that, p - ray still lies in the set, contradicting minimality.
    Int XU = std::max(Int(0), dot(nv, eU));
    Int YV = std::max(Int(0), dot(nu, eV));

    LinearSet box = translate_set(R.linear_set(), LatticePoint{-shift.a, -shift.b});
    box.cons.push_back(Halfplane{Int(-nv.a), Int(-nv.b), -(XU + d - 1)});
    box.cons.push_back(Halfplane{Int(-nu.a), Int(-nu.b), -(YV + d - 1)});

    const Int wu = dot(S.grading(), S.ray1()), wv = dot(S.grading(), S.ray2());
    Int L = ceil_div((XU + d - 1) * wu + (YV + d - 1) * wv, d);

    return minimalize(S, enumerate_difference(S, box, {}, L));
}

namespace {
std::vector<LatticePoint> checked_gens(const Semigroup2& S, std::vector<LatticePoint> gens) {
    if (gens.empty()) throw input_error("a monomial ideal needs at least one generator");
    for (auto g : gens)
        if (!S.contains(g))
            throw input_error("generator " + to_string(g) + " lies outside the semigroup");
    return minimalize(S, std::move(gens));
}
} // namespace

MonomialIdeal::MonomialIdeal(Semigroup2 S, std::vector<LatticePoint> gens)
    : S_(std::move(S)),
      gens_(checked_gens(S_, std::move(gens))),
      region_(newton_region(S_, gens_)) {}

bool MonomialIdeal::contains_monomial(LatticePoint p) const {
    for (auto g : gens_)
        if (S_.contains(p - g)) return true;
    return false;
}

std::vector<LinearSet> MonomialIdeal::ideal_parts() const {
    std::vector<LinearSet> parts;
    for (auto g : gens_) parts.push_back(translate_set(cone_set(S_), g));
    return parts;
}

MonomialIdeal MonomialIdeal::closure() const {
    return MonomialIdeal(S_, minimal_region_generators(region_));
}

bool MonomialIdeal::is_closed() const {
    for (auto g : minimal_region_generators(region_))
        if (!contains_monomial(g)) return false;
    return true;
}

Int MonomialIdeal::colength() const {
    auto parts = ideal_parts();
    Int L = complement_level_bound(S_, ray_entries_union(S_, parts), "colength");
    return count_difference(S_, cone_set(S_), parts, L);
}

MonomialIdeal MonomialIdeal::multiply_monomial(LatticePoint a) const {
    if (!S_.contains(a))
        throw input_error("monomial " + to_string(a) + " lies outside the semigroup");
    std::vector<LatticePoint> g = gens_;
    for (auto& p : g) p = p + a;
    return MonomialIdeal(S_, std::move(g));
}

MonomialIdeal MonomialIdeal::colon_monomial(LatticePoint a) const {
    if (!S_.contains(a))
        throw input_error("monomial " + to_string(a) + " lies outside the semigroup");
    const Int d = S_.det();
    const LatticePoint nu = S_.normal1(), nv = S_.normal2();
    const Int wu = dot(S_.grading(), S_.ray1()), wv = dot(S_.grading(), S_.ray2());
    std::vector<LatticePoint> cand;
    for (auto g : gens_) {
        // minimal elements of S ∩ ((g - a) + cone), by the same box bound
        LatticePoint z = g - a;
        Int X = std::max(Int(0), dot(nv, z));
        Int Y = std::max(Int(0), dot(nu, z));
        LinearSet box{{Halfplane{Int(nu.a), Int(nu.b), dot(nu, z)},
                       Halfplane{Int(nv.a), Int(nv.b), dot(nv, z)},
                       Halfplane{Int(-nv.a), Int(-nv.b), -(X + d - 1)},
                       Halfplane{Int(-nu.a), Int(-nu.b), -(Y + d - 1)}}};
        Int L = ceil_div((X + d - 1) * wu + (Y + d - 1) * wv, d);
        for (auto p : enumerate_difference(S_, box, {}, L)) cand.push_back(p);
    }
    return MonomialIdeal(S_, std::move(cand));
}

MonomialIdeal product(const MonomialIdeal& I, const MonomialIdeal& J) {
    if (!(I.semigroup() == J.semigroup()))
        throw input_error("product requires ideals over the same semigroup");
    std::vector<LatticePoint> g;
    for (auto p : I.generators())
        for (auto q : J.generators()) g.push_back(p + q);
    return MonomialIdeal(I.semigroup(), std::move(g));
}

MonomialIdeal sum(const MonomialIdeal& I, const MonomialIdeal& J) {
    if (!(I.semigroup() == J.semigroup()))
        throw input_error("sum requires ideals over the same semigroup");
    std::vector<LatticePoint> g = I.generators();
    g.insert(g.end(), J.generators().begin(), J.generators().end());
    return MonomialIdeal(I.semigroup(), std::move(g));
}

MonomialIdeal power(const MonomialIdeal& I, long long k) {
    if (k < 0) throw input_error("ideal powers need a nonnegative exponent");
    MonomialIdeal out(I.semigroup(), {{0, 0}});
    for (long long i = 0; i < k; ++i) out = product(out, I);
    return out;
}

NormalFiltration::NormalFiltration(MonomialIdeal I, MonomialIdeal J)
    : I_(std::move(I)), J_(std::move(J)) {
    if (!(I_.semigroup() == J_.semigroup()))
        throw input_error("the two ideals must live over the same semigroup");
    if (!I_.m_primary())
        throw input_error("the first ideal is not m-primary: no generator on some ray");
    if (!J_.m_primary())
        throw input_error("the second ideal is not m-primary: no generator on some ray");
}

NewtonRegion NormalFiltration::region(long long r, long long s) const {
    if (r < 0 || s < 0) throw input_error("filtration indices must be nonnegative");
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(r, s);
    auto it = regions_.find(key);
    if (it != regions_.end()) return it->second;
    NewtonRegion R = (r == 0 && s == 0)
                         ? newton_region(I_.semigroup(), {{0, 0}})
                         : region_scale_sum(I_.region(), r, J_.region(), s);
    return regions_.emplace(key, std::move(R)).first->second;
}

Int NormalFiltration::length(long long r, long long s) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = lengths_.find(std::make_pair(r, s));
        if (it != lengths_.end()) return it->second;
    }
    Int n = complement_count(region(r, s));
    std::lock_guard<std::mutex> lock(mu_);
    return lengths_.emplace(std::make_pair(r, s), std::move(n)).first->second;
}

} // namespace nhc
