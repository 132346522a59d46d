#include "nhc/lattice.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace nhc {

namespace {

long long llgcd(long long a, long long b) {
    return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

LatticePoint primitive(LatticePoint p) {
    if (p.a == 0 && p.b == 0) throw input_error("zero vector cannot be made primitive");
    long long g = llgcd(p.a, p.b);
    return {p.a / g, p.b / g};
}

// x, y with a*x + b*y = gcd(a, b).
struct Egcd {
    long long g, x, y;
};
Egcd egcd(long long a, long long b) {
    if (b == 0) return {a, 1, 0};
    Egcd e = egcd(b, a % b);
    return {e.g, e.y, e.x - (a / b) * e.y};
}

// Guard for the exact sweeps: a single run should stay desk-scale.
const Int kMaxSweepLevel = Int(5'000'000);

void check_sweep_bound(const Int& maxLevel) {
    if (maxLevel > kMaxSweepLevel)
        throw input_error("level bound " + maxLevel.str() + " exceeds the exact-enumeration cap");
}

} // namespace

std::string to_string(LatticePoint p) {
    std::ostringstream os;
    os << "(" << p.a << ", " << p.b << ")";
    return os.str();
}

// --- Semigroup2 -------------------------------------------------------------

Semigroup2::Semigroup2(LatticePoint r1, LatticePoint r2) { init(r1, r2, std::nullopt); }

Semigroup2::Semigroup2(LatticePoint r1, LatticePoint r2, LatticePoint grading) {
    init(r1, r2, grading);
}

void Semigroup2::init(LatticePoint r1, LatticePoint r2, std::optional<LatticePoint> grading) {
    if ((r1.a == 0 && r1.b == 0) || (r2.a == 0 && r2.b == 0))
        throw input_error("semigroup rays must be nonzero");
    if (llgcd(r1.a, r1.b) != 1 || llgcd(r2.a, r2.b) != 1)
        throw input_error("semigroup rays must be primitive integer vectors");
    Int d = cross(r1, r2);
    if (d == 0) throw input_error("semigroup rays must be linearly independent");
    if (d < 0) std::swap(r1, r2);
    u_ = r1;
    v_ = r2;

    if (grading) {
        w_ = primitive(*grading);
    } else {
        // Sum of the inward ray normals: positive on the cone interior by
        // construction, and symmetric in the two rays.
        w_ = primitive(LatticePoint{-u_.b + v_.b, u_.a - v_.a});
    }
    if (dot(w_, u_) <= 0 || dot(w_, v_) <= 0)
        throw input_error("grading must be strictly positive on both rays");

    Egcd e = egcd(w_.a, w_.b);
    long long sign = e.g < 0 ? -1 : 1; // egcd sign follows the first argument
    if (e.g * sign != 1) throw invariant_error("primitive grading has unit content");
    unit_ = {e.x * sign, e.y * sign};
    if (dot(w_, unit_) != 1) throw invariant_error("level unit point mismatch");
}

bool Semigroup2::contains(LatticePoint p) const {
    return dot(normal1(), p) >= 0 && dot(normal2(), p) >= 0;
}

std::pair<Rat, Rat> Semigroup2::bary(LatticePoint p) const {
    Int d = det();
    return {Rat(dot(normal2(), p), d), Rat(dot(normal1(), p), d)};
}

std::pair<Int, Int> Semigroup2::level_base(const Int& m) const {
    return {Int(unit_.a) * m, Int(unit_.b) * m};
}

bool semigroup_contains(const Semigroup2& S, LatticePoint p) { return S.contains(p); }

// --- LinearSet --------------------------------------------------------------

LinearSet intersect(const LinearSet& A, const LinearSet& B) {
    LinearSet out = A;
    out.cons.insert(out.cons.end(), B.cons.begin(), B.cons.end());
    return out;
}

LinearSet cone_set(const Semigroup2& S) {
    LatticePoint n1 = S.normal1(), n2 = S.normal2();
    return LinearSet{{Halfplane{Int(n1.a), Int(n1.b), Int(0)},
                      Halfplane{Int(n2.a), Int(n2.b), Int(0)}}};
}

LinearSet translate_set(const LinearSet& M, LatticePoint t) {
    LinearSet out = M;
    for (auto& h : out.cons) h.c += h.na * t.a + h.nb * t.b;
    return out;
}

// --- NewtonRegion -----------------------------------------------------------

NewtonRegion newton_region(const Semigroup2& S, std::vector<LatticePoint> gens) {
    if (gens.empty()) throw input_error("newton_region requires at least one generator");
    for (auto g : gens)
        if (!S.contains(g))
            throw input_error("generator " + to_string(g) + " lies outside the semigroup");
    std::sort(gens.begin(), gens.end(), lex_ab_less);
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

    const LatticePoint u = S.ray1(), v = S.ray2();
    const LatticePoint nu = S.normal1(), nv = S.normal2();

    auto anchor = [&](LatticePoint n, LatticePoint ray) {
        LatticePoint best = gens.front();
        for (auto g : gens) {
            Int kn = dot(n, g), kb = dot(n, best);
            if (kn < kb || (kn == kb && dot(ray, g) < dot(ray, best))) best = g;
        }
        return best;
    };
    const LatticePoint anchorU = anchor(nu, u);
    const LatticePoint anchorV = anchor(nv, v);

    // Gift-wrap clockwise from the ray1-side anchor to the ray2-side anchor;
    // the region interior stays on the right of the walk.
    std::vector<LatticePoint> chain{anchorU};
    LatticePoint dIn{-u.a, -u.b}; // the unbounded ray1 edge arrives from infinity
    while (!(chain.back() == anchorV)) {
        const LatticePoint cur = chain.back();
        std::optional<LatticePoint> next;
        for (auto g : gens) {
            if (g == cur) continue;
            LatticePoint d = g - cur;
            // points on the incoming edge line behind the walk are not ahead
            if (cross(dIn, d) == 0 && dot(dIn, d) < 0) continue;
            if (!next) {
                next = g;
                continue;
            }
            Int c = cross(*next - cur, d);
            if (c > 0 || (c == 0 && dot(d, d) > dot(*next - cur, *next - cur))) next = g;
        }
        if (!next) throw invariant_error("hull walk found no successor");
        for (auto g : gens)
            if (cross(*next - cur, g - cur) > 0)
                throw invariant_error("hull walk produced a non-supporting edge");
        dIn = *next - cur;
        chain.push_back(*next);
        if (chain.size() > gens.size() + 1) throw invariant_error("hull walk failed to terminate");
    }

    std::vector<Halfplane> cons;
    cons.push_back(Halfplane{Int(nu.a), Int(nu.b), dot(nu, anchorU)});
    for (size_t i = 0; i + 1 < chain.size(); ++i) {
        LatticePoint d = chain[i + 1] - chain[i];
        LatticePoint n = primitive(LatticePoint{d.b, -d.a});
        if (dot(n, u) < 0 || dot(n, v) < 0) n = LatticePoint{-n.a, -n.b};
        if (dot(n, u) < 0 || dot(n, v) < 0)
            throw invariant_error("edge normal lies outside the dual cone");
        Halfplane h{Int(n.a), Int(n.b), dot(n, chain[i])};
        if (dot(n, chain[i + 1]) != h.c) throw invariant_error("edge endpoints disagree on offset");
        for (auto g : gens)
            if (!h.holds(g)) throw invariant_error("generator escapes a hull edge");
        cons.push_back(std::move(h));
    }
    cons.push_back(Halfplane{Int(nv.a), Int(nv.b), dot(nv, anchorV)});

    return NewtonRegion(S, std::move(chain), std::move(cons));
}

std::vector<LatticePoint> NewtonRegion::vertices() const {
    std::vector<LatticePoint> out = chain_;
    std::sort(out.begin(), out.end(), lex_ab_less);
    return out;
}

bool NewtonRegion::contains(LatticePoint p) const {
    for (const auto& h : cons_)
        if (!h.holds(p)) return false;
    return true;
}

bool NewtonRegion::m_primary() const {
    return cons_.front().c == 0 && cons_.back().c == 0;
}

Int NewtonRegion::ray1_entry() const {
    if (!m_primary()) throw input_error("ray entry undefined: region is not m-primary");
    Int num = dot(S_.normal2(), chain_.front()), d = S_.det();
    if (num % d != 0) throw invariant_error("ray anchor is not a lattice multiple of the ray");
    return num / d;
}

Int NewtonRegion::ray2_entry() const {
    if (!m_primary()) throw input_error("ray entry undefined: region is not m-primary");
    Int num = dot(S_.normal1(), chain_.back()), d = S_.det();
    if (num % d != 0) throw invariant_error("ray anchor is not a lattice multiple of the ray");
    return num / d;
}

NewtonRegion region_scale_sum(const NewtonRegion& A, long long r, const NewtonRegion& B,
                              long long s) {
    if (!(A.semigroup() == B.semigroup()))
        throw input_error("region_scale_sum requires regions over the same semigroup");
    if (r < 0 || s < 0) throw input_error("region_scale_sum requires nonnegative multipliers");
    if (r == 0 && s == 0) throw input_error("region_scale_sum requires r + s >= 1");
    // Minkowski combination: vertices of r*A + s*B are among pairwise sums of
    // scaled vertices, and the recession cone is unchanged.
    std::vector<LatticePoint> pts;
    auto scaled = [](const std::vector<LatticePoint>& ch, long long k) {
        std::vector<LatticePoint> out;
        if (k == 0)
            out.push_back({0, 0});
        else
            for (auto p : ch) out.push_back(k * p);
        return out;
    };
    for (auto p : scaled(A.chain(), r))
        for (auto q : scaled(B.chain(), s)) pts.push_back(p + q);
    return newton_region(A.semigroup(), std::move(pts));
}

bool region_contains(const NewtonRegion& R, LatticePoint p) { return R.contains(p); }

// --- level sweeps -----------------------------------------------------------

namespace {

struct TInterval {
    Int lo, hi; // inclusive
    friend bool operator==(const TInterval&, const TInterval&) = default;
};

// Parameter interval of {base + t*step} ∩ M at one level, or nullopt.
std::optional<TInterval> level_interval(const LinearSet& M, const std::pair<Int, Int>& base,
                                        LatticePoint step) {
    std::optional<Int> lo, hi;
    for (const auto& h : M.cons) {
        Int A = h.na * base.first + h.nb * base.second;
        Int B = h.na * step.a + h.nb * step.b;
        if (B == 0) {
            if (A < h.c) return std::nullopt;
        } else if (B > 0) {
            Int t = ceil_div(h.c - A, B);
            if (!lo || t > *lo) lo = t;
        } else {
            Int t = floor_div(h.c - A, B);
            if (!hi || t < *hi) hi = t;
        }
    }
    if (!lo || !hi)
        throw invariant_error("level sweep requires sets bounded along each level");
    if (*lo > *hi) return std::nullopt;
    return TInterval{*lo, *hi};
}

std::vector<TInterval> merged_intervals(const std::vector<LinearSet>& parts,
                                        const std::pair<Int, Int>& base, LatticePoint step) {
    std::vector<TInterval> iv;
    for (const auto& P : parts)
        if (auto t = level_interval(P, base, step)) iv.push_back(*t);
    std::sort(iv.begin(), iv.end(), [](const TInterval& x, const TInterval& y) {
        return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi);
    });
    std::vector<TInterval> out;
    for (const auto& t : iv) {
        if (!out.empty() && t.lo <= out.back().hi + 1)
            out.back().hi = std::max(out.back().hi, t.hi);
        else
            out.push_back(t);
    }
    return out;
}

bool covered(const std::vector<TInterval>& iv, const Int& t) {
    for (const auto& x : iv)
        if (x.lo <= t && t <= x.hi) return true;
    return false;
}

} // namespace

std::optional<Int> ray_entry(const Semigroup2& S, const LinearSet& M, bool firstRay) {
    LatticePoint r = firstRay ? S.ray1() : S.ray2();
    Int lo = 0;
    std::optional<Int> hi;
    for (const auto& h : M.cons) {
        Int B = h.na * r.a + h.nb * r.b;
        if (B == 0) {
            if (h.c > 0) return std::nullopt;
        } else if (B > 0) {
            lo = std::max(lo, ceil_div(h.c, B));
        } else {
            Int t = floor_div(h.c, B);
            if (!hi || t < *hi) hi = t;
        }
    }
    if (hi && lo > *hi) return std::nullopt;
    return lo;
}

RayEntries ray_entries_union(const Semigroup2& S, const std::vector<LinearSet>& parts) {
    RayEntries e;
    for (const auto& P : parts) {
        if (auto t = ray_entry(S, P, true))
            if (!e.t1 || *t < *e.t1) e.t1 = t;
        if (auto t = ray_entry(S, P, false))
            if (!e.t2 || *t < *e.t2) e.t2 = t;
    }
    return e;
}

Int complement_level_bound(const Semigroup2& S, const RayEntries& e, const std::string& what) {
    if (!e.t1 || !e.t2)
        throw input_error(what + ": not m-primary (the set never meets one of the rays)");
    // Outside the union, barycentric coordinates satisfy x < t1 and y < t2,
    // so the grade is below t1*grade(ray1) + t2*grade(ray2).
    return *e.t1 * dot(S.grading(), S.ray1()) + *e.t2 * dot(S.grading(), S.ray2());
}

Int count_difference(const Semigroup2& S, const LinearSet& A, const std::vector<LinearSet>& Bs,
                     const Int& maxLevel) {
    check_sweep_bound(maxLevel);
    LinearSet Ac = intersect(A, cone_set(S));
    std::vector<LinearSet> parts;
    for (const auto& B : Bs) parts.push_back(intersect(B, Ac));
    Int total = 0;
    const LatticePoint step = S.level_step();
    for (Int m = 0; m <= maxLevel; ++m) {
        auto base = S.level_base(m);
        auto a = level_interval(Ac, base, step);
        if (!a) continue;
        total += a->hi - a->lo + 1;
        for (const auto& t : merged_intervals(parts, base, step))
            total -= t.hi - t.lo + 1; // parts are pre-intersected with A
    }
    return total;
}

std::vector<LatticePoint> enumerate_difference(const Semigroup2& S, const LinearSet& A,
                                               const std::vector<LinearSet>& Bs,
                                               const Int& maxLevel) {
    check_sweep_bound(maxLevel);
    LinearSet Ac = intersect(A, cone_set(S));
    std::vector<LinearSet> parts;
    for (const auto& B : Bs) parts.push_back(intersect(B, Ac));
    std::vector<LatticePoint> out;
    const LatticePoint step = S.level_step();
    for (Int m = 0; m <= maxLevel; ++m) {
        auto base = S.level_base(m);
        auto a = level_interval(Ac, base, step);
        if (!a) continue;
        auto cover = merged_intervals(parts, base, step);
        for (Int t = a->lo; t <= a->hi; ++t) {
            if (covered(cover, t)) continue;
            out.push_back(LatticePoint{to_ll(base.first + t * step.a),
                                       to_ll(base.second + t * step.b)});
        }
    }
    return out;
}

std::optional<LatticePoint> first_union_difference(const Semigroup2& S,
                                                   const std::vector<LinearSet>& lhs,
                                                   const std::vector<LinearSet>& rhs,
                                                   const Int& maxLevel) {
    check_sweep_bound(maxLevel);
    LinearSet cone = cone_set(S);
    std::vector<LinearSet> L, R;
    for (const auto& P : lhs) L.push_back(intersect(P, cone));
    for (const auto& P : rhs) R.push_back(intersect(P, cone));
    const LatticePoint step = S.level_step();
    for (Int m = 0; m <= maxLevel; ++m) {
        auto base = S.level_base(m);
        auto cl = merged_intervals(L, base, step);
        auto cr = merged_intervals(R, base, step);
        if (cl == cr) continue;
        std::vector<Int> cuts;
        for (const auto& t : cl) {
            cuts.push_back(t.lo);
            cuts.push_back(t.hi + 1);
        }
        for (const auto& t : cr) {
            cuts.push_back(t.lo);
            cuts.push_back(t.hi + 1);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (const auto& t : cuts)
            if (covered(cl, t) != covered(cr, t))
                return LatticePoint{to_ll(base.first + t * step.a),
                                    to_ll(base.second + t * step.b)};
        throw invariant_error("interval lists differ but no witness parameter found");
    }
    return std::nullopt;
}

std::vector<LatticePoint> enumerate_complement(const NewtonRegion& R) {
    const Semigroup2& S = R.semigroup();
    LinearSet M = R.linear_set();
    RayEntries e{ray_entry(S, M, true), ray_entry(S, M, false)};
    Int L = complement_level_bound(S, e, "complement enumeration");
    return enumerate_difference(S, cone_set(S), {M}, L);
}

Int complement_count(const NewtonRegion& R) {
    const Semigroup2& S = R.semigroup();
    LinearSet M = R.linear_set();
    RayEntries e{ray_entry(S, M, true), ray_entry(S, M, false)};
    Int L = complement_level_bound(S, e, "colength");
    return count_difference(S, cone_set(S), {M}, L);
}

} // namespace nhc
