// Exact 2-D lattice geometry over an affine semigroup.
//
// Conventions used everywhere in this library:
//
//  * The ambient semigroup is S = C ∩ Z^2 where C = cone(ray1, ray2) is a
//    strongly convex rational cone with primitive ray generators, oriented so
//    that cross(ray1, ray2) > 0 (the constructor swaps rays if needed).
//  * normal1 = (-ray1.b, ray1.a) and normal2 = (ray2.b, -ray2.a) are the
//    inward ray normals: normal_i · ray_i = 0 and normal_i · ray_j = det > 0
//    for i != j, so p ∈ C  iff  normal1·p >= 0 and normal2·p >= 0.
//  * Barycentric coordinates: p = x·ray1 + y·ray2 with
//    x = (normal2·p)/det and y = (normal1·p)/det.
//  * A Newton region is conv(generators) + C. Its boundary is an unbounded
//    edge in direction ray1, a compact hull chain, and an unbounded edge in
//    direction ray2; we store the chain from the ray1-side anchor vertex to
//    the ray2-side anchor vertex. Serialized vertex lists are sorted
//    lexicographically by (a, b).
//  * The grading functional w is positive on both rays, so every level
//    {p : w·p = m} meets the cone in a finite segment; all counting routines
//    sweep levels and work on exact integer parameter intervals.
//
// Every predicate is computed in arbitrary-precision integers; no floating
// point appears anywhere.
#pragma once

#include "nhc/errors.hpp"
#include "nhc/numeric.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nhc {

struct LatticePoint {
    long long a = 0;
    long long b = 0;
    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

inline LatticePoint operator+(LatticePoint p, LatticePoint q) { return {p.a + q.a, p.b + q.b}; }
inline LatticePoint operator-(LatticePoint p, LatticePoint q) { return {p.a - q.a, p.b - q.b}; }
inline LatticePoint operator*(long long k, LatticePoint p) { return {k * p.a, k * p.b}; }

inline Int cross(LatticePoint p, LatticePoint q) { return Int(p.a) * q.b - Int(p.b) * q.a; }
inline Int dot(LatticePoint p, LatticePoint q) { return Int(p.a) * q.a + Int(p.b) * q.b; }

// Canonical order for region vertex lists.
inline bool lex_ab_less(LatticePoint p, LatticePoint q) {
    return p.a != q.a ? p.a < q.a : p.b < q.b;
}
// Canonical order for ideal generator antichains (x-power first).
inline bool gen_order_less(LatticePoint p, LatticePoint q) {
    return p.b != q.b ? p.b < q.b : p.a < q.a;
}

std::string to_string(LatticePoint p);

class Semigroup2 {
public:
    Semigroup2(LatticePoint r1, LatticePoint r2);
    Semigroup2(LatticePoint r1, LatticePoint r2, LatticePoint grading);

    const LatticePoint& ray1() const { return u_; }
    const LatticePoint& ray2() const { return v_; }
    const LatticePoint& grading() const { return w_; }
    LatticePoint normal1() const { return {-u_.b, u_.a}; }
    LatticePoint normal2() const { return {v_.b, -v_.a}; }
    Int det() const { return cross(u_, v_); }

    bool contains(LatticePoint p) const;
    Int grade(LatticePoint p) const { return dot(w_, p); }
    // p = bary.first * ray1 + bary.second * ray2
    std::pair<Rat, Rat> bary(LatticePoint p) const;

    // Lattice points of grade m are level_base(m) + t * level_step(), t ∈ Z.
    std::pair<Int, Int> level_base(const Int& m) const;
    LatticePoint level_step() const { return {-w_.b, w_.a}; }

    friend bool operator==(const Semigroup2&, const Semigroup2&) = default;

private:
    void init(LatticePoint r1, LatticePoint r2, std::optional<LatticePoint> grading);
    LatticePoint u_{}, v_{}, w_{};
    LatticePoint unit_{}; // w_ · unit_ == 1
};

bool semigroup_contains(const Semigroup2& S, LatticePoint p);

// Closed halfplane na*a + nb*b >= c.
struct Halfplane {
    Int na, nb, c;
    bool holds(LatticePoint p) const { return na * p.a + nb * p.b >= c; }
};

// A finite intersection of halfplanes. Every point set this library counts or
// compares (cone, Newton region, translated closed ideal, colon set, shifted
// cone of a generator) is one of these or a finite union of them.
struct LinearSet {
    std::vector<Halfplane> cons;
    bool contains(LatticePoint p) const {
        for (const auto& h : cons)
            if (!h.holds(p)) return false;
        return true;
    }
};

LinearSet intersect(const LinearSet& A, const LinearSet& B);
LinearSet cone_set(const Semigroup2& S);
// The set t + M = {t + p : p ∈ M}.
LinearSet translate_set(const LinearSet& M, LatticePoint t);

class NewtonRegion {
public:
    const Semigroup2& semigroup() const { return S_; }
    // Hull chain from the ray1-side anchor to the ray2-side anchor.
    const std::vector<LatticePoint>& chain() const { return chain_; }
    // Lex-sorted minimal vertex list (the canonical serialization order).
    std::vector<LatticePoint> vertices() const;
    const std::vector<Halfplane>& constraints() const { return cons_; }

    bool contains(LatticePoint p) const;
    // True iff the region meets both rays, i.e. the lattice points of the
    // region form an m-primary ideal of the semigroup ring.
    bool m_primary() const;
    // With m_primary(): chain().front() == ray1_entry() * ray1, etc.
    Int ray1_entry() const;
    Int ray2_entry() const;

    LinearSet linear_set() const { return LinearSet{cons_}; }

    friend NewtonRegion newton_region(const Semigroup2&, std::vector<LatticePoint>);

private:
    NewtonRegion(Semigroup2 S, std::vector<LatticePoint> chain, std::vector<Halfplane> cons)
        : S_(std::move(S)), chain_(std::move(chain)), cons_(std::move(cons)) {}
    Semigroup2 S_;
    std::vector<LatticePoint> chain_;
    std::vector<Halfplane> cons_;
};

// conv(gens) + cone: gens must be non-empty and inside the cone.
NewtonRegion newton_region(const Semigroup2& S, std::vector<LatticePoint> gens);
// r*A + s*B (Minkowski), r,s >= 0, r+s >= 1, same semigroup.
NewtonRegion region_scale_sum(const NewtonRegion& A, long long r, const NewtonRegion& B, long long s);
bool region_contains(const NewtonRegion& R, LatticePoint p);

// --- exact level-sweep counting -------------------------------------------

// First t >= 0 with t*ray ∈ M, where ray is ray1 or ray2 of S; nullopt if the
// ray never enters M.
std::optional<Int> ray_entry(const Semigroup2& S, const LinearSet& M, bool firstRay);

struct RayEntries {
    std::optional<Int> t1, t2;
};
RayEntries ray_entries_union(const Semigroup2& S, const std::vector<LinearSet>& parts);

// Level bound L such that every point of S outside the union lies on a level
// <= L. Throws input_error("not m-primary...") when a ray is never entered.
Int complement_level_bound(const Semigroup2& S, const RayEntries& e, const std::string& what);

// |{p ∈ A : p ∉ B1 ∪ ... ∪ Bk, 0 <= grade(p) <= maxLevel}| — exact.
Int count_difference(const Semigroup2& S, const LinearSet& A,
                     const std::vector<LinearSet>& Bs, const Int& maxLevel);
// Same set, materialized in (level, t) order.
std::vector<LatticePoint> enumerate_difference(const Semigroup2& S, const LinearSet& A,
                                               const std::vector<LinearSet>& Bs,
                                               const Int& maxLevel);
// First point (in (level, t) order) contained in exactly one of the two
// unions, scanning levels 0..maxLevel; nullopt if they agree everywhere.
std::optional<LatticePoint> first_union_difference(const Semigroup2& S,
                                                   const std::vector<LinearSet>& lhs,
                                                   const std::vector<LinearSet>& rhs,
                                                   const Int& maxLevel);

// Lattice points of the region's complement in S; requires m_primary().
std::vector<LatticePoint> enumerate_complement(const NewtonRegion& R);
Int complement_count(const NewtonRegion& R);

} // namespace nhc
