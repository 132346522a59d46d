// Monomial ideals over a 2-D affine semigroup ring and their closures.
//
// A monomial ideal is stored by its minimal monomial generators (an antichain
// under the semigroup divisibility order, kept sorted by (b, a)). The integral
// closure of I is the set of lattice points of its Newton region, so closure
// questions reduce to the exact polyhedral routines in lattice.hpp. The
// NormalFiltration caches the regions and colengths of closure(I^r J^s) for
// the bigraded computations downstream.
#pragma once

#include "nhc/lattice.hpp"

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace nhc {

// Drop every point divisible by another one; result sorted by gen_order_less.
std::vector<LatticePoint> minimalize(const Semigroup2& S, std::vector<LatticePoint> pts);

// Minimal semigroup generators of the set S ∩ (R - shift). Works for any
// region and shift; the result generates the monomial set as an ideal.
std::vector<LatticePoint> minimal_region_generators(const NewtonRegion& R,
                                                    LatticePoint shift = {0, 0});

class MonomialIdeal {
public:
    MonomialIdeal(Semigroup2 S, std::vector<LatticePoint> gens);

    const Semigroup2& semigroup() const { return S_; }
    const std::vector<LatticePoint>& generators() const { return gens_; }
    const NewtonRegion& region() const { return region_; }
    bool m_primary() const { return region_.m_primary(); }

    // p lies in the ideal (as a monomial set, no closure taken)
    bool contains_monomial(LatticePoint p) const;
    // the ideal as a union of shifted cones, one per generator
    std::vector<LinearSet> ideal_parts() const;

    MonomialIdeal closure() const;
    bool is_closed() const;

    // λ(R / I) for the ideal as given; requires an m-primary ideal
    Int colength() const;

    MonomialIdeal multiply_monomial(LatticePoint a) const;
    // (I : x^a) for a monomial x^a of the ring
    MonomialIdeal colon_monomial(LatticePoint a) const;

private:
    Semigroup2 S_;
    std::vector<LatticePoint> gens_;
    NewtonRegion region_;
};

MonomialIdeal product(const MonomialIdeal& I, const MonomialIdeal& J);
MonomialIdeal sum(const MonomialIdeal& I, const MonomialIdeal& J);
MonomialIdeal power(const MonomialIdeal& I, long long k); // k >= 0

// Closures of the bigraded powers I^r J^s, with caching. Both ideals must be
// m-primary and live over the same semigroup.
class NormalFiltration {
public:
    NormalFiltration(MonomialIdeal I, MonomialIdeal J);

    const Semigroup2& semigroup() const { return I_.semigroup(); }
    const MonomialIdeal& idealI() const { return I_; }
    const MonomialIdeal& idealJ() const { return J_; }

    // Newton region of closure(I^r J^s); r, s >= 0
    NewtonRegion region(long long r, long long s) const;
    // λ(R / closure(I^r J^s)) — the normal Hilbert function
    Int length(long long r, long long s) const;

private:
    MonomialIdeal I_, J_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<long long, long long>, NewtonRegion> regions_;
    mutable std::map<std::pair<long long, long long>, Int> lengths_;
};

} // namespace nhc
